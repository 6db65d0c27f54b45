"""1-local maintenance of a maximal matching and its 2-approximate vertex cover.

The only per-vertex state is the vertex's partner in the matching.  The
cover is the set of matched vertices, so an isolated vertex is never in it.

Edge addition between two uncovered vertices matches them.  Deleting a
matching edge frees both endpoints; each then grabs its smallest-id
uncovered neighbour as a new partner, or leaves the cover if it has none.
Endpoints are handled in ascending id order.  Every other edit leaves the
state alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CorruptState
from .graph import ADD_EDGE, DEL_EDGE, DEL_VERTEX, DynamicGraph, EditOp, TrackedGraphView
from .maintenance import VERTEX_COVER, Maintainer, MaintainerSpec, SolutionSnapshot

# work <= WORK_CONSTANT * (deg(u) + deg(v) + 1); a matched-edge deletion costs
# at most 2 * (deg(u) + deg(v)) + 10 units.
WORK_CONSTANT = 10


@dataclass
class MatchingCoverState:
    pair: dict[int, int] = field(default_factory=dict)

    def cover(self) -> SolutionSnapshot:
        return SolutionSnapshot.of(VERTEX_COVER, self.pair)

    def matching(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in self.pair.items() if u < v)

    def match(self, u: int, v: int) -> None:
        self.pair[u] = v
        self.pair[v] = u

    def dumps(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.matching())

    def check(self, g: DynamicGraph) -> str | None:
        """Reason the state is not a maximal matching of ``g``, else None."""
        for u, v in self.pair.items():
            if self.pair.get(v) != u:
                return f"pair map not symmetric at {u}->{v}"
            if not g.has_edge(u, v):
                return f"matched pair ({u},{v}) is not an edge"
        for u, v in g.edges():
            if u not in self.pair and v not in self.pair:
                return f"edge ({u},{v}) has no covered endpoint"
        return None


def greedy_matching(g: DynamicGraph) -> MatchingCoverState:
    """Maximal matching by scanning edges in ascending (u, v) order."""
    state = MatchingCoverState()
    for u, v in g.edges():
        if u not in state.pair and v not in state.pair:
            state.match(u, v)
    return state


def on_edit(state: MatchingCoverState, view: TrackedGraphView, op: EditOp) -> MatchingCoverState:
    """Update ``state`` in place for ``op`` (already applied to the viewed graph)."""
    pair = state.pair
    if op.kind == ADD_EDGE:
        u, v = op.u, op.v
        view.read_state(u)
        view.read_state(v)
        if u not in pair and v not in pair:
            state.match(u, v)
            view.write(u)
            view.write(v)
    elif op.kind == DEL_EDGE:
        u, v = op.u, op.v
        view.read_state(u)
        if pair.get(u) != v:
            return state
        view.read_state(v)
        if pair.get(v) != u:
            raise CorruptState(f"pair map not symmetric at {u}-{v}")
        del pair[u], pair[v]
        view.write(u)
        view.write(v)
        for x in (u, v):
            for w in view.neighbors(x):
                view.read_state(w)
                if w not in pair:
                    state.match(x, w)
                    view.write(x)
                    view.write(w)
                    break
    elif op.kind == DEL_VERTEX:
        view.read_state(op.u)
        if op.u in pair:
            raise CorruptState(f"isolated vertex {op.u} is in the cover")
    return state


class VertexCoverMaintainer(Maintainer):
    problem = VERTEX_COVER
    spec = MaintainerSpec(claimed_radius=1, claimed_work_bound="degree-linear",
                          work_constant=WORK_CONSTANT, target_ratio=Fraction(2))

    def __init__(self) -> None:
        self.state = MatchingCoverState()

    def init(self, g: DynamicGraph) -> None:
        self.state = greedy_matching(g)

    def on_edit(self, view: TrackedGraphView, op: EditOp) -> None:
        on_edit(self.state, view, op)

    def solution(self) -> SolutionSnapshot:
        return self.state.cover()

    def check(self, g: DynamicGraph) -> str | None:
        return self.state.check(g)
