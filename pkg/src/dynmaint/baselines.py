"""Exact oracles and simple baselines.

* :func:`buss_kernelize` is the classic high-degree rule for Vertex Cover.
* :func:`vc_exact` is a bounded search tree that re-kernelizes at every node.
* :func:`ds_exact` is branch and bound for Dominating Set, with an analytic
  shortcut for disjoint unions of stars.
* :class:`DsShrinkMaintainer` is a radius-2 Dominating Set maintainer that
  drops a vertex once it becomes redundant and re-adds a vertex only when it
  is left undominated.  It is the adversary's target in the star experiment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, CorruptState
from .graph import (ADD_EDGE, ADD_VERTEX, DEL_EDGE, DEL_VERTEX, DynamicGraph, EditOp,
                    TrackedGraphView)
from .maintenance import DOMINATING_SET, VERTEX_COVER, Maintainer, MaintainerSpec, SolutionSnapshot

REDUCED = "reduced"
NO = "no"

DEFAULT_NODE_LIMIT = 10**7


@dataclass
class KernelResult:
    forced: frozenset[int]
    kernel: DynamicGraph
    residual_budget: int
    verdict: str


def buss_kernelize(g: DynamicGraph, k: int) -> KernelResult:
    """Apply the high-degree rule until it no longer fires, then check the size bound.

    A vertex whose degree exceeds the remaining budget must be in every
    cover within budget, so it is taken and the budget drops by one.
    Isolated vertices are then removed.  The answer is ``no`` when the
    budget runs out or more than ``budget**2`` edges remain.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    forced: set[int] = set()
    budget = k
    verdict = REDUCED
    while True:
        high = [v for v in sorted(adj) if len(adj[v]) > budget]
        if not high:
            break
        if budget == 0:
            verdict = NO
            break
        v = high[0]
        forced.add(v)
        for w in adj.pop(v):
            adj[w].discard(v)
        budget -= 1
    for v in [v for v, nb in adj.items() if not nb]:
        del adj[v]
    m = sum(len(nb) for nb in adj.values()) // 2
    if m > budget * budget:
        verdict = NO
    kernel = DynamicGraph(sorted(adj), ((u, w) for u in adj for w in adj[u] if u < w))
    return KernelResult(frozenset(forced), kernel, budget, verdict)


class _Counter:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} node expansions")


def _remove(adj: dict[int, set[int]], v: int) -> None:
    for w in adj.pop(v):
        adj[w].discard(v)


def _greedy_cover(adj: dict[int, set[int]]) -> list[int]:
    taken: set[int] = set()
    for u in sorted(adj):
        for v in sorted(adj[u]):
            if u < v and u not in taken and v not in taken:
                taken.update((u, v))
    return sorted(taken)


def vc_exact(g: DynamicGraph, max_nodes: int = DEFAULT_NODE_LIMIT) -> SolutionSnapshot:
    """Minimum vertex cover by bounded search.

    Each node kernelizes against the budget implied by the best cover found
    so far, then branches on a maximum-degree vertex (smallest id on ties):
    first "vertex in cover", then "whole neighbourhood in cover".
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices() if g.degree(v)}
    best = _greedy_cover(adj)
    counter = _Counter(max_nodes)

    def search(adj: dict[int, set[int]], chosen: list[int]) -> None:
        nonlocal best
        counter.tick()
        adj = {v: set(nb) for v, nb in adj.items() if nb}
        chosen = list(chosen)
        budget = len(best) - 1 - len(chosen)
        while adj:
            if budget < 0:
                return
            high = [v for v in adj if len(adj[v]) > budget]
            if not high:
                break
            v = min(high)
            _remove(adj, v)
            chosen.append(v)
            budget -= 1
            for w in [w for w, nb in adj.items() if not nb]:
                del adj[w]
        if not adj:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        m = sum(len(nb) for nb in adj.values()) // 2
        if budget <= 0 or m > budget * budget:
            return
        v = max(sorted(adj), key=lambda x: len(adj[x]))
        nbrs = sorted(adj[v])
        take_v = {x: set(nb) for x, nb in adj.items()}
        _remove(take_v, v)
        search(take_v, chosen + [v])
        if len(nbrs) <= len(best) - 1 - len(chosen):
            take_nb = {x: set(nb) for x, nb in adj.items()}
            for w in nbrs:
                _remove(take_nb, w)
            search(take_nb, chosen + nbrs)

    if best:
        search(adj, [])
    return SolutionSnapshot.of(VERTEX_COVER, best)


def star_forest_centers(g: DynamicGraph) -> list[int] | None:
    """Minimum dominating set of a disjoint union of stars, else None.

    Isolated vertices dominate themselves; a single edge contributes its
    smaller endpoint; a larger star contributes its centre.
    """
    seen: set[int] = set()
    out: list[int] = []
    for v in g.vertices():
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        size = len(comp)
        if size <= 2:
            out.append(min(comp))
            continue
        centers = [x for x in comp if g.degree(x) == size - 1]
        if len(centers) != 1 or any(g.degree(x) != 1 for x in comp if x != centers[0]):
            return None
        out.append(centers[0])
    return sorted(out)


def ds_star_analytic(g: DynamicGraph) -> SolutionSnapshot:
    centers = star_forest_centers(g)
    if centers is None:
        raise ValueError("graph is not a disjoint union of stars")
    return SolutionSnapshot.of(DOMINATING_SET, centers)


def ds_exact(g: DynamicGraph, max_nodes: int = DEFAULT_NODE_LIMIT) -> SolutionSnapshot:
    """Minimum dominating set; isolated vertices are always included."""
    centers = star_forest_centers(g)
    if centers is not None:
        return SolutionSnapshot.of(DOMINATING_SET, centers)
    closed = {v: frozenset(g.neighbors(v)) | {v} for v in g.vertices()}
    max_reach = max(len(c) for c in closed.values())
    counter = _Counter(max_nodes)

    # greedy upper bound: repeatedly take the vertex dominating most new vertices
    undominated = set(closed)
    best: list[int] = []
    while undominated:
        v = max(sorted(closed), key=lambda x: len(closed[x] & undominated))
        best.append(v)
        undominated -= closed[v]
    best.sort()

    def search(undominated: frozenset[int], chosen: tuple[int, ...]) -> None:
        nonlocal best
        counter.tick()
        if not undominated:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        lower = -(-len(undominated) // max_reach)
        if len(chosen) + lower >= len(best):
            return
        # branch on the undominated vertex with the fewest ways to be dominated
        v = min(sorted(undominated), key=lambda x: len(closed[x]))
        options = sorted(closed[v], key=lambda w: (-len(closed[w] & undominated), w))
        for w in options:
            search(undominated - closed[w], chosen + (w,))

    search(frozenset(closed), ())
    return SolutionSnapshot.of(DOMINATING_SET, best)


@dataclass
class DsState:
    members: set[int] = field(default_factory=set)


def ds_shrink_init(g: DynamicGraph) -> DsState:
    return DsState(set(g.vertices()))


def _has_member_neighbor(view: TrackedGraphView, members: set[int], x: int,
                         excluding: int | None = None) -> bool:
    for w in view.neighbors(x):
        view.read_state(w)
        if w in members and w != excluding:
            return True
    return False


def _redundant(view: TrackedGraphView, members: set[int], x: int) -> bool:
    """True if ``x`` is dominated by another member and nobody relies on it alone."""
    nbrs = view.neighbors(x)
    for w in nbrs:
        view.read_state(w)
    if not any(w in members for w in nbrs):
        return False
    for w in nbrs:
        if w in members:
            continue
        if not _has_member_neighbor(view, members, w, excluding=x):
            return False
    return True


def ds_shrink_on_edit(state: DsState, view: TrackedGraphView, op: EditOp) -> DsState:
    members = state.members
    if op.kind == ADD_EDGE:
        for x in op.sites:
            view.read_state(x)
            if x in members and _redundant(view, members, x):
                members.discard(x)
                view.write(x)
    elif op.kind == DEL_EDGE:
        for x in op.sites:
            view.read_state(x)
            if x not in members and not _has_member_neighbor(view, members, x):
                members.add(x)
                view.write(x)
    elif op.kind == ADD_VERTEX:
        members.add(op.u)
        view.write(op.u)
    elif op.kind == DEL_VERTEX:
        view.read_state(op.u)
        if op.u not in members:
            raise CorruptState(f"isolated vertex {op.u} was not dominating itself")
        members.discard(op.u)
        view.write(op.u)
    return state


class DsShrinkMaintainer(Maintainer):
    problem = DOMINATING_SET
    spec = MaintainerSpec(claimed_radius=2, claimed_work_bound="unbounded")

    def __init__(self) -> None:
        self.state = DsState()

    def init(self, g: DynamicGraph) -> None:
        self.state = ds_shrink_init(g)

    def on_edit(self, view: TrackedGraphView, op: EditOp) -> None:
        ds_shrink_on_edit(self.state, view, op)

    def solution(self) -> SolutionSnapshot:
        return SolutionSnapshot.of(DOMINATING_SET, self.state.members)
