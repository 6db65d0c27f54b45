"""Maintenance-algorithm contract, run loop and per-step instrumentation.

A maintainer holds a solution for the current graph.  After each unit edit
the runner hands it a :class:`~dynmaint.graph.TrackedGraphView` of the
post-edit graph; everything the maintainer looks at or changes goes through
that view, which is how touched sets, work units and locality radii are
measured.  Oracle calls go straight to the graph and are never charged to
the maintainer.
"""

from __future__ import annotations

import csv
import io
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InvalidSolution, MissingOracle, PreconditionViolation, UnsupportedProblem
from .graph import DynamicGraph, EditOp, EditScript, TrackedGraphView, bfs_distances

VERTEX_COVER = "vertex-cover"
DOMINATING_SET = "dominating-set"
CUSTOM = "custom"

DIVERGENT = "divergent"
OTHER = "other"


@dataclass(frozen=True)
class SolutionSnapshot:
    problem: str
    members: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)

    @classmethod
    def of(cls, problem: str, members: Iterable[int]) -> SolutionSnapshot:
        return cls(problem, frozenset(members))


@dataclass(frozen=True)
class MaintainerSpec:
    """What a maintainer claims about itself; checked by tests, not at runtime.

    ``work_constant`` is the ``c`` in ``work <= c * (deg(u) + deg(v) + 1)``
    for degree-linear maintainers.  ``claimed_radius`` of None means no
    locality claim.
    """

    claimed_radius: int | None
    claimed_work_bound: str
    work_constant: int | None = None
    target_ratio: Fraction | None = None


Oracle = Callable[[DynamicGraph], SolutionSnapshot]


class Maintainer(ABC):
    problem: str
    spec: MaintainerSpec

    @abstractmethod
    def init(self, g: DynamicGraph) -> None:
        """Build the solution for G_0 from scratch."""

    @abstractmethod
    def on_edit(self, view: TrackedGraphView, op: EditOp) -> None:
        """Update the solution after ``op`` has been applied."""

    @abstractmethod
    def solution(self) -> SolutionSnapshot:
        ...

    def check(self, g: DynamicGraph) -> str | None:
        """Maintainer-specific state invariants; reason string on failure."""
        return None


@dataclass
class StepReport:
    step_index: int
    op: EditOp
    touched_read: frozenset[int]
    touched_write: frozenset[int]
    work_units: int
    locality_radius: int | None
    solution_size: int
    optimum_size: int | None = None

    @property
    def touched(self) -> frozenset[int]:
        return self.touched_read | self.touched_write


@dataclass
class RunReport:
    steps: list[StepReport]
    initial_size: int
    initial_opt: int | None
    final_solution: SolutionSnapshot
    snapshots: list[SolutionSnapshot] | None = None

    @property
    def has_oracle(self) -> bool:
        return self.initial_opt is not None and all(
            s.optimum_size is not None for s in self.steps)

    @property
    def max_ratio(self) -> Fraction | None:
        return max_ratio(self) if self.has_oracle else None

    @property
    def max_locality(self) -> int | None:
        """Largest locality radius; None if some step touched an unreachable vertex."""
        radii = [s.locality_radius for s in self.steps]
        if any(r is None for r in radii):
            return None
        return max(radii, default=0)

    @property
    def max_work(self) -> int:
        return max((s.work_units for s in self.steps), default=0)


def ratio(gamma: int, opt: int) -> Fraction:
    """gamma / opt, with the empty-solution case 0/0 read as 1."""
    if opt == 0:
        if gamma == 0:
            return Fraction(1)
        raise ValueError(f"nonempty solution ({gamma}) where the optimum is empty")
    return Fraction(gamma, opt)


def max_ratio(report: RunReport) -> Fraction:
    """Exact maximum of gamma_i / gamma*_i over the steps of a run."""
    if not report.has_oracle:
        raise MissingOracle("run has no oracle sizes")
    best = Fraction(1)
    for s in report.steps:
        best = max(best, ratio(s.solution_size, s.optimum_size))
    return best


def classify_step(prev_size: int, new_size: int, prev_opt: int, new_opt: int) -> str:
    if new_opt < prev_opt and new_size >= prev_size:
        return DIVERGENT
    if new_opt == prev_opt and new_size > prev_size:
        return DIVERGENT
    return OTHER


def is_vertex_cover(g: DynamicGraph, members: Iterable[int]) -> bool:
    s = set(members)
    return all(u in s or v in s for u, v in g.edges())


def is_dominating_set(g: DynamicGraph, members: Iterable[int]) -> bool:
    s = set(members)
    return all(v in s or not s.isdisjoint(g.neighbors(v)) for v in g.vertices())


_VALIDATORS = {VERTEX_COVER: is_vertex_cover, DOMINATING_SET: is_dominating_set}


def check_solution(g: DynamicGraph, sol: SolutionSnapshot) -> str | None:
    """Reason the snapshot is not a solution of ``g``, or None if it is."""
    stray = [v for v in sol.members if v not in g]
    if stray:
        return f"members not in graph: {sorted(stray)[:5]}"
    check = _VALIDATORS.get(sol.problem)
    if check is not None and not check(g, sol.members):
        return f"not a valid {sol.problem}"
    return None


def locality_radius(g: DynamicGraph, op: EditOp, touched: Iterable[int]) -> int | None:
    """Max hop distance in ``g`` from the edit site to any touched vertex.

    A touched vertex that is an edit site counts as distance 0 even when
    the edit removed it.  Returns None if some touched vertex is
    unreachable from the site.
    """
    sites = set(op.sites)
    rest = [x for x in touched if x not in sites]
    if not rest:
        return 0
    dist = bfs_distances(g, sites)
    worst = 0
    for x in rest:
        d = dist.get(x)
        if d is None:
            return None
        worst = max(worst, d)
    return worst


def run(g0: DynamicGraph, script: EditScript, maintainer: Maintainer,
        oracle: Oracle | None = None, *, validate: bool = True,
        record_solutions: bool = False) -> RunReport:
    """Replay ``script`` from ``g0``, letting ``maintainer`` track a solution."""
    if g0.n != script.initial_n:
        raise ValueError(f"g0 has {g0.n} vertices, script expects {script.initial_n}")
    g = g0.copy()
    maintainer.init(g)
    sol = maintainer.solution()
    if validate:
        reason = check_solution(g, sol) or maintainer.check(g)
        if reason:
            raise InvalidSolution(0, reason)
    initial_size = sol.size
    initial_opt = oracle(g).size if oracle is not None else None
    snapshots = [sol] if record_solutions else None
    view = TrackedGraphView(g)
    steps = []
    for i, op in enumerate(script.ops, start=1):
        try:
            g.apply(op)
        except PreconditionViolation as exc:
            raise PreconditionViolation(f"step {i}: {exc}") from exc
        view.reset()
        maintainer.on_edit(view, op)
        sol = maintainer.solution()
        if validate:
            reason = check_solution(g, sol) or maintainer.check(g)
            if reason:
                raise InvalidSolution(i, f"after {op}: {reason}")
        read, write = frozenset(view.read_log), frozenset(view.write_log)
        steps.append(StepReport(
            step_index=i,
            op=op,
            touched_read=read,
            touched_write=write,
            work_units=view.work,
            locality_radius=locality_radius(g, op, read | write),
            solution_size=sol.size,
            optimum_size=oracle(g).size if oracle is not None else None,
        ))
        if record_solutions:
            snapshots.append(sol)
    return RunReport(steps, initial_size, initial_opt, sol, snapshots)


def union_permanent(solutions: Sequence[SolutionSnapshot],
                    graphs: Sequence[DynamicGraph]) -> tuple[frozenset[int], bool]:
    """Union of per-step covers and whether it covers every graph."""
    if len(solutions) != len(graphs):
        raise ValueError("solutions and graphs differ in length")
    for s in solutions:
        if s.problem != VERTEX_COVER:
            raise UnsupportedProblem(f"union only defined for {VERTEX_COVER}, got {s.problem}")
    members = frozenset().union(*(s.members for s in solutions))
    return members, all(is_vertex_cover(g, members) for g in graphs)


# -- serialization -----------------------------------------------------------

def _fmt_ratio(r: Fraction | None) -> str | None:
    return None if r is None else str(r)


def step_record(s: StepReport) -> dict:
    return {
        "step": s.step_index,
        "op": str(s.op),
        "gamma": s.solution_size,
        "gamma_opt": s.optimum_size,
        "work": s.work_units,
        "radius": s.locality_radius,
        "touched": sorted(s.touched),
    }


def dumps_jsonl(report: RunReport) -> str:
    out = [json.dumps(step_record(s), separators=(",", ":")) for s in report.steps]
    summary = {
        "max_ratio": _fmt_ratio(report.max_ratio),
        "max_work": report.max_work,
        "max_radius": report.max_locality,
    }
    out.append(json.dumps(summary, separators=(",", ":")))
    return "\n".join(out) + "\n"


def dumps_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "gamma", "gamma_opt", "ratio", "work", "radius"])
    for s in report.steps:
        r = None if s.optimum_size is None else _fmt_ratio(ratio(s.solution_size, s.optimum_size))
        w.writerow([s.step_index, s.solution_size,
                    "" if s.optimum_size is None else s.optimum_size,
                    "" if r is None else r, s.work_units,
                    "" if s.locality_radius is None else s.locality_radius])
    return buf.getvalue()
