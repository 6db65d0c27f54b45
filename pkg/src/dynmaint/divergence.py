"""Divergent steps and the ratio blow-up they cause.

A step is divergent when the optimum shrinks but the maintained solution
does not, or the optimum holds while the solution grows.  Each divergent
step pushes the ratio up; after ``d`` of them the ratio is at least
``1 + d / opt_final``.  The star experiment realizes this for Dominating
Set: the shrink maintainer ends with all ``n - 1`` leaves against an
optimum of one centre.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .baselines import DsShrinkMaintainer, ds_exact
from .errors import MissingOracle
from .graph import DynamicGraph, EditOp, EditScript
from .maintenance import DIVERGENT, RunReport, classify_step, ratio, run


@dataclass
class DivergenceReport:
    run: RunReport
    classes: list[str]
    divergent_steps: int
    initial_size: int
    initial_opt: int
    final_size: int
    final_opt: int
    bound_rhs: Fraction
    bound_holds: bool

    @property
    def final_ratio(self) -> Fraction:
        return ratio(self.final_size, self.final_opt)

    def to_dict(self) -> dict:
        return {
            "divergent_steps": self.divergent_steps,
            "initial_size": self.initial_size,
            "initial_opt": self.initial_opt,
            "final_size": self.final_size,
            "final_opt": self.final_opt,
            "final_ratio": str(self.final_ratio),
            "bound_rhs": str(self.bound_rhs),
            "bound_holds": self.bound_holds,
            "steps": [
                {"step": s.step_index, "op": str(s.op), "gamma": s.solution_size,
                 "gamma_opt": s.optimum_size, "class": c}
                for s, c in zip(self.run.steps, self.classes)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def table(self) -> str:
        rows = [f"{'step':>5} {'op':<12} {'gamma':>6} {'gamma*':>6}  class"]
        rows.append(f"{0:>5} {'-':<12} {self.initial_size:>6} {self.initial_opt:>6}  -")
        for s, c in zip(self.run.steps, self.classes):
            rows.append(f"{s.step_index:>5} {str(s.op):<12} {s.solution_size:>6} "
                        f"{s.optimum_size:>6}  {c}")
        rows.append(f"divergent steps d={self.divergent_steps}; final ratio "
                    f"{self.final_ratio} >= 1 + d/opt = {self.bound_rhs}: {self.bound_holds}")
        return "\n".join(rows)


def star_script(n: int) -> tuple[DynamicGraph, EditScript, int]:
    """Edgeless graph on ``0 .. n-1`` and the edges turning it into a star at 0."""
    if n < 3:
        raise ValueError(f"star experiment needs n >= 3, got {n}")
    center = 0
    ops = [EditOp.add_edge(center, leaf) for leaf in range(1, n)]
    return DynamicGraph.edgeless(n), EditScript(n, ops), center


def analyze_divergence(report: RunReport) -> DivergenceReport:
    if not report.has_oracle:
        raise MissingOracle("divergence analysis needs oracle sizes at every step")
    classes = []
    prev_size, prev_opt = report.initial_size, report.initial_opt
    for s in report.steps:
        classes.append(classify_step(prev_size, s.solution_size, prev_opt, s.optimum_size))
        prev_size, prev_opt = s.solution_size, s.optimum_size
    d = classes.count(DIVERGENT)
    final_size, final_opt = prev_size, prev_opt
    rhs = 1 + Fraction(d, final_opt)
    return DivergenceReport(
        run=report,
        classes=classes,
        divergent_steps=d,
        initial_size=report.initial_size,
        initial_opt=report.initial_opt,
        final_size=final_size,
        final_opt=final_opt,
        bound_rhs=rhs,
        bound_holds=Fraction(final_size, final_opt) >= rhs,
    )


def single_step_ratio(A: Fraction | int, opt: int) -> Fraction:
    """Ratio after one divergent step from gamma = A * opt with the optimum unchanged."""
    A = Fraction(A)
    if opt < 1 or A < 1:
        raise ValueError("need opt >= 1 and A >= 1")
    return (A * opt + 1) / opt


def star_divergence(n: int) -> DivergenceReport:
    """Shrink maintainer against the star adversary, with the star-forest oracle."""
    g0, script, _ = star_script(n)
    report = run(g0, script, DsShrinkMaintainer(), ds_exact)
    return analyze_divergence(report)


def single_step_instance(A: Fraction | int, opt: int) -> tuple[DynamicGraph, EditScript]:
    """Edits driving the shrink maintainer to gamma = A * opt, then one divergent step.

    The graph is ``opt - 1`` stars plus a triangle.  Built from scratch,
    each star leaves all its leaves in the solution and the triangle keeps a
    single dominator, so gamma = (total leaves) + 1 against an optimum of
    ``opt``.  The last edit removes a triangle edge; the vertex it cuts off
    from the dominator adds itself while the optimum stays ``opt``.
    """
    A = Fraction(A)
    gamma = A * opt
    if opt < 1 or A < 1 or gamma.denominator != 1:
        raise ValueError(f"need integral A*opt with opt >= 1 and A >= 1, got A={A} opt={opt}")
    leaves_total = int(gamma) - 1
    stars = opt - 1
    if leaves_total < stars or (stars == 0 and leaves_total):
        raise ValueError(f"no star layout gives gamma={gamma} with opt={opt}")
    sizes = [1] * stars
    for i in range(leaves_total - stars):
        sizes[i % stars] += 1
    ops = []
    nxt = 0
    for m in sizes:
        center = nxt
        ops.extend(EditOp.add_edge(center, center + t) for t in range(1, m + 1))
        nxt += m + 1
    a, b, c = nxt, nxt + 1, nxt + 2
    ops += [EditOp.add_edge(a, b), EditOp.add_edge(b, c), EditOp.add_edge(a, c),
            EditOp.del_edge(a, b)]
    n = nxt + 3
    return DynamicGraph.edgeless(n), EditScript(n, ops)
