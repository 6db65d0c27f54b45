"""Maintenance algorithms for dynamic graphs: a 1-local matching-based vertex
cover maintainer, divergence experiments for Dominating Set, exact oracles,
and a brute-force-checked gadget reduction for regular-subgraph deletion."""

from .graph import DynamicGraph, EditOp, EditScript, TrackedGraphView, apply_edit
from .maintenance import RunReport, SolutionSnapshot, StepReport, run

__all__ = ["DynamicGraph", "EditOp", "EditScript", "TrackedGraphView", "apply_edit",
           "RunReport", "SolutionSnapshot", "StepReport", "run"]
__version__ = "0.1.0"
