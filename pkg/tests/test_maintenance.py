import json
from fractions import Fraction

import pytest

from brute import min_vertex_cover_size
from dynmaint.baselines import DsShrinkMaintainer, ds_exact, vc_exact
from dynmaint.errors import InvalidSolution, MissingOracle, PreconditionViolation, UnsupportedProblem
from dynmaint.graph import (DynamicGraph, EditOp, EditScript, TrackedGraphView,
                            build_script_edge_by_edge, churn_script, distance_from)
from dynmaint.maintenance import (DIVERGENT, DOMINATING_SET, OTHER, VERTEX_COVER, Maintainer,
                                  MaintainerSpec, RunReport, SolutionSnapshot, StepReport,
                                  classify_step, dumps_csv, dumps_jsonl, locality_radius,
                                  max_ratio, run, union_permanent)
from dynmaint.vertex_cover import VertexCoverMaintainer

TRIANGLE = DynamicGraph([0, 1, 2], [(0, 1), (1, 2), (0, 2)])


def test_empty_script():
    g0 = DynamicGraph([0, 1], [(0, 1)])
    report = run(g0, EditScript(2, []), VertexCoverMaintainer())
    assert report.steps == []
    assert report.final_solution.members == {0, 1}
    assert report.initial_size == 2


def test_triangle_run():
    script = build_script_edge_by_edge(TRIANGLE, 0)
    report = run(script.initial_graph(), script, VertexCoverMaintainer(), vc_exact)
    assert len(report.steps) == 3
    assert report.final_solution.size == 2
    assert report.steps[-1].optimum_size == 2 == min_vertex_cover_size(TRIANGLE)
    assert report.max_ratio == 2  # the single-edge step is 2 / 1


def test_build_up_replay_small():
    target = DynamicGraph(range(7), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)])
    script = build_script_edge_by_edge(target, 5)
    report = run(DynamicGraph.edgeless(7), script, VertexCoverMaintainer())
    assert all(u in report.final_solution.members or v in report.final_solution.members
               for u, v in target.edges())


@pytest.mark.parametrize("sizes, expected", [
    ((5, 5, 3, 2), DIVERGENT),
    ((5, 6, 3, 3), DIVERGENT),
    ((5, 4, 3, 2), OTHER),
    ((5, 5, 3, 3), OTHER),
    ((5, 6, 3, 4), OTHER),
])
def test_classify_step(sizes, expected):
    prev_size, new_size, prev_opt, new_opt = sizes
    assert classify_step(prev_size, new_size, prev_opt, new_opt) == expected


def test_union_permanent_examples():
    g = DynamicGraph([0, 1], [(0, 1)])
    members, valid = union_permanent([SolutionSnapshot.of(VERTEX_COVER, {0})], [g])
    assert members == {0} and valid
    g1 = DynamicGraph([0, 1, 2, 3], [(0, 1)])
    g2 = DynamicGraph([0, 1, 2, 3], [(2, 3)])
    members, valid = union_permanent([SolutionSnapshot.of(VERTEX_COVER, {0}),
                                      SolutionSnapshot.of(VERTEX_COVER, {2})], [g1, g2])
    assert members == {0, 2} and valid
    members, valid = union_permanent([SolutionSnapshot.of(VERTEX_COVER, {0})], [g2])
    assert not valid
    with pytest.raises(UnsupportedProblem):
        union_permanent([SolutionSnapshot.of(DOMINATING_SET, {0})], [g])


def test_union_over_churn_run_is_valid():
    script = churn_script(15, 300, 0.5, 2)
    report = run(script.initial_graph(), script, VertexCoverMaintainer(), record_solutions=True)
    members, valid = union_permanent(report.snapshots, list(script.graphs()))
    assert valid


def _report(pairs):
    steps = [StepReport(i, EditOp.add_vertex(i), frozenset(), frozenset(), 0, 0, g, o)
             for i, (g, o) in enumerate(pairs, start=1)]
    return RunReport(steps, 1, 1, SolutionSnapshot.of(VERTEX_COVER, []))


def test_max_ratio():
    assert max_ratio(_report([(3, 3), (2, 2)])) == 1
    assert max_ratio(_report([(4, 3), (3, 2)])) == Fraction(3, 2)
    report = _report([(3, 3)])
    report.steps[0].optimum_size = None
    with pytest.raises(MissingOracle):
        max_ratio(report)


def test_vc_ratio_at_most_two():
    script = churn_script(16, 300, 0.6, 9)
    report = run(script.initial_graph(), script, VertexCoverMaintainer(), vc_exact)
    assert 1 <= report.max_ratio <= 2


class _Lazy(Maintainer):
    """Never updates: wrong as soon as an edge appears."""
    problem = VERTEX_COVER
    spec = MaintainerSpec(claimed_radius=0, claimed_work_bound="constant")

    def init(self, g):
        pass

    def on_edit(self, view, op):
        pass

    def solution(self):
        return SolutionSnapshot.of(VERTEX_COVER, [])


def test_invalid_solution_aborts():
    script = EditScript(3, [EditOp.add_edge(0, 1)])
    with pytest.raises(InvalidSolution) as exc:
        run(script.initial_graph(), script, _Lazy())
    assert exc.value.step == 1
    report = run(script.initial_graph(), script, _Lazy(), validate=False)
    assert report.final_solution.size == 0


def test_precondition_error_names_step():
    script = EditScript(2, [EditOp.add_edge(0, 1), EditOp.add_edge(0, 1)])
    with pytest.raises(PreconditionViolation, match="step 2"):
        run(script.initial_graph(), script, VertexCoverMaintainer())


def test_oracle_not_charged():
    script = churn_script(12, 200, 0.6, 1)
    a = run(script.initial_graph(), script, VertexCoverMaintainer())
    b = run(script.initial_graph(), script, VertexCoverMaintainer(), vc_exact)
    assert [s.work_units for s in a.steps] == [s.work_units for s in b.steps]
    assert [s.touched for s in a.steps] == [s.touched for s in b.steps]


def test_step_report_invariants():
    script = churn_script(20, 500, 0.5, 3)
    report = run(script.initial_graph(), script, VertexCoverMaintainer())
    graphs = list(script.graphs())
    for s in report.steps:
        assert s.touched_write <= s.touched_read | set(s.op.sites)
        g = graphs[s.step_index]
        expected = max((distance_from(g, s.op.sites, x) for x in s.touched), default=0)
        assert s.locality_radius == expected


def test_locality_radius_of_removed_site():
    g = DynamicGraph([0, 1])
    assert locality_radius(g, EditOp.del_vertex(5), {5}) == 0
    assert locality_radius(g, EditOp.add_edge(0, 1), {0}) == 0
    assert locality_radius(DynamicGraph([0, 1, 2]), EditOp.add_vertex(0), {2}) is None


def test_ds_run_stays_dominating():
    script = churn_script(12, 300, 0.5, 8)
    report = run(script.initial_graph(), script, DsShrinkMaintainer(), ds_exact)
    assert report.max_locality is not None and report.max_locality <= 2
    assert all(s.solution_size >= s.optimum_size for s in report.steps)


def test_jsonl_and_csv_formats():
    script = build_script_edge_by_edge(TRIANGLE, 0)
    report = run(script.initial_graph(), script, VertexCoverMaintainer(), vc_exact)
    lines = dumps_jsonl(report).splitlines()
    assert len(lines) == 4
    rec = json.loads(lines[0])
    assert set(rec) == {"step", "op", "gamma", "gamma_opt", "work", "radius", "touched"}
    summary = json.loads(lines[-1])
    assert summary == {"max_ratio": "2", "max_work": report.max_work, "max_radius": 0}
    csv_lines = dumps_csv(report).splitlines()
    assert csv_lines[0] == "step,gamma,gamma_opt,ratio,work,radius"
    assert csv_lines[-1].split(",")[1:4] == ["2", "2", "1"]
