import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynmaint.baselines import DsShrinkMaintainer, ds_exact
from dynmaint.divergence import (analyze_divergence, single_step_instance, single_step_ratio,
                                 star_divergence, star_script)
from dynmaint.errors import MissingOracle
from dynmaint.graph import EditOp
from dynmaint.maintenance import DIVERGENT, OTHER, run


def test_star_script_examples():
    g0, script, center = star_script(3)
    assert g0.m == 0 and center == 0
    assert script.ops == [EditOp.add_edge(0, 1), EditOp.add_edge(0, 2)]
    g0, script, center = star_script(10)
    final = script.final_graph()
    assert len(script.ops) == 9
    assert final.degree(center) == 9
    assert all(final.degree(v) == 1 for v in range(1, 10))
    with pytest.raises(ValueError):
        star_script(2)


def test_star_n10_report():
    rep = star_divergence(10)
    assert (rep.final_size, rep.final_opt) == (9, 1)
    assert rep.divergent_steps == 8
    assert rep.classes[0] == OTHER and set(rep.classes[1:]) == {DIVERGENT}
    assert rep.bound_rhs == 9 and rep.bound_holds


def test_star_n4_equality():
    rep = star_divergence(4)
    assert (rep.final_size, rep.final_opt, rep.divergent_steps) == (3, 1, 2)
    assert rep.bound_rhs == 3 == rep.final_ratio


def test_zero_divergent_steps():
    g0, script = single_step_instance(1, 1)
    script.ops = script.ops[:1]
    rep = analyze_divergence(run(g0, script, DsShrinkMaintainer(), ds_exact))
    assert rep.divergent_steps == 0 and rep.bound_rhs == 1 and rep.bound_holds


def test_missing_oracle():
    g0, script, _ = star_script(5)
    with pytest.raises(MissingOracle):
        analyze_divergence(run(g0, script, DsShrinkMaintainer()))


@pytest.mark.parametrize("A, opt, expected", [
    (2, 5, Fraction(11, 5)),
    (1, 1, Fraction(2)),
    (Fraction(3, 2), 4, Fraction(7, 4)),
])
def test_single_step_ratio(A, opt, expected):
    assert single_step_ratio(A, opt) == expected


@given(A=st.fractions(min_value=1, max_value=50), opt=st.integers(1, 10**6))
def test_single_step_ratio_grows(A, opt):
    assert single_step_ratio(A, opt) > A


@pytest.mark.parametrize("n", [3, 5, 17, 64, 200])
def test_star_ratio_is_n_minus_one(n):
    rep = star_divergence(n)
    assert rep.final_ratio == n - 1
    assert rep.bound_holds


def test_report_serialization():
    rep = star_divergence(5)
    data = json.loads(rep.dumps())
    assert data["final_ratio"] == "4" and data["bound_rhs"] == "4"
    assert len(data["steps"]) == 4
    assert "divergent steps d=3" in rep.table()


@pytest.mark.parametrize("A, opt", [(2, 5), (1, 1), (3, 2), (Fraction(3, 2), 4)])
def test_single_step_instance_hits_target(A, opt):
    g0, script = single_step_instance(A, opt)
    rep = analyze_divergence(run(g0, script, DsShrinkMaintainer(), ds_exact))
    before, after = rep.run.steps[-2], rep.run.steps[-1]
    assert Fraction(before.solution_size, before.optimum_size) == A
    assert after.optimum_size == before.optimum_size == opt
    assert after.solution_size == before.solution_size + 1
    assert rep.classes[-1] == DIVERGENT


def test_single_step_instance_rejects_unreachable():
    with pytest.raises(ValueError):
        single_step_instance(2, 1)
    with pytest.raises(ValueError):
        single_step_instance(Fraction(1, 3) + 1, 2)
