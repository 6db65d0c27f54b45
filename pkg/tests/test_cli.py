import json

import pytest

from dynmaint.cli import main
from dynmaint.graph import EditScript, read_script, write_graph, DynamicGraph


def test_maintain_churn_jsonl(tmp_path, capsys):
    out = tmp_path / "run.jsonl"
    code = main(["maintain", "--gen", "churn", "--n", "12", "--steps", "200", "--seed", "7",
                 "--oracle", "exact", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    summary = json.loads(lines[-1])
    assert summary["max_radius"] <= 1
    assert len(lines) == 201
    assert "max_ratio=" in capsys.readouterr().out


def test_maintain_triangle_csv(tmp_path):
    script = tmp_path / "tri.script"
    script.write_text("3\nAE 0 1\nAE 1 2\nAE 0 2\n")
    out = tmp_path / "run.csv"
    assert main(["maintain", "--script", str(script), "--oracle", "exact",
                 "--format", "csv", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "step,gamma,gamma_opt,ratio,work,radius"
    assert rows[-1].split(",")[1:4] == ["2", "2", "1"]


def test_maintain_bad_script(tmp_path, capsys):
    script = tmp_path / "bad.script"
    script.write_text("3\nAE 0 1\nAE 0 1\n")
    assert main(["maintain", "--script", str(script)]) == 3
    assert "step 2" in capsys.readouterr().err


def test_missing_seed(capsys):
    assert main(["maintain", "--gen", "churn"]) == 3
    assert "--seed" in capsys.readouterr().err


def test_unknown_oracle_combination(capsys):
    assert main(["maintain", "--gen", "star", "--n", "4", "--oracle", "analytic-star"]) == 3


def test_divergence(tmp_path, capsys):
    out = tmp_path / "div.json"
    assert main(["divergence", "--n", "10", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["divergent_steps"] == 8 and data["final_ratio"] == "9" and data["bound_holds"]
    assert "d=8" in capsys.readouterr().out
    assert main(["divergence", "--n", "2"]) == 3


def test_reduce_verify(tmp_path):
    assert main(["reduce", "--k", "2", "--s", "2", "--d", "1", "--seed", "1", "--planted",
                 "--verify", "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "equivalence.json").read_text())
    assert rep["consistent"] and rep["witness_maps_back"] and len(rep["witness"]) == 4
    assert (tmp_path / "instance.graph").exists() and (tmp_path / "instance.prov").exists()


def test_reduce_odd_s(tmp_path, capsys):
    assert main(["reduce", "--k", "2", "--s", "3", "--d", "1", "--seed", "1",
                 "--out", str(tmp_path)]) == 3
    assert "OddClassSize" in capsys.readouterr().err


def test_gen_and_replay(tmp_path):
    path = tmp_path / "c.script"
    assert main(["gen", "--kind", "churn", "--n", "8", "--steps", "50", "--seed", "3",
                 "--out", str(path)]) == 0
    script = read_script(path)
    assert isinstance(script, EditScript) and len(script) == 50
    assert main(["maintain", "--script", str(path)]) == 0


def test_gen_edge_by_edge(tmp_path):
    g = tmp_path / "g.graph"
    write_graph(DynamicGraph(range(4), [(0, 1), (1, 2), (2, 3)]), g)
    path = tmp_path / "e.script"
    assert main(["gen", "--kind", "edge-by-edge", "--graph", str(g), "--seed", "0",
                 "--out", str(path)]) == 0
    assert read_script(path).final_graph().m == 3


def test_verify(tmp_path, capsys):
    g = tmp_path / "c.graph"
    write_graph(DynamicGraph(range(5), [(i, (i + 1) % 5) for i in range(5)] + [(0, 2)]), g)
    out = tmp_path / "v.json"
    assert main(["verify", "--graph", str(g), "--r", "2", "--max-deletions", "1",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["found"] and data["witness"] == [1]  # leaves the 4-cycle 0-2-3-4
    assert main(["verify", "--graph", str(g), "--r", "3", "--max-deletions", "1"]) == 0
    assert "no deletion set" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [[], ["nope"], ["reduce", "--k", "2"]])
def test_usage_errors(argv):
    assert main(argv) == 3
