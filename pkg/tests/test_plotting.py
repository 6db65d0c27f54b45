from dynmaint.cli import main
from dynmaint.divergence import star_divergence
from dynmaint.graph import churn_script
from dynmaint.baselines import vc_exact
from dynmaint.maintenance import run
from dynmaint.plotting import plot_divergence, plot_run
from dynmaint.vertex_cover import VertexCoverMaintainer

PNG_MAGIC = b"\x89PNG"


def test_plot_run(tmp_path):
    script = churn_script(10, 60, 0.6, seed=2)
    report = run(script.initial_graph(), script, VertexCoverMaintainer(), vc_exact)
    path = tmp_path / "run.png"
    plot_run(report, path, title="churn")
    assert path.read_bytes()[:4] == PNG_MAGIC


def test_plot_run_without_oracle(tmp_path):
    script = churn_script(10, 30, 0.6, seed=2)
    report = run(script.initial_graph(), script, VertexCoverMaintainer())
    path = tmp_path / "run.png"
    plot_run(report, path, title="no oracle")
    assert path.exists()


def test_plot_divergence(tmp_path):
    path = tmp_path / "div.png"
    plot_divergence(star_divergence(8), path)
    assert path.read_bytes()[:4] == PNG_MAGIC


def test_cli_plot_flags(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert main(["maintain", "--gen", "churn", "--n", "8", "--steps", "20", "--seed", "1",
                 "--oracle", "exact", "--plot", str(a)]) == 0
    assert main(["divergence", "--n", "6", "--plot", str(b)]) == 0
    assert a.exists() and b.exists()
