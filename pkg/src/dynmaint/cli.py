"""Command-line entry point.

    dynmaint maintain   --maintainer vc-matching --gen churn --n 20 --steps 500 --seed 7 --oracle exact
    dynmaint divergence --n 10
    dynmaint reduce     --k 2 --s 2 --d 1 --seed 1 --planted --verify
    dynmaint gen        --kind churn --n 20 --steps 100 --seed 3 --out churn.script
    dynmaint verify     --graph g.graph --r 5 --max-deletions 4

Exit codes: 0 success, 2 invalid maintained solution, 3 parameter, input,
precondition or budget errors (and an inconsistent ``reduce --verify``).
Failures print one ``error:`` line on stderr.  Machine output goes to
files; stdout carries a short human summary.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .baselines import DsShrinkMaintainer, ds_exact, ds_star_analytic, vc_exact
from .divergence import star_divergence, star_script
from .errors import DynmaintError, InvalidSolution
from .graph import (DynamicGraph, EditScript, build_script_edge_by_edge, churn_script, read_graph,
                    read_script, write_graph, write_script)
from .maintenance import dumps_csv, dumps_jsonl, run
from .reduction import (ApproxBudget, equivalence_check, gen_srmc, reduce,
                        verify_deletion_search)
from .vertex_cover import VertexCoverMaintainer

EXIT_INVALID = 2
EXIT_ERROR = 3

MAINTAINERS = {"vc-matching": VertexCoverMaintainer, "ds-shrink": DsShrinkMaintainer}
ORACLES = {
    ("vc-matching", "exact"): vc_exact,
    ("ds-shrink", "exact"): ds_exact,
    ("ds-shrink", "analytic-star"): ds_star_analytic,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace

    def __post_init__(self) -> None:
        gen = getattr(self.args, "gen", None) or getattr(self.args, "kind", None)
        randomized = gen in ("churn", "edge-by-edge", "srmc") or self.command == "reduce"
        if randomized and getattr(self.args, "seed", None) is None:
            raise UsageError(f"--seed is required for {gen or self.command}")


def _script_from_args(a: argparse.Namespace) -> EditScript:
    if a.script:
        return read_script(a.script)
    if a.gen == "churn":
        return churn_script(a.n, a.steps, a.p_add, a.seed)
    if a.gen == "edge-by-edge":
        if not a.graph:
            raise UsageError("--gen edge-by-edge needs --graph")
        return build_script_edge_by_edge(read_graph(a.graph), a.seed)
    if a.gen == "star":
        return star_script(a.n)[1]
    raise UsageError("give --script FILE or --gen {churn,edge-by-edge,star}")


def cmd_maintain(cfg: RunConfig) -> int:
    a = cfg.args
    script = _script_from_args(a)
    oracle = None
    if a.oracle != "none":
        oracle = ORACLES.get((a.maintainer, a.oracle))
        if oracle is None:
            raise UsageError(f"oracle {a.oracle!r} not available for {a.maintainer}")
    report = run(script.initial_graph(), script, MAINTAINERS[a.maintainer](), oracle,
                 validate=not a.no_validate)
    text = dumps_jsonl(report) if a.format == "jsonl" else dumps_csv(report)
    if a.out:
        Path(a.out).write_text(text, encoding="utf-8")
    if a.plot:
        from .plotting import plot_run
        plot_run(report, a.plot, title=f"{a.maintainer}, {len(script)} steps")
    ratio = report.max_ratio
    print(f"steps={len(report.steps)} final_gamma={report.final_solution.size} "
          f"max_ratio={'-' if ratio is None else ratio} max_work={report.max_work} "
          f"max_radius={report.max_locality}")
    return 0


def cmd_divergence(cfg: RunConfig) -> int:
    a = cfg.args
    if a.n < 3:
        raise UsageError(f"--n must be at least 3, got {a.n}")
    div = star_divergence(a.n)
    print(div.table())
    if a.out:
        Path(a.out).write_text(div.dumps(), encoding="utf-8")
    if a.plot:
        from .plotting import plot_divergence
        plot_divergence(div, a.plot)
    return 0


def cmd_reduce(cfg: RunConfig) -> int:
    a = cfg.args
    budget = ApproxBudget.parse(a.g) if a.g else ApproxBudget()
    inst = gen_srmc(a.k, a.s, a.d, a.seed, a.planted)
    red = reduce(inst, budget)
    out = Path(a.out)
    red.write(out)
    print(f"instance: n={red.graph.n} m={red.graph.m} r={red.regular_degree} "
          f"k'={red.k_prime} -> {out}")
    if not a.verify:
        return 0
    rep = equivalence_check(inst, budget, red)
    (out / "equivalence.json").write_text(rep.dumps(), encoding="utf-8")
    print(f"clique_found={rep.clique_found} deletion_found={rep.deletion_found} "
          f"consistent={rep.consistent} witness_maps_back={rep.witness_maps_back} "
          f"witness_size={len(rep.witness) if rep.witness is not None else '-'}")
    return 0 if rep.consistent and rep.witness_maps_back else EXIT_ERROR


def cmd_gen(cfg: RunConfig) -> int:
    a = cfg.args
    if a.kind == "srmc":
        inst = gen_srmc(a.k, a.s, a.d, a.seed, a.planted)
        write_graph(DynamicGraph(range(inst.k * inst.s), inst.edges), a.out)
    else:
        if a.kind == "churn":
            script = churn_script(a.n, a.steps, a.p_add, a.seed)
        elif a.kind == "edge-by-edge":
            if not a.graph:
                raise UsageError("--kind edge-by-edge needs --graph")
            script = build_script_edge_by_edge(read_graph(a.graph), a.seed)
        else:
            script = star_script(a.n)[1]
        write_script(script, a.out)
    print(f"wrote {a.out}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    a = cfg.args
    g = read_graph(a.graph)
    witness = verify_deletion_search(g, a.r, a.max_deletions)
    payload = {"r": a.r, "max_deletions": a.max_deletions,
               "found": witness is not None,
               "witness": list(witness) if witness is not None else None}
    text = json.dumps(payload, indent=2) + "\n"
    if a.out:
        Path(a.out).write_text(text, encoding="utf-8")
    print("no deletion set within budget" if witness is None
          else f"witness of size {len(witness)}: {list(witness)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dynmaint", description="Dynamic-graph solution maintenance experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("maintain", help="replay an edit script against a maintainer")
    m.add_argument("--maintainer", choices=sorted(MAINTAINERS), default="vc-matching")
    m.add_argument("--script", help="script file to replay")
    m.add_argument("--gen", choices=["churn", "edge-by-edge", "star"])
    m.add_argument("--graph", help="target graph file for --gen edge-by-edge")
    m.add_argument("--n", type=int, default=20)
    m.add_argument("--steps", type=int, default=100)
    m.add_argument("--p-add", type=float, default=0.5)
    m.add_argument("--seed", type=int)
    m.add_argument("--oracle", choices=["exact", "none", "analytic-star"], default="none")
    m.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    m.add_argument("--out", help="report file")
    m.add_argument("--plot", help="PNG figure path")
    m.add_argument("--no-validate", action="store_true",
                   help="skip the per-step solution check")

    d = sub.add_parser("divergence", help="star adversary against the shrink maintainer")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out", help="JSON report file")
    d.add_argument("--plot", help="PNG figure path")

    r = sub.add_parser("reduce", help="build a gadget instance, optionally verify it")
    for flag in ("--k", "--s", "--d"):
        r.add_argument(flag, type=int, required=True)
    r.add_argument("--seed", type=int)
    r.add_argument("--planted", action="store_true")
    r.add_argument("--g", help="approximation budget a,b for g(k) = a*k + b")
    r.add_argument("--verify", action="store_true")
    r.add_argument("--out", default=".", help="output directory")

    gn = sub.add_parser("gen", help="write a generated script or source graph")
    gn.add_argument("--kind", choices=["churn", "edge-by-edge", "star", "srmc"], required=True)
    gn.add_argument("--n", type=int, default=20)
    gn.add_argument("--steps", type=int, default=100)
    gn.add_argument("--p-add", type=float, default=0.5)
    gn.add_argument("--graph")
    gn.add_argument("--k", type=int, default=2)
    gn.add_argument("--s", type=int, default=2)
    gn.add_argument("--d", type=int, default=1)
    gn.add_argument("--planted", action="store_true")
    gn.add_argument("--seed", type=int)
    gn.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="exact vertex deletion to an r-regular graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--max-deletions", type=int, required=True)
    v.add_argument("--out")
    return p


COMMANDS = {"maintain": cmd_maintain, "divergence": cmd_divergence, "reduce": cmd_reduce,
            "gen": cmd_gen, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](RunConfig(args.command, args))
    except InvalidSolution as exc:
        print(f"error: invalid solution at {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DynmaintError, UsageError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
