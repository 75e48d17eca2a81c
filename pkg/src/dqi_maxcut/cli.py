"""Command-line harness: gen, analyze, simulate, decode, solve, compare.

Every output embeds its run configuration (seed and budgets included), and
identical configurations reproduce byte-identical files.  Wall-clock
timings are therefore excluded unless --timings is passed.

Exit codes: 0 success, 2 usage or malformed input, 3 budget exceeded,
4 infeasible decoding.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

from . import compare as compare_mod
from . import graphs, plots, simulate, solvers, spectral, tjoin
from .errors import BudgetError, InfeasibleError
from .parity import BitVector

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INFEASIBLE = 4


@dataclass
class RunConfig:
    command: str
    seed: int
    budgets: dict
    format: str
    out: str | None
    params: dict

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "budgets": dict(sorted(self.budgets.items())),
            "format": self.format,
            "out": self.out,
            "params": dict(sorted(self.params.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _round_floats(obj, digits: int = 15):
    """Round every float to the given significant digits (for rendering)."""
    if isinstance(obj, float):
        return float(format(obj, f".{digits}g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, args, round_floats: bool = False) -> None:
    if round_floats:
        payload = _round_floats(payload)
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)


def _load_graph(args) -> tuple[graphs.Graph, str]:
    if getattr(args, "gen", None) and getattr(args, "graph", None):
        raise ValueError("give either a graph file or --gen, not both")
    if getattr(args, "gen", None):
        return graphs.generate(args.gen, seed=args.seed), args.gen
    if getattr(args, "graph", None):
        return graphs.read_edge_list(args.graph), args.graph
    raise ValueError("no input: give a graph file or --gen SPEC")


def _budgets(args) -> dict:
    return {
        "assignments": args.budget_assignments,
        "subsets": args.budget_subsets,
        "amplitudes": args.budget_amplitudes,
        "tjoin": args.budget_tjoin,
        "fpt_exponent": args.budget_fpt,
    }


def _config(args, command: str, **params) -> RunConfig:
    return RunConfig(command=command, seed=args.seed, budgets=_budgets(args),
                     format=args.format, out=args.out, params=params)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_gen(args) -> int:
    graph = graphs.generate(args.spec, seed=args.seed)
    config = _config(args, "gen", spec=args.spec)
    text = f"# config: {config.to_json()}\n" + graphs.format_edge_list(graph)
    _emit(text, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    graph, label = _load_graph(args)
    dqi = spectral.plan(graph, cap=args.cap)
    config = _config(args, "analyze", input=label, cap=args.cap)
    _emit_json({"config": config.to_dict(), "plan": dqi.to_dict()},
               args, round_floats=True)
    return EXIT_OK


def cmd_simulate(args) -> int:
    graph, label = _load_graph(args)
    g = graphs.girth(graph)
    cap = spectral.enumeration_cap(graph.m, args.budget_subsets)
    l = args.l if args.l is not None else spectral.choose_l(g, graph.m, cap)
    dqi = spectral.plan_with_degree(graph, g, l, cap=cap)
    hist_report = simulate.dqi_expectation_exact(
        graph, dqi.coeffs, max_assignments=args.budget_assignments)
    sv_report = simulate.dqi_statevector(
        graph, dqi.coeffs, dqi.l,
        max_subsets=args.budget_subsets,
        max_amplitudes=args.budget_amplitudes,
        keep_amplitudes=args.amplitudes)
    gap = abs(hist_report.expected_cut - sv_report.expected_cut)
    if gap > 1e-9:
        raise AssertionError(
            f"simulation paths disagree by {gap}; this is a bug")
    samples = ()
    if args.samples:
        samples = simulate.sample_cuts(graph, hist_report, args.samples,
                                       seed=args.seed)
    config = _config(args, "simulate", input=label, l=dqi.l,
                     samples=args.samples)
    payload = {
        "config": config.to_dict(),
        "plan": dqi.to_dict(),
        "histogram_path": hist_report.to_dict(),
        "statevector_path": sv_report.to_dict(),
        "paths_agree_within": 1e-9,
    }
    if samples:
        payload["samples"] = [
            {"assignment": s.bitstring(), "cut_value": s.value} for s in samples
        ]
    if not dqi.formula_exact:
        payload["prediction_deficit"] = (
            dqi.predicted_expected_cut - hist_report.expected_cut)
    _emit_json(payload, args)
    return EXIT_OK


def cmd_decode(args) -> int:
    graph, label = _load_graph(args)
    alpha = BitVector.from_hex(args.alpha, graph.n)
    beta = tjoin.decode_parity(graph, args.l, alpha, max_t=args.budget_tjoin)
    config = _config(args, "decode", input=label, alpha=args.alpha, l=args.l)
    _emit_json({
        "config": config.to_dict(),
        "beta": beta.to_hex(),
        "size": beta.weight(),
        "edges": [list(graph.edges[e]) for e in beta.indices()],
    }, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    graph, label = _load_graph(args)
    method = args.method
    if method == "auto":
        if 2 * graphs.cyclomatic(graph) <= args.budget_fpt:
            method = "fpt"
        elif (1 << max(graph.n - 1, 0)) <= args.budget_assignments:
            method = "brute"
        else:
            raise BudgetError(
                "auto solver (fpt exponent and assignments both)",
                f"2*mu <= {args.budget_fpt} or 2^(n-1) <= {args.budget_assignments}",
                f"2*mu = {2 * graphs.cyclomatic(graph)}, n = {graph.n}",
            )
    if method == "brute":
        result = solvers.brute_force_maxcut(graph, args.budget_assignments)
    elif method == "fpt":
        result = solvers.fpt_maxcut(graph, max_exponent=args.budget_fpt)
    else:
        result = solvers.spanning_tree_cut(graph)
    config = _config(args, "solve", input=label, method=args.method)
    _emit_json({
        "config": config.to_dict(),
        "result": result.to_dict(include_timing=args.timings),
    }, args)
    return EXIT_OK


_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def expand_specs(items) -> list[str]:
    """Expand one A..B integer range per spec: cycle:4..8 -> cycle:4 ... cycle:8."""
    out = []
    for item in items:
        if item.startswith("@"):
            out.append(item)
            continue
        name, _, argtext = item.partition(":")
        pieces = argtext.split(",") if argtext else []
        range_at = [i for i, p in enumerate(pieces) if _RANGE.match(p)]
        if not range_at:
            out.append(item)
            continue
        if len(range_at) > 1:
            raise ValueError(f"only one range per spec: {item!r}")
        i = range_at[0]
        lo, hi = map(int, _RANGE.match(pieces[i]).groups())
        if hi < lo:
            raise ValueError(f"empty range in {item!r}")
        for v in range(lo, hi + 1):
            expanded = pieces[:i] + [str(v)] + pieces[i + 1:]
            out.append(f"{name}:{','.join(expanded)}")
    return out


def cmd_compare(args) -> int:
    specs = expand_specs(args.specs)
    rows = []
    for spec in specs:
        if spec.startswith("@"):
            graph = graphs.read_edge_list(spec[1:])
        else:
            graph = graphs.generate(spec, seed=args.seed)
        rows.append(compare_mod.build_row(
            spec, graph,
            cap=args.cap,
            max_assignments=args.budget_assignments,
            max_fpt_exponent=args.budget_fpt,
        ))
    config = _config(args, "compare", specs=specs, cap=args.cap,
                     plots=args.plots)
    config_json = config.to_json()
    json_payload = {
        "config": config.to_dict(),
        "rows": [r.to_dict(include_timings=args.timings) for r in rows],
    }
    if args.format == "json":
        _emit_json(json_payload, args)
    else:
        csv_text = compare_mod.rows_to_csv(rows, config_json)
        _emit(csv_text, args.out)
        if args.out:
            base, _ = os.path.splitext(args.out)
            with open(base + ".json", "w", encoding="utf-8") as fh:
                json.dump(json_payload, fh, sort_keys=True, indent=2)
                fh.write("\n")
    if args.plots:
        if not args.out:
            raise ValueError("--plots needs --out to name the figure files")
        base, _ = os.path.splitext(args.out)
        plots.render_comparison_figures(rows, base)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=0,
                        help="seed for generators and sampling (default 0)")
    shared.add_argument("--budget-assignments", type=int, default=simulate.DEFAULT_ASSIGNMENT_BUDGET,
                        help="max enumerated assignments 2^(n-1)")
    shared.add_argument("--budget-subsets", type=int, default=simulate.DEFAULT_SUBSET_BUDGET,
                        help="max sum of C(m,k), k <= l, for the state-vector path")
    shared.add_argument("--budget-amplitudes", type=int, default=simulate.DEFAULT_AMPLITUDE_BUDGET,
                        help="max state-vector register size 2^n")
    shared.add_argument("--budget-tjoin", type=int, default=tjoin.DEFAULT_T_BUDGET,
                        help="max T-join terminal count")
    shared.add_argument("--budget-fpt", type=int, default=solvers.DEFAULT_FPT_EXPONENT,
                        help="max value of 2*mu for the fpt solver")
    shared.add_argument("--format", choices=("json", "csv"), default="csv",
                        help="table format for compare (others emit JSON)")
    shared.add_argument("--out", "-o", default=None, help="output path (default stdout)")
    shared.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (breaks byte-reproducibility)")

    parser = argparse.ArgumentParser(
        prog="dqi-maxcut",
        description="Girth analysis, exact DQI sampling simulation, and "
                    "classical exact MaxCut solvers on high-girth graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[shared], help="generate a fixture graph")
    p.add_argument("spec", help="generator spec, e.g. cycle:6 or theta:3,3,4")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("analyze", parents=[shared],
                       help="girth, degree, eigenpair, predicted expectation")
    p.add_argument("graph", nargs="?", help="edge-list file")
    p.add_argument("--gen", help="generator spec instead of a file")
    p.add_argument("--cap", type=int, default=spectral.DEFAULT_ANALYSIS_CAP,
                   help="degree cap (analysis never enumerates)")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("simulate", parents=[shared],
                       help="exact sampling distribution via both paths")
    p.add_argument("graph", nargs="?")
    p.add_argument("--gen")
    p.add_argument("--l", type=int, default=None, help="override the degree")
    p.add_argument("--samples", type=int, default=0,
                   help="also draw this many assignments")
    p.add_argument("--amplitudes", action="store_true",
                   help="include normalized state amplitudes in the report")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("decode", parents=[shared],
                       help="recover the short edge subset with given parities")
    p.add_argument("graph", nargs="?")
    p.add_argument("--gen")
    p.add_argument("--alpha", required=True,
                   help="vertex parity vector as hex (bit 0 = vertex 0)")
    p.add_argument("--l", type=int, required=True, help="weight bound")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("solve", parents=[shared], help="exact MaxCut")
    p.add_argument("graph", nargs="?")
    p.add_argument("--gen")
    p.add_argument("--method", choices=("auto", "brute", "fpt", "tree"),
                   default="auto")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("compare", parents=[shared],
                       help="one row per instance: DQI beside classical")
    p.add_argument("specs", nargs="+",
                   help="generator specs (ranges like cycle:4..16) or @file paths")
    p.add_argument("--cap", type=int, default=spectral.DEFAULT_ANALYSIS_CAP)
    p.add_argument("--plots", action="store_true",
                   help="render figures next to the table (needs --out)")
    p.set_defaults(fn=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        _error(exc)
        return EXIT_BUDGET
    except InfeasibleError as exc:
        _error(exc)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        _error(exc)
        return EXIT_USAGE


def _error(exc: Exception) -> None:
    sys.stderr.write(json.dumps(
        {"error": {"type": type(exc).__name__, "message": str(exc)}}
    ) + "\n")


if __name__ == "__main__":
    sys.exit(main())
