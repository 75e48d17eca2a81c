"""Comparison sweeps: one row per instance, DQI columns beside classical ones.

The table operationalizes the headline juxtaposition: whenever the DQI
columns rise meaningfully above m/2, the instance has constant cyclomatic
number and the classical-exact column both dominates and is computed in
polynomial time.
"""

from __future__ import annotations

import io
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetError
from .graphs import Graph, components, cyclomatic, girth
from .simulate import (
    DEFAULT_ASSIGNMENT_BUDGET,
    dqi_expectation_exact,
    optimize_exact,
    qfs_baseline_expectation,
)
from .solvers import (
    DEFAULT_FPT_EXPONENT,
    brute_force_maxcut,
    fpt_maxcut,
    mu_certificate,
    spanning_tree_cut,
    tree_partition,
)
from .spectral import DEFAULT_ANALYSIS_CAP, plan

CSV_COLUMNS = (
    "spec", "n", "m", "girth", "mu", "l", "lambda_max",
    "dqi_predicted", "dqi_simulated", "degree_l_optimum", "qfs_baseline",
    "classical_optimum", "classical_method", "spanning_tree_cut",
    "formula_exact", "error",
)

_TOL = 1e-9


@dataclass
class ComparisonRow:
    spec: str
    n: int
    m: int
    girth: object = None            # int or "inf"
    mu: Optional[int] = None
    l: Optional[int] = None
    lambda_max: Optional[float] = None
    dqi_predicted: Optional[float] = None
    dqi_simulated: Optional[float] = None
    degree_l_optimum: Optional[float] = None
    qfs_baseline: Optional[float] = None
    classical_optimum: Optional[float] = None
    classical_method: Optional[str] = None
    spanning_tree_cut: Optional[float] = None
    formula_exact: Optional[bool] = None
    tree_partition_t: Optional[int] = None
    tree_partition_degenerate: Optional[bool] = None
    prediction_deficit: Optional[float] = None
    error: Optional[str] = None
    timings: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {c: getattr(self, c) for c in CSV_COLUMNS}
        out["tree_partition_t"] = self.tree_partition_t
        out["tree_partition_degenerate"] = self.tree_partition_degenerate
        out["prediction_deficit"] = self.prediction_deficit
        if include_timings:
            out["timings"] = dict(self.timings)
        return out


def _validate(row: ComparisonRow, weighted: bool) -> None:
    """Emission-time consistency checks; raises on violation."""
    measured = [
        ("dqi_simulated", row.dqi_simulated),
        ("degree_l_optimum", row.degree_l_optimum),
        ("qfs_baseline", row.qfs_baseline),
    ]
    if row.formula_exact:
        measured.append(("dqi_predicted", row.dqi_predicted))
    if row.classical_optimum is not None:
        for name, val in measured:
            if val is not None and val > row.classical_optimum + _TOL:
                raise ValueError(
                    f"{name} = {val} exceeds the exact optimum "
                    f"{row.classical_optimum}"
                )
    # The m - mu guarantee counts edges; it does not apply to weighted cuts.
    if not weighted and row.spanning_tree_cut is not None and row.mu is not None:
        if row.spanning_tree_cut < row.m - row.mu:
            raise ValueError(
                f"spanning-tree cut {row.spanning_tree_cut} below the "
                f"m - mu bound {row.m - row.mu}"
            )


def build_row(spec: str, graph: Graph, *,
              cap: int = DEFAULT_ANALYSIS_CAP,
              max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET,
              max_fpt_exponent: int = DEFAULT_FPT_EXPONENT) -> ComparisonRow:
    """Compute every column the budgets allow; errors land in the row."""
    row = ComparisonRow(spec=spec, n=graph.n, m=graph.m)
    times = row.timings
    try:
        t0 = time.perf_counter()
        g = girth(graph)
        times["girth"] = time.perf_counter() - t0
        row.girth = int(g.value) if g.finite else "inf"
        cert = mu_certificate(graph, precomputed_girth=g)
        row.mu = cert.mu
        if not cert.bound_check:
            raise AssertionError("non-tree edge count disagrees with mu")

        if graph.m >= 1:
            t0 = time.perf_counter()
            dqi = plan(graph, cap=cap, precomputed_girth=g)
            times["plan"] = time.perf_counter() - t0
            row.l = dqi.l
            row.lambda_max = dqi.lambda_max
            row.dqi_predicted = dqi.predicted_expected_cut
            row.formula_exact = dqi.formula_exact

            enumerable = (1 << max(graph.n - 1, 0)) <= max_assignments
            if enumerable:
                t0 = time.perf_counter()
                row.dqi_simulated = dqi_expectation_exact(
                    graph, dqi.coeffs, max_assignments).expected_cut
                row.degree_l_optimum, _ = optimize_exact(
                    graph, dqi.l, max_assignments)
                row.qfs_baseline = qfs_baseline_expectation(
                    graph, max_assignments)
                times["simulate"] = time.perf_counter() - t0
                if not dqi.formula_exact:
                    row.prediction_deficit = (
                        row.dqi_predicted - row.dqi_simulated)

        t0 = time.perf_counter()
        if 2 * cyclomatic(graph) <= max_fpt_exponent:
            result = fpt_maxcut(graph, max_exponent=max_fpt_exponent)
        elif (1 << max(graph.n - 1, 0)) <= max_assignments:
            result = brute_force_maxcut(graph, max_assignments)
        else:
            result = None
        if result is not None:
            row.classical_optimum = result.value
            row.classical_method = result.method
        times["classical"] = time.perf_counter() - t0

        row.spanning_tree_cut = spanning_tree_cut(graph).value

        t0 = time.perf_counter()
        part = tree_partition(graph, precomputed_girth=g)
        row.tree_partition_t = part.t
        row.tree_partition_degenerate = part.degenerate
        times["partition"] = time.perf_counter() - t0

        _validate(row, weighted=graph.weights is not None)
    except (BudgetError, ValueError, AssertionError) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def rows_to_csv(rows, config_json: Optional[str] = None) -> str:
    """Fixed-column CSV; the run configuration rides in a leading comment."""
    buf = io.StringIO()
    if config_json is not None:
        buf.write(f"# config: {config_json}\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(getattr(row, c)) for c in CSV_COLUMNS) + "\n")
    return buf.getvalue()
