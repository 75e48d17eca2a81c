"""Figure rendering for comparison sweeps.

Figures are written next to the delimited table: an expectation panel
(every cut-quality column across the family) and a spectral panel tracking
lambda_max against the sqrt(m l) comparator bound.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SERIES = (
    ("classical_optimum", "classical exact optimum", "o"),
    ("dqi_predicted", "DQI predicted (m+lambda)/2", "s"),
    ("dqi_simulated", "DQI simulated", "d"),
    ("degree_l_optimum", "degree-l optimum", "^"),
    ("qfs_baseline", "QFS baseline", "v"),
    ("spanning_tree_cut", "spanning-tree cut", "x"),
)


def render_comparison_figures(rows, out_base: str) -> list[str]:
    """Render the expectation and spectral panels; returns written paths."""
    written = []
    labels = [row.spec for row in rows]
    xs = list(range(len(rows)))

    fig, ax = plt.subplots(figsize=(max(6.0, 0.9 * len(rows) + 2.0), 4.5))
    for attr, label, marker in _SERIES:
        ys = [getattr(row, attr) for row in rows]
        if all(y is None for y in ys):
            continue
        ax.plot(xs, [float("nan") if y is None else y for y in ys],
                marker=marker, label=label, linewidth=1.2, markersize=4)
    half = [row.m / 2 for row in rows]
    ax.plot(xs, half, linestyle=":", color="gray", label="m/2 (random)")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("expected / exact cut")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = f"{out_base}_expectations.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    spectral = [
        (i, row) for i, row in enumerate(rows)
        if row.lambda_max is not None and row.l and row.m
    ]
    if spectral:
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ratio = [row.lambda_max / math.sqrt(row.m * row.l) for _, row in spectral]
        ax.plot([i for i, _ in spectral], ratio, marker="o", linewidth=1.2,
                markersize=4, label="lambda_max / sqrt(m l)")
        ax.axhline(2 * math.sqrt(2), linestyle="--", color="crimson",
                   label="2*sqrt(2) bound")
        ax.set_xticks([i for i, _ in spectral])
        ax.set_xticklabels([rows[i].spec for i, _ in spectral],
                           rotation=45, ha="right", fontsize=8)
        ax.set_ylabel("scaled top eigenvalue")
        ax.legend(fontsize=8)
        ax.grid(alpha=0.3)
        fig.tight_layout()
        path = f"{out_base}_lambda_scaling.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
