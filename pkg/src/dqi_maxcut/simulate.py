"""Exact desk-scale simulation of the cut-sampling distributions.

Two independent paths compute the distribution a squared symmetric
polynomial induces over cuts:

* histogram path: enumerate assignments once to count N_j = #{z : h(z)=j},
  then evaluate the polynomial on cut classes via Krawtchouk values Q(j);
  the sampler's distribution is p_j proportional to N_j Q(j)^2;
* state-vector path: enumerate low-weight edge subsets, accumulate
  coefficient amplitudes on vertex-parity indices, and apply the
  fast Walsh-Hadamard transform to recover the polynomial's value on
  every assignment directly.

The two are algebraically identical (whether or not the parity map is
injective), so each serves as the other's oracle.  An exact optimizer over
degree-l coefficient vectors provides ground truth for the spectral
prediction.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import accumulate, combinations
from random import Random
from typing import Optional

import numpy as np

from .errors import BudgetError
from .graphs import Graph, cut_value
from .parity import vertex_masks

DEFAULT_ASSIGNMENT_BUDGET = 2 ** 25   # enumerated assignments, vertex 0 pinned
DEFAULT_SUBSET_BUDGET = 2 ** 26       # sum of C(m, k) for k <= l
DEFAULT_AMPLITUDE_BUDGET = 2 ** 24    # state-vector register size 2^n
_CHUNK = 2 ** 20


@dataclass(frozen=True)
class CutHistogram:
    """Exact counts N_j of assignments at each cut value j = 0..m."""

    counts: tuple[int, ...]
    n: int
    m: int

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class QProfile:
    """Value of the symmetric polynomial on any assignment with cut value j."""

    values: tuple[float, ...]


@dataclass(frozen=True)
class CutAssignment:
    """One side assignment: bit v = 1 puts vertex v on side 1."""

    bits: int
    n: int
    value: float

    def bitstring(self) -> str:
        return "".join("1" if (self.bits >> v) & 1 else "0" for v in range(self.n))


@dataclass(frozen=True)
class SimulationReport:
    """Distribution over cut values induced by a squared polynomial."""

    expected_cut: float
    distribution: dict[int, float]          # j -> probability, support only
    histogram: Optional[dict[int, int]]     # j -> N_j (histogram path)
    method: str
    samples: tuple[CutAssignment, ...] = ()
    amplitudes: Optional[tuple[float, ...]] = None

    def to_dict(self) -> dict:
        out = {
            "expected_cut": self.expected_cut,
            "method": self.method,
            "distribution": {str(j): p for j, p in sorted(self.distribution.items())},
            "histogram": (
                {str(j): c for j, c in sorted(self.histogram.items())}
                if self.histogram is not None else None
            ),
            "samples": [
                {"assignment": s.bitstring(), "cut_value": s.value}
                for s in self.samples
            ],
        }
        if self.amplitudes is not None:
            out["amplitudes"] = list(self.amplitudes)
        return out


def krawtchouk(k: int, j: int, m: int) -> int:
    """Binary Krawtchouk polynomial K_k(j; m), exact integer arithmetic.

    Value of the weight-k elementary symmetric polynomial on m signs of
    which j are -1: sum_i (-1)^i C(j, i) C(m - j, k - i).
    """
    if not (0 <= k <= m and 0 <= j <= m):
        raise ValueError("need 0 <= k, j <= m")
    lo = max(0, k - (m - j))
    hi = min(j, k)
    return sum(
        (-1) ** i * math.comb(j, i) * math.comb(m - j, k - i)
        for i in range(lo, hi + 1)
    )


def _chunk_cut_values(graph: Graph, lo: int, hi: int) -> np.ndarray:
    """Cut values for assignments lo..hi-1, encoding bits of vertices 1..n-1
    (vertex 0 pinned to side 0)."""
    x = np.arange(lo, hi, dtype=np.uint64)
    acc = np.zeros(hi - lo, dtype=np.int16)
    for u, v in graph.edges:
        if u == 0:
            acc += ((x >> np.uint64(v - 1)) & np.uint64(1)).astype(np.int16)
        else:
            acc += (((x >> np.uint64(u - 1)) ^ (x >> np.uint64(v - 1)))
                    & np.uint64(1)).astype(np.int16)
    return acc


def cut_histogram(graph: Graph,
                  max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET) -> CutHistogram:
    """Exact cut-size histogram by enumerating 2^(n-1) assignments and doubling.

    The global spin flip pairs every assignment with its complement at the
    same cut value, so vertex 0 can be pinned.
    """
    states = 1 << max(graph.n - 1, 0)
    if states > max_assignments:
        raise BudgetError("assignments", max_assignments, states)
    counts = np.zeros(graph.m + 1, dtype=np.int64)
    for lo in range(0, states, _CHUNK):
        hi = min(lo + _CHUNK, states)
        acc = _chunk_cut_values(graph, lo, hi)
        counts += np.bincount(acc, minlength=graph.m + 1)
    counts *= 2
    return CutHistogram(tuple(int(c) for c in counts), graph.n, graph.m)


def q_profile(coeffs, m: int) -> QProfile:
    values = []
    for j in range(m + 1):
        values.append(math.fsum(
            float(mu) * krawtchouk(k, j, m) for k, mu in enumerate(coeffs)
        ))
    return QProfile(tuple(values))


def _distribution_from_histogram(hist: CutHistogram, prof: QProfile):
    weights = [n_j * q * q for n_j, q in zip(hist.counts, prof.values)]
    total = math.fsum(weights)
    if total <= 0.0:
        raise ValueError(
            "degenerate coefficients: the polynomial vanishes on every "
            "attainable cut value"
        )
    dist = {j: w / total for j, w in enumerate(weights) if hist.counts[j] > 0}
    expected = math.fsum(j * p for j, p in dist.items())
    return expected, dist


def dqi_expectation_exact(graph: Graph, coeffs,
                          max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET
                          ) -> SimulationReport:
    """Histogram-path simulation: p_j proportional to N_j Q(j)^2."""
    hist = cut_histogram(graph, max_assignments)
    prof = q_profile(coeffs, graph.m)
    expected, dist = _distribution_from_histogram(hist, prof)
    histogram = {j: c for j, c in enumerate(hist.counts) if c > 0}
    return SimulationReport(expected, dist, histogram, "histogram")


def _fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard butterfly over 2^n reals."""
    size = a.size
    h = 1
    while h < size:
        b = a.reshape(size // (2 * h), 2, h)
        top = b[:, 0, :].copy()
        bot = b[:, 1, :]
        b[:, 0, :] = top + bot
        b[:, 1, :] = top - bot
        h *= 2
    return a


def _all_cut_values(graph: Graph) -> np.ndarray:
    """Cut value of every assignment x in [0, 2^n), bit v = vertex v."""
    size = 1 << graph.n
    out = np.zeros(size, dtype=np.int16)
    for lo in range(0, size, _CHUNK):
        hi = min(lo + _CHUNK, size)
        x = np.arange(lo, hi, dtype=np.uint64)
        acc = np.zeros(hi - lo, dtype=np.int16)
        for u, v in graph.edges:
            acc += (((x >> np.uint64(u)) ^ (x >> np.uint64(v)))
                    & np.uint64(1)).astype(np.int16)
        out[lo:hi] = acc
    return out


def subset_count(m: int, l: int) -> int:
    return sum(math.comb(m, k) for k in range(min(l, m) + 1))


def dqi_statevector(graph: Graph, coeffs, l: Optional[int] = None,
                    max_subsets: int = DEFAULT_SUBSET_BUDGET,
                    max_amplitudes: int = DEFAULT_AMPLITUDE_BUDGET,
                    keep_amplitudes: bool = False) -> SimulationReport:
    """State-vector simulation: accumulate coefficient amplitudes on parity
    indices, Hadamard-transform, square, normalize.

    Enumerates every edge subset of weight <= l with amplitude mu_|beta| at
    index f(beta); the transform then evaluates the polynomial on all 2^n
    assignments at once.  Agrees with the histogram path to ~1e-12 whether
    or not the parity map is injective.
    """
    if l is None:
        l = len(coeffs) - 1
    if len(coeffs) != l + 1:
        raise ValueError("need exactly l + 1 coefficients")
    size = 1 << graph.n
    if size > max_amplitudes:
        raise BudgetError("amplitudes", max_amplitudes, size)
    needed = subset_count(graph.m, l)
    if needed > max_subsets:
        raise BudgetError("subsets", max_subsets, needed)

    masks = vertex_masks(graph)
    amp = np.zeros(size, dtype=np.float64)
    amp[0] += float(coeffs[0])
    for k in range(1, min(l, graph.m) + 1):
        mu = float(coeffs[k])
        if mu == 0.0:
            continue
        for combo in combinations(masks, k):
            alpha = 0
            for mask in combo:
                alpha ^= mask
            amp[alpha] += mu
    values = _fwht_inplace(amp)          # values[x] = polynomial at assignment x
    weights = values * values
    total = float(weights.sum())
    if total <= 0.0:
        raise ValueError("degenerate coefficients: zero state")
    cut_vals = _all_cut_values(graph)
    mass = np.bincount(cut_vals, weights=weights, minlength=graph.m + 1)
    dist = {j: float(mass[j] / total) for j in range(graph.m + 1) if mass[j] > 0}
    expected = float((mass * np.arange(graph.m + 1)).sum() / total)
    amplitudes = None
    if keep_amplitudes:
        norm = math.sqrt(total)
        amplitudes = tuple(float(v) / norm for v in values)
    return SimulationReport(expected, dist, None, "statevector",
                            amplitudes=amplitudes)


def optimize_exact(graph: Graph, l: int,
                   max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET):
    """Best attainable expected cut over degree-l coefficient vectors.

    With phi(j) = (K_0(j), ..., K_l(j)) and the histogram weights, the
    expectation is a generalized Rayleigh quotient, maximized by the top
    eigenpair of C w = lambda D w where D = sum_j N_j phi phi^T and
    C = sum_j N_j j phi phi^T.  When D is singular the problem is solved on
    its range.  Returns (best_expectation, coefficients).
    """
    if not 0 <= l <= graph.m:
        raise ValueError(f"need 0 <= l <= m, got {l}")
    hist = cut_histogram(graph, max_assignments)
    phi = np.array(
        [[float(krawtchouk(k, j, graph.m)) for k in range(l + 1)]
         for j in range(graph.m + 1)]
    )
    n_j = np.array(hist.counts, dtype=np.float64)
    j_vals = np.arange(graph.m + 1, dtype=np.float64)
    d_mat = phi.T @ (n_j[:, None] * phi)
    c_mat = phi.T @ ((n_j * j_vals)[:, None] * phi)
    evals, evecs = np.linalg.eigh(d_mat)
    keep = evals > max(evals[-1], 0.0) * 1e-12
    if not keep.any():
        raise ValueError("empty histogram support")
    basis = evecs[:, keep] / np.sqrt(evals[keep])
    reduced = basis.T @ c_mat @ basis
    revals, revecs = np.linalg.eigh(reduced)
    best = float(revals[-1])
    w = basis @ revecs[:, -1]
    # Deterministic orientation and scale.
    lead = np.flatnonzero(np.abs(w) > 1e-12 * np.abs(w).max())
    if lead.size and w[lead[0]] < 0:
        w = -w
    w = w / np.abs(w).max()
    return best, tuple(float(x) for x in w)


def qfs_baseline_expectation(graph: Graph,
                             max_assignments: int = DEFAULT_ASSIGNMENT_BUDGET
                             ) -> float:
    """Expected cut when sampling proportional to the squared cut value:
    sum N_j j^3 / sum N_j j^2."""
    if graph.m == 0:
        raise ValueError("the cut polynomial vanishes on an edgeless graph")
    hist = cut_histogram(graph, max_assignments)
    num = sum(c * j ** 3 for j, c in enumerate(hist.counts))
    den = sum(c * j ** 2 for j, c in enumerate(hist.counts))
    return num / den


def sample_cuts(graph: Graph, report: SimulationReport, count: int,
                seed: int = 0) -> tuple[CutAssignment, ...]:
    """Draw assignments from a simulated distribution.

    Cut values are drawn i.i.d. from the report's distribution; an
    assignment attaining each drawn value is found by rejection against the
    recomputed cut value, uniform within the class.  Deterministic for a
    fixed seed.
    """
    if not report.distribution:
        raise ValueError("report carries no distribution")
    rng = Random(seed)
    support = sorted(report.distribution)
    cumulative = list(accumulate(report.distribution[j] for j in support))
    total = cumulative[-1]
    out = []
    for _ in range(count):
        j = support[bisect_left(cumulative, rng.random() * total)]
        while True:
            bits = rng.getrandbits(graph.n) if graph.n else 0
            if cut_value(graph, bits) == j:
                break
        out.append(CutAssignment(bits, graph.n, j))
    return tuple(out)
