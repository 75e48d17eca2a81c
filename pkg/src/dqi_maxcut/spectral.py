"""Spectral analysis behind the DQI expectation formula.

The expected cut of the sampler, with optimal degree-l symmetric-polynomial
coefficients, is (m + lambda_max(A)) / 2 where A is the (l+1) x (l+1)
symmetric tridiagonal matrix with zero diagonal and off-diagonal entries
a_k = sqrt(k (m - k + 1)).  The eigensolver is a dependency-free Sturm
bisection plus inverse iteration, robust up to l ~ 10^4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Girth, Graph, girth

_REL_TOL = 1e-13
_RESIDUAL_TOL = 1e-11  # target ||Au - lu|| / ||A||; the contract allows 1e-10
DEFAULT_ANALYSIS_CAP = 10_000


@dataclass(frozen=True)
class TridiagonalSpec:
    """Zero-diagonal symmetric tridiagonal matrix, given by its off-diagonal."""

    m: int
    l: int
    offdiag: tuple[float, ...]  # a_1 .. a_l

    @classmethod
    def for_cut_counts(cls, m: int, l: int) -> "TridiagonalSpec":
        """The DQI matrix: a_k = sqrt(k (m - k + 1)) for 1 <= k <= l <= m."""
        if not 0 <= l <= m:
            raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")
        return cls(m, l, tuple(math.sqrt(k * (m - k + 1)) for k in range(1, l + 1)))


@dataclass(frozen=True)
class HermiteComparator:
    """Comparator matrix with off-diagonal sqrt(1)..sqrt(l).

    Divided by sqrt(2) it is the Jacobi matrix of the monic Hermite
    recurrence, so its top eigenvalue is sqrt(2) times the largest zero of
    the degree-(l+1) Hermite polynomial.
    """

    l: int
    offdiag: tuple[float, ...]

    @classmethod
    def of_degree(cls, l: int) -> "HermiteComparator":
        if l < 0:
            raise ValueError("need l >= 0")
        return cls(l, tuple(math.sqrt(k) for k in range(1, l + 1)))


@dataclass(frozen=True)
class DqiPlan:
    """Everything the pipeline derives from a graph before sampling."""

    m: int
    girth: Girth
    l: int
    cap: int
    lambda_max: float
    eigvec: tuple[float, ...]           # unit Perron vector u_0..u_l
    coeffs: tuple[float, ...]           # mu_0..mu_l, scaled to max |mu_k| = 1
    predicted_expected_cut: float
    formula_exact: bool                 # girth infinite or g >= 2l + 2

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "girth": int(self.girth.value) if self.girth.finite else "inf",
            "girth_witness": list(self.girth.witness) if self.girth.witness else None,
            "l": self.l,
            "cap": self.cap,
            "lambda_max": self.lambda_max,
            "eigvec": list(self.eigvec),
            "coeffs": list(self.coeffs),
            "predicted_expected_cut": self.predicted_expected_cut,
            "formula_exact": self.formula_exact,
        }


def choose_l(g: Girth, m: int, cap: int) -> int:
    """Degree selection: floor((g-1)/2) for finite girth, else m, capped."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if g.finite:
        return min((int(g.value) - 1) // 2, cap)
    return min(m, cap)


def _count_below(offdiag_sq, shift: float) -> int:
    """Sturm count: eigenvalues of the zero-diagonal matrix strictly below shift."""
    count = 0
    q = -shift
    if q < 0.0:
        count += 1
    for e2 in offdiag_sq:
        if q == 0.0:
            q = -1e-300
        q = -shift - e2 / q
        if q < 0.0:
            count += 1
    return count


def _solve_shifted(offdiag, sigma: float, rhs):
    """Solve (A - sigma I) x = rhs, A zero-diagonal tridiagonal.

    Tridiagonal LU with partial pivoting (one fill-in band), stable for the
    near-singular shifts inverse iteration uses.
    """
    size = len(offdiag) + 1
    d = [-sigma] * size
    du = list(offdiag) + [0.0]
    du2 = [0.0] * size
    b = list(rhs)
    for i in range(size - 1):
        sub = offdiag[i]
        if abs(d[i]) >= abs(sub):
            piv = d[i] if d[i] != 0.0 else 1e-300
            fact = sub / piv
            d[i + 1] -= fact * du[i]
            b[i + 1] -= fact * b[i]
        else:
            fact = d[i] / sub
            d[i] = sub
            temp = d[i + 1]
            d[i + 1] = du[i] - fact * temp
            if i < size - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            du[i] = temp
            b[i], b[i + 1] = b[i + 1], b[i] - fact * b[i + 1]
    x = [0.0] * size
    piv = d[size - 1] if d[size - 1] != 0.0 else 1e-300
    x[size - 1] = b[size - 1] / piv
    if size > 1:
        piv = d[size - 2] if d[size - 2] != 0.0 else 1e-300
        x[size - 2] = (b[size - 2] - du[size - 2] * x[size - 1]) / piv
    for i in range(size - 3, -1, -1):
        piv = d[i] if d[i] != 0.0 else 1e-300
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / piv
    return x


def _matvec(offdiag, v):
    size = len(v)
    out = [0.0] * size
    for i in range(size - 1):
        a = offdiag[i]
        out[i] += a * v[i + 1]
        out[i + 1] += a * v[i]
    return out


def lambda_max_tridiag(spec) -> tuple[float, tuple[float, ...]]:
    """Largest eigenvalue and unit Perron eigenvector of a zero-diagonal
    symmetric tridiagonal matrix with positive off-diagonal entries.

    Bisection on Sturm sequence counts brackets lambda_max to relative
    precision ~1e-13; inverse iteration from the all-ones vector then
    recovers the eigenvector (entrywise positive: the matrix is an
    irreducible nonnegative matrix, and the shift sits above the spectrum,
    making the shifted inverse an entrywise-positive operator).
    """
    offdiag = spec.offdiag
    l = len(offdiag)
    if l == 0:
        return 0.0, (1.0,)
    if any(a <= 0 for a in offdiag):
        raise ValueError("off-diagonal entries must be positive")
    offdiag_sq = [a * a for a in offdiag]
    size = l + 1
    # Gershgorin upper bound and a principal-submatrix lower bound.
    hi = max(
        (offdiag[i - 1] if i else 0.0) + (offdiag[i] if i < l else 0.0)
        for i in range(size)
    )
    lo = max(offdiag)
    hi = hi * (1 + 4 * _REL_TOL) + 1e-300
    while hi - lo > _REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if _count_below(offdiag_sq, mid) == size:
            hi = mid
        else:
            lo = mid
    lam = 0.5 * (lo + hi)

    sigma = hi * (1 + 4 * _REL_TOL)  # strictly above the spectrum
    vec = [1.0 / math.sqrt(size)] * size
    best = None
    for _ in range(8):
        vec = _solve_shifted(offdiag, sigma, vec)
        norm = math.sqrt(math.fsum(x * x for x in vec))
        vec = [x / norm for x in vec]
        if vec[max(range(size), key=lambda i: abs(vec[i]))] < 0.0:
            vec = [-x for x in vec]
        av = _matvec(offdiag, vec)
        rayleigh = math.fsum(a * x for a, x in zip(av, vec))
        resid = math.sqrt(math.fsum((a - rayleigh * x) ** 2 for a, x in zip(av, vec)))
        if best is None or resid < best[0]:
            best = (resid, rayleigh, vec)
        if resid <= _RESIDUAL_TOL * lam:
            break
    _, rayleigh, vec = best
    # Rayleigh quotient of a converged iterate beats the bisection midpoint.
    lam = rayleigh if abs(rayleigh - lam) <= 4 * _REL_TOL * lam else lam
    return lam, tuple(vec)


def dqi_coefficients(u, m: int) -> tuple[float, ...]:
    """Symmetric-polynomial coefficients from the Perron vector.

    mu_k = (-1)^k u_k / sqrt(C(m, k)): the Dicke-amplitude relation
    inverted, with the alternating sign that makes the histogram-path
    expectation hit (m + lambda_max)/2 on girth >= 2l+2 instances.  The
    result is scale-free; it is normalized to max |mu_k| = 1, computed in
    log space so huge binomials cannot overflow.
    """
    logs = []
    for k, uk in enumerate(u):
        if uk <= 0.0:
            logs.append(-math.inf)
            continue
        log_binom = math.lgamma(m + 1) - math.lgamma(k + 1) - math.lgamma(m - k + 1)
        logs.append(math.log(uk) - 0.5 * log_binom)
    top = max(logs)
    if top == -math.inf:
        raise ValueError("eigenvector has no positive entries")
    return tuple(
        (-1.0 if k % 2 else 1.0) * math.exp(t - top) if t > -math.inf else 0.0
        for k, t in enumerate(logs)
    )


def predicted_expectation(m: int, lam: float) -> float:
    """Expected cut under the squared optimal polynomial: (m + lambda)/2."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    return 0.5 * (m + lam)


def hermite_residual(l: int) -> float:
    """Certify lambda_max(comparator)/sqrt(2) as a zero of Hermite H_{l+1}.

    Evaluates the physicists' Hermite recurrence at the computed point and
    returns |H_{l+1}| relative to the magnitude of the recurrence terms
    that should cancel there.
    """
    if l < 1:
        raise ValueError("need l >= 1")
    lam, _ = lambda_max_tridiag(HermiteComparator.of_degree(l))
    x = lam / math.sqrt(2.0)
    h_prev, h = 1.0, 2.0 * x
    for k in range(1, l + 1):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    # At a true zero the last recurrence step cancels 2x H_l against 2l H_{l-1};
    # |2x H_l| is the natural magnitude of the cancellation.
    return abs(h) / max(abs(2.0 * x * h_prev), 1e-300)


def enumeration_cap(m: int, max_subsets: int) -> int:
    """Largest l with sum_{k<=l} C(m, k) within the subset budget."""
    total = 0
    l = -1
    for k in range(m + 1):
        total += math.comb(m, k)
        if total > max_subsets:
            break
        l = k
    return max(l, 0)


def plan_with_degree(graph: Graph, g: Girth, l: int,
                     cap: int = DEFAULT_ANALYSIS_CAP) -> DqiPlan:
    """Assemble a plan for an explicitly chosen degree l."""
    if graph.m < 1:
        raise ValueError("need at least one edge")
    if not 0 <= l <= graph.m:
        raise ValueError(f"need 0 <= l <= m, got l={l}")
    lam, u = lambda_max_tridiag(TridiagonalSpec.for_cut_counts(graph.m, l))
    coeffs = dqi_coefficients(u, graph.m)
    exact = (not g.finite) or g.value >= 2 * l + 2
    return DqiPlan(
        m=graph.m, girth=g, l=l, cap=cap, lambda_max=lam, eigvec=u,
        coeffs=coeffs, predicted_expected_cut=predicted_expectation(graph.m, lam),
        formula_exact=exact,
    )


def plan(graph: Graph, cap: int = DEFAULT_ANALYSIS_CAP,
         precomputed_girth: Girth | None = None) -> DqiPlan:
    """Assemble the full analysis: girth, degree, eigenpair, coefficients,
    and the predicted expected cut with its exactness flag."""
    g = precomputed_girth if precomputed_girth is not None else girth(graph)
    return plan_with_degree(graph, g, choose_l(g, graph.m, cap), cap)
