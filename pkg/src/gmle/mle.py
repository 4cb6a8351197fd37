"""Maximum likelihood estimation by enumerating all critical points.

The pipeline: model ring, score equations, Groebner basis, complex solutions,
real ones, Sigma at each, positive-definite filter, rank by log-likelihood,
classify by Hessian inertia.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .graphs import MixedGraph
from .linalg import symmetric_eigvals
from .model import build_model_ring, sample_covariance
from .score import ScoreSystem, score_equations
from .solve import DEDUP_TOL, REAL_TOL, PositiveDimensionalError, zero_dim_solve
from .symbolic import PoleError, to_mpq

__all__ = [
    "MLEResult",
    "CriticalPoint",
    "DomainError",
    "is_positive_definite",
    "log_lik",
    "classify_eigenvalues",
    "classify_critical_points",
    "solver_mle",
    "ml_degree",
    "random_covariance",
    "gradient_residual",
    "refine_exact",
]

log = logging.getLogger(__name__)

HESSIAN_REL_TOL = 1e-13
TIE_TOL = 1e-9


class DomainError(ValueError):
    """Input outside the domain of a function (e.g. a non-PD covariance)."""


def _as_float_matrix(M) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M], dtype=float)


def default_pd_tol(M) -> float:
    M = np.asarray(M, dtype=float)
    m = M.shape[0]
    return 1e-9 * abs(np.trace(M)) / m if m else 0.0


def is_positive_definite(M, tol: float | None = None) -> bool:
    """Minimum eigenvalue above ``tol`` (default 1e-9 * trace/m).

    Raises :class:`DomainError` if M is not symmetric within the tolerance.
    """
    M = _as_float_matrix(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("matrix must be square")
    if tol is None:
        tol = default_pd_tol(M)
    asym = np.max(np.abs(M - M.T), initial=0.0)
    if asym > max(tol, 1e-12 * np.max(np.abs(M), initial=0.0)):
        raise DomainError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    if M.shape[0] == 0:
        return True
    w = symmetric_eigvals((M + M.T) / 2)
    return bool(w[0] > tol)


def log_lik(S, Sigma, tol: float | None = None) -> float:
    """-log det Sigma - tr(S Sigma^{-1}) for a positive-definite Sigma."""
    Sigma = _as_float_matrix(Sigma)
    S = _as_float_matrix(S)
    if not is_positive_definite(Sigma, tol):
        raise DomainError("Sigma is not positive definite")
    sign, logdet = np.linalg.slogdet(Sigma)
    return float(-logdet - np.trace(np.linalg.solve(Sigma, S)))


def classify_eigenvalues(w, rel_tol: float = HESSIAN_REL_TOL) -> str:
    """LocalMax / LocalMin / Saddle / Degenerate from Hessian eigenvalues."""
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return "Degenerate"
    eps = rel_tol * np.max(np.abs(w))
    if np.any(np.abs(w) <= eps):
        return "Degenerate"
    if np.all(w < 0):
        return "LocalMax"
    if np.all(w > 0):
        return "LocalMin"
    return "Saddle"


def _exact_point(sys: ScoreSystem, x) -> dict:
    return {v: a if isinstance(a, mpq) else mpq(float(a)) for v, a in zip(sys.vars, x)}


def gradient_residual(sys: ScoreSystem, x) -> float:
    """Max-norm of the exact gradient at a real point, evaluated in rationals.

    ``x`` may hold floats (read exactly) or ``mpq`` values.
    """
    if not sys.vars:
        return 0.0
    g = sys.gradient.evaluate(_exact_point(sys, x))
    return float(max(abs(a) for a in g[0]))


def _solve_rational(A: list, b: list) -> list:
    """Gauss-Jordan elimination over the rationals; A must be nonsingular."""
    n = len(b)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular Hessian")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [a * inv for a in M[col]]
        for r in range(n):
            f = M[r][col]
            if r != col and f != 0:
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [row[n] for row in M]


def refine_exact(sys: ScoreSystem, x, steps: int = 1) -> list:
    """Newton steps on the exact gradient carried out in rational arithmetic.

    Starting from the double-precision point, one step lands well beyond
    double precision, which is what makes a gradient residual of 1e-8
    checkable for badly scaled critical points.
    """
    pt = _exact_point(sys, x)
    xs = [pt[v] for v in sys.vars]
    for _ in range(steps):
        g = sys.gradient.evaluate(pt)[0]
        H = sys.hessian.evaluate(pt)
        step = _solve_rational([list(r) for r in H], [-a for a in g])
        xs = [a + d for a, d in zip(xs, step)]
        pt = dict(zip(sys.vars, xs))
    return xs


@dataclass
class CriticalPoint:
    parameters: np.ndarray
    covariance: np.ndarray
    positive_definite: bool
    log_lik: float | None
    classification: str
    hessian_eigenvalues: np.ndarray | None = None
    gradient_residual: float | None = None
    diagnostic: str | None = None

    def to_dict(self) -> dict:
        return {
            "parameterVector": [float(a) for a in self.parameters],
            "covariance": self.covariance.tolist(),
            "positiveDefinite": self.positive_definite,
            "logLik": self.log_lik,
            "classification": self.classification,
            "hessianEigenvalues": None if self.hessian_eigenvalues is None else [float(a) for a in self.hessian_eigenvalues],
            "gradientResidual": self.gradient_residual,
            "diagnostic": self.diagnostic,
        }


def classify_critical_points(sys: ScoreSystem, real_sols: list, rel_tol: float = HESSIAN_REL_TOL) -> list:
    """Classify each real solution from the eigenvalues of the exact Hessian.

    Returns ``(classification, eigenvalues or None, diagnostic or None)`` per point.
    The Hessian is evaluated exactly at the rational number nearest in double
    precision to each point, so its only error is the point's own.
    """
    out = []
    for x in real_sols:
        try:
            H = _as_float_matrix(sys.hessian.evaluate(_exact_point(sys, x)))
        except PoleError as exc:
            out.append(("Degenerate", None, f"Hessian has a pole at this point: {exc}"))
            continue
        w = symmetric_eigvals((H + H.T) / 2)
        out.append((classify_eigenvalues(w, rel_tol), w, None))
    return out


@dataclass
class MLEResult:
    """Outcome of :func:`solver_mle`.

    ``max_log_lik`` is None when no real critical point is positive definite;
    ``diagnostic`` then says why.
    """

    max_log_lik: float | None
    optima: list
    ml_degree: int
    critical_points: list
    variables: list = field(default_factory=list)
    n_solutions: int = 0
    log_lik_scale: float = 1.0
    diagnostic: str | None = None
    timings: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "maxLogLik": self.max_log_lik,
            "optima": [np.asarray(M).tolist() for M in self.optima],
            "mlDegree": self.ml_degree,
            "variables": list(self.variables),
            "numberOfSolutions": self.n_solutions,
            "logLikScale": self.log_lik_scale,
            "criticalPoints": [c.to_dict() for c in self.critical_points],
            "diagnostic": self.diagnostic,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _covariance_input(data, sample_data: bool, samples_in: str):
    if sample_data:
        rows = [list(r) for r in data]
        n = len(rows) if samples_in == "rows" else (len(rows[0]) if rows else 0)
        S = sample_covariance(rows, samples_in)
        if isinstance(S, np.ndarray):
            S = [[to_mpq(float(x)) for x in r] for r in S]
        return S, n / 2
    return data, 1.0


def solver_mle(
    g: MixedGraph,
    data,
    sample_data: bool = False,
    samples_in: str = "rows",
    pd_tol: float | None = None,
    real_tol: float = REAL_TOL,
    dedup_tol: float = DEDUP_TOL,
    hessian_tol: float = HESSIAN_REL_TOL,
    seed: int = 0,
) -> MLEResult:
    """Global MLE of Sigma over the model of ``g``.

    ``data`` is a covariance matrix, or a data matrix when ``sample_data`` is
    true; in that case the reported log-likelihoods carry the factor n/2.
    """
    timings = {}
    t0 = time.perf_counter()
    ring = build_model_ring(g)
    S, scale = _covariance_input(data, sample_data, samples_in)
    sys = score_equations(ring, S)
    timings["score_equations"] = time.perf_counter() - t0
    gb = sys.groebner()
    dim = gb.dimension()
    if dim != 0:
        raise PositiveDimensionalError(dim, gb.degree()) if dim > 0 else DomainError(
            "the score equations have no complex solution"
        )
    degree = gb.degree()
    t0 = time.perf_counter()
    sols = zero_dim_solve(gb, seed=seed, dedup_tol=dedup_tol, real_tol=real_tol)
    timings["solve"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    reals = [s.coords.real.copy() for s in sols if s.is_real]
    Sf = _as_float_matrix(sys.S)
    classes = classify_critical_points(sys, reals, hessian_tol)
    points = []
    for x, (cls, w, diag) in zip(reals, classes):
        Sigma = ring.sigma_at(x)
        Sigma = (Sigma + Sigma.T) / 2
        pd = is_positive_definite(Sigma, pd_tol)
        ll = scale * log_lik(Sf, Sigma, pd_tol) if pd else None
        try:
            res = gradient_residual(sys, refine_exact(sys, x))
        except (ZeroDivisionError, PoleError):
            res = None
        points.append(CriticalPoint(x, Sigma, pd, ll, cls, w, res, diag))
    timings["classify"] = time.perf_counter() - t0
    pd_points = [p for p in points if p.positive_definite]
    if not pd_points:
        return MLEResult(
            None, [], degree, points, [ring.label(v) for v in ring.variables], len(sols), scale,
            diagnostic="no real critical point is positive definite", timings=timings,
        )
    best = max(p.log_lik for p in pd_points)
    optima = [p.covariance for p in pd_points if best - p.log_lik <= TIE_TOL]
    return MLEResult(
        best, optima, degree, points, [ring.label(v) for v in ring.variables], len(sols), scale,
        timings=timings,
    )


def random_covariance(m: int, seed: int) -> list:
    """Exact generic PD matrix (1/(m+1)) X X^T, X an m x (m+1) integer matrix in [-100, 100]."""
    rng = np.random.default_rng(seed)
    X = rng.integers(-100, 101, size=(m, m + 1)).tolist()
    return [[mpq(sum(a * b for a, b in zip(X[i], X[j])), m + 1) for j in range(m)] for i in range(m)]


def ml_degree(g: MixedGraph, seed: int = 0) -> int:
    """Degree of the score ideal for seeded random data, if it is zero-dimensional."""
    ring = build_model_ring(g)
    sys = score_equations(ring, random_covariance(ring.m, seed))
    gb = sys.groebner()
    dim = gb.dimension()
    if dim > 0:
        raise PositiveDimensionalError(dim, gb.degree())
    return gb.degree()
