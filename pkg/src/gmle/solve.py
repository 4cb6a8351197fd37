"""Complex solutions of zero-dimensional polynomial systems.

The quotient ring R/I has the standard monomials of a Groebner basis as a
vector-space basis.  Multiplication by a generic linear form acts on it as a
matrix whose eigenvalues are the values of the form at the solutions; the left
eigenvectors are the evaluation vectors (b(p) for each standard monomial b),
which give the coordinates.  Every point is then polished by Newton steps on
the generators.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .groebner import GroebnerBasis
from .linalg import eigvals
from .symbolic import DimensionError, Polynomial

__all__ = [
    "SolutionPoint",
    "PositiveDimensionalError",
    "CompiledSystem",
    "zero_dim_solve",
    "real_solutions",
    "newton_refine",
]

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
DEDUP_TOL = 1e-8
REAL_TOL = 1e-9


class PositiveDimensionalError(DimensionError):
    """The ideal has positive dimension, so it has no finite solution list."""

    def __init__(self, dim: int, degree: int):
        super().__init__(
            f"the ideal of score equations has dimension {dim} > 0, so ML degree is not "
            f"well-defined. The degree of this ideal is {degree}."
        )
        self.dim = dim
        self.degree = degree


@dataclass
class SolutionPoint:
    coords: np.ndarray
    residual: float
    is_real: bool

    def real_part(self) -> np.ndarray:
        return self.coords.real.copy()

    def to_dict(self) -> dict:
        return {
            "coords": [{"re": float(z.real), "im": float(z.imag)} for z in self.coords],
            "residual": float(self.residual),
            "isReal": bool(self.is_real),
        }


class CompiledSystem:
    """Polynomials packed as (coefficient, exponent-matrix) arrays for fast evaluation.

    Each polynomial is scaled by its largest coefficient magnitude, so
    residuals are relative to the size of the coefficients.
    """

    def __init__(self, polys: list, variables: list):
        self.variables = list(variables)
        pos = {v: i for i, v in enumerate(self.variables)}
        n = len(self.variables)
        self.polys = []
        self.jac = []
        for p in polys:
            scale = max(abs(float(c)) for c in p.terms.values()) if not p.is_zero() else 1.0
            self.polys.append(self._pack(p, pos, n, scale))
            self.jac.append([self._pack(p.diff(v), pos, n, scale) for v in self.variables])

    @staticmethod
    def _pack(p: Polynomial, pos: dict, n: int, scale: float):
        if p.is_zero():
            return np.zeros(0), np.zeros((0, n), dtype=int)
        coef = np.array([float(c) / scale for c in p.terms.values()])
        E = np.zeros((len(coef), n), dtype=int)
        for r, mono in enumerate(p.terms):
            for v, k in mono:
                E[r, pos[v]] = k
        return coef, E

    @staticmethod
    def _eval(packed, x) -> complex:
        coef, E = packed
        if coef.size == 0:
            return 0.0
        return coef @ np.prod(np.power(x[None, :], E), axis=1)

    def values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return np.array([self._eval(p, x) for p in self.polys])

    def jacobian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return np.array([[self._eval(d, x) for d in row] for row in self.jac])

    def residual(self, x) -> float:
        v = self.values(x)
        return float(np.max(np.abs(v))) if v.size else 0.0


def newton_refine(system: CompiledSystem, x, tol: float = RESIDUAL_TOL, max_iter: int = 30):
    """Gauss-Newton steps (least squares on the Jacobian) until the residual settles.

    Returns the refined point and its residual; the best iterate is kept.
    """
    x = np.asarray(x, dtype=complex)
    best, best_res = x, system.residual(x)
    for _ in range(max_iter):
        J = system.jacobian(x)
        step = np.linalg.lstsq(J, -system.values(x), rcond=None)[0]
        x = x + step
        res = system.residual(x)
        if res < best_res:
            best, best_res = x, res
        small = np.max(np.abs(step)) <= 1e-15 * max(1.0, np.max(np.abs(x)))
        if (best_res <= tol * 1e-3) or small:
            break
    return best, best_res


def _multiplication_matrices(gb: GroebnerBasis):
    std = gb.standard_monomials()
    index = {e: i for i, e in enumerate(std)}
    n = len(gb.variables)
    D = len(std)
    mats = []
    for i in range(n):
        M = np.zeros((D, D))
        for j, e in enumerate(std):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f in index:
                M[index[f], j] = 1.0
            else:
                M[:, j] = [float(c) for c in gb.normal_form_vector(f, index)]
        mats.append(M)
    # coordinates of NF(x_i) for reading points off evaluation vectors
    coord = np.zeros((n, D))
    one = index[(0,) * n]
    for i in range(n):
        coord[i] = mats[i][:, one]
    return std, mats, coord, one


def _left_eigvec(A: np.ndarray, lam: complex) -> np.ndarray:
    """A vector v with v^T A ~ lam v^T, by two steps of inverse iteration."""
    D = A.shape[0]
    B = A.T - lam * np.eye(D)
    pert = 1e-10 * max(1.0, np.abs(A).max())
    B = B - pert * np.eye(D)
    rng = np.random.default_rng(12345)
    v = rng.normal(size=D) + 1j * rng.normal(size=D)
    for _ in range(3):
        try:
            v = np.linalg.solve(B, v)
        except np.linalg.LinAlgError:
            v = np.linalg.lstsq(B, v, rcond=None)[0]
        v /= np.linalg.norm(v)
    return v


def zero_dim_solve(
    gb: GroebnerBasis,
    system: list | None = None,
    seed: int = 0,
    dedup_tol: float = DEDUP_TOL,
    real_tol: float = REAL_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> list:
    """All distinct complex solutions of a zero-dimensional ideal.

    ``system`` (default: the basis generators) is the polynomial list used for
    Newton refinement and residual reporting.
    """
    dim = gb.dimension()
    if dim < 0:
        return []
    if dim > 0:
        raise PositiveDimensionalError(dim, gb.degree())
    std, mats, coord, one = _multiplication_matrices(gb)
    n = len(gb.variables)
    rng = np.random.default_rng(seed)
    c = rng.uniform(0.5, 1.5, size=n) * rng.choice([-1.0, 1.0], size=n)
    M = sum(ci * Mi for ci, Mi in zip(c, mats)) if n else np.zeros((1, 1))
    lams = eigvals(M)
    compiled = CompiledSystem(system if system is not None else gb.generators, gb.variables)
    points = []
    for lam in lams:
        v = _left_eigvec(M, lam)
        if abs(v[one]) < 1e-14:
            log.debug("eigenvector with vanishing constant coordinate skipped")
            continue
        x0 = coord @ v / v[one]
        x, res = newton_refine(compiled, x0, tol=residual_tol)
        if any(np.max(np.abs(x - p.coords)) <= dedup_tol * max(1.0, np.max(np.abs(x))) for p in points):
            continue
        points.append(SolutionPoint(x, res, bool(np.max(np.abs(x.imag), initial=0.0) <= real_tol)))
    if len(points) != len(std):
        log.info("found %d distinct points for %d standard monomials", len(points), len(std))
    return points


def real_solutions(sols: list, tol: float = REAL_TOL) -> list:
    """Real parts of the solutions whose imaginary parts are all within tol."""
    return [s.coords.real.copy() for s in sols if np.max(np.abs(s.coords.imag), initial=0.0) <= tol]


def solutions_to_json(sols: list, **kw) -> str:
    return json.dumps([s.to_dict() for s in sols], **kw)
