"""Score equations of the Gaussian log-likelihood for a model ring.

For each parameter the score is ``-d(det Sigma) - det Sigma * d tr(S Sigma^{-1})``;
its numerator is kept after clearing denominators.  The resulting ideal has
to be saturated by everything that must not vanish (the numerator of det Sigma
and the denominators of Sigma).

Two independent routes compute that saturation.  The Rabinowitsch route adds
``t * witness - 1`` to the numerators and contracts.  The inverse route
rewrites the scores as low-degree polynomials in the parameters plus
auxiliary entries of K^{-1} and Psi^{-1} and contracts that ideal instead; it
is much faster on graphs whose Sigma has large denominators and is the
default.  Both give the same reduced basis.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property


from .groebner import GroebnerBasis, fglm_contract, groebner
from .model import ModelRing
from .symbolic import Polynomial, RationalFunction, RFMatrix, Var, to_mpq

__all__ = ["ScoreSystem", "score_equations", "saturate", "saturate_inverse", "inverse_system", "gradient_and_hessian", "InputError", "rationalize_matrix"]

log = logging.getLogger(__name__)


class InputError(ValueError):
    """Malformed sample covariance input."""


def rationalize_matrix(S) -> list:
    """Exact rational copy of a square matrix (floats read by their decimal form)."""
    rows = [list(r) for r in S]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("covariance matrix must be square")
    Q = [[to_mpq(x) for x in r] for r in rows]
    for i in range(n):
        for j in range(i + 1, n):
            if Q[i][j] != Q[j][i]:
                raise InputError(f"covariance matrix is not symmetric at ({i + 1},{j + 1})")
    return Q


@dataclass
class ScoreSystem:
    """Score-equation ideal of one model and one sample covariance matrix.

    ``polynomials`` generate the saturated ideal (they form its reduced
    grevlex Groebner basis); ``raw`` holds the per-parameter numerators before
    saturation.
    """

    ring: ModelRing
    S: list
    vars: list
    polynomials: list
    raw: list
    sigma: RFMatrix
    denominator_witness: Polynomial
    witness_factors: list
    basis: GroebnerBasis | None = field(default=None, repr=False)
    saturated: bool = True

    @cached_property
    def trace_term(self) -> RationalFunction:
        return trace_s_omega(self.ring, self.S)

    @cached_property
    def gradient(self) -> list:
        grad, _ = gradient_and_hessian(self, hessian=False)
        return grad

    @cached_property
    def hessian(self) -> list:
        _, hess = gradient_and_hessian(self)
        return hess

    def groebner(self) -> GroebnerBasis:
        if self.basis is None:
            self.basis = groebner(self.polynomials, self.vars)
        return self.basis

    def dimension(self) -> int:
        return self.groebner().dimension()

    def degree(self) -> int:
        return self.groebner().degree()

    def counts_by_degree(self) -> dict:
        out: dict = {}
        for p in self.polynomials:
            out[p.degree()] = out.get(p.degree(), 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self, with_invariants: bool = True) -> dict:
        d = {
            "variables": [str(v) for v in self.vars],
            "generators": [str(p) for p in self.polynomials],
            "saturated": self.saturated,
            "counts_by_degree": {str(k): v for k, v in self.counts_by_degree().items()},
        }
        if with_invariants:
            d["dimension"] = self.dimension()
            d["degree"] = self.degree()
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def trace_s_omega(r: ModelRing, S) -> RationalFunction:
    """tr(S Sigma^{-1}) as a rational function."""
    omega = r.concentration
    acc = RationalFunction()
    m = r.m
    for i in range(m):
        for j in range(m):
            s = S[i][j]
            if s and not omega[i, j].is_zero():
                acc = acc + omega[i, j] * s
    return acc


def _witness(r: ModelRing) -> tuple[Polynomial, list]:
    """Primitive factors of num(det Sigma) and of the Sigma denominators, deduplicated."""
    factors: list = []

    def add(p: Polynomial):
        if p.is_constant():
            return
        _, p = p.primitive()
        for q in factors:
            if q == p:
                return
        factors.append(p)

    det = r.det_sigma
    add(det.num)
    for row in r.sigma:
        for x in row:
            for f, _ in x.den:
                add(f)
    # drop a factor that is a multiple of another one (repeated factors)
    changed = True
    while changed:
        changed = False
        for a in range(len(factors)):
            for b in range(len(factors)):
                if a != b and factors[b].degree() > factors[a].degree():
                    q = factors[b].exact_div(factors[a])
                    if q is not None:
                        factors[b] = q if not q.is_constant() else None
                        changed = True
                        break
            if changed:
                break
        factors = [f for f in factors if f is not None]
        if changed:
            factors = [f.primitive()[1] for f in factors]
    w = Polynomial.const(1)
    for f in factors:
        w = w * f
    return w, factors


def score_numerators(r: ModelRing, S) -> list:
    """Numerators of the per-parameter scores, primitive over the integers."""
    det = r.det_sigma
    tr = trace_s_omega(r, S)
    out = []
    for v in r.variables:
        f = -det.diff(v) - det * tr.diff(v)
        f = f.reduced()
        num = f.num
        if num.is_zero():
            out.append(num)
            continue
        _, num = num.primitive()
        out.append(num)
    return out


def _pmat(n: int, m: int | None = None) -> list:
    return [[Polynomial() for _ in range(n if m is None else m)] for _ in range(n)]


def _pmul(X: list, Y: list) -> list:
    out = _pmat(len(X), len(Y[0]) if Y else 0)
    for i, row in enumerate(X):
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in enumerate(Y[k]):
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return out


def _ptrans(X: list) -> list:
    return [list(r) for r in zip(*X)]


def inverse_system(r: ModelRing, S) -> tuple[list, list]:
    """Polynomial score equations with auxiliary entries of K^{-1} and Psi^{-1}.

    With M = I - Lambda, A = K^{-1}, Phi = Psi^{-1} and C = M^T S M the
    log-likelihood is log det Omega - tr(S Omega) for
    Omega = M diag(K, Phi) M^T, and its partial derivatives become

    * k_ij:  (A - C_UU)_ij
    * l_ij:  (diag(K, Phi) M^T S)_ji
    * p_ij:  (Phi - Phi C_WW Phi)_ij

    up to a factor 2 off the diagonal.  Adding K A = I and Psi Phi = I gives an
    ideal whose contraction to the model parameters is the score ideal
    saturated by det K * det Psi.  Returns ``(polynomials, aux_variables)``.
    """
    m = r.m
    U, W = r.u_index, r.w_index
    Sq = [[to_mpq(x) for x in row] for row in S]
    M = _pmat(m)
    for i in range(m):
        M[i][i] = Polynomial.const(1)
    for v in r.l_vars:
        M[v.i - 1][v.j - 1] = -Polynomial.var(v)
    Sp = [[Polynomial.const(x) for x in row] for row in Sq]
    C = _pmul(_pmul(_ptrans(M), Sp), M)

    def sym_aux(name, idx):
        n = len(idx)
        X = _pmat(n)
        out = []
        for a in range(n):
            for b in range(a, n):
                v = Var(f"{name}_({idx[a] + 1},{idx[b] + 1})")
                out.append(v)
                X[a][b] = X[b][a] = Polynomial.var(v)
        return X, out

    def block(Mat, idx):
        return [[Mat[a][b] for b in idx] for a in idx]

    def as_poly(R):
        return [[x.num for x in row] for row in R]

    polys: list = []
    aux: list = []
    Binv = _pmat(m)
    if U:
        A, av = sym_aux("ainv", U)
        aux += av
        K = as_poly(r.K)
        for a, row in enumerate(_pmul(K, A)):
            for b, x in enumerate(row):
                polys.append(x - 1 if a == b else x)
        pos = {u: k for k, u in enumerate(U)}
        for v in r.k_vars:
            a, b = pos[v.i - 1], pos[v.j - 1]
            polys.append(A[a][b] - C[v.i - 1][v.j - 1])
        for a, ia in enumerate(U):
            for b, ib in enumerate(U):
                Binv[ia][ib] = K[a][b]
    if W:
        Phi, pv = sym_aux("pinv", W)
        aux += pv
        Psi = as_poly(r.Psi)
        for a, row in enumerate(_pmul(Psi, Phi)):
            for b, x in enumerate(row):
                polys.append(x - 1 if a == b else x)
        R = _pmul(_pmul(Phi, block(C, W)), Phi)
        pos = {w: k for k, w in enumerate(W)}
        for v in r.p_vars:
            a, b = pos[v.i - 1], pos[v.j - 1]
            polys.append(Phi[a][b] - R[a][b])
        for a, ia in enumerate(W):
            for b, ib in enumerate(W):
                Binv[ia][ib] = Phi[a][b]
    if r.l_vars:
        L = _pmul(_pmul(Binv, _ptrans(M)), Sp)
        for v in r.l_vars:
            polys.append(L[v.j - 1][v.i - 1])
    polys = [q.primitive()[1] for q in polys if not q.is_zero()]
    return polys, aux


def saturate(gens: list, witness: Polynomial, vars_: list, method: str = "fglm", max_pairs=200_000) -> GroebnerBasis:
    """Reduced grevlex basis of (gens) : witness^infinity in the ring of ``vars_``.

    Both routes start from the ideal gens + (t * witness - 1).  ``"eliminate"``
    computes an elimination basis for t and keeps the t-free part.
    ``"fglm"`` computes a grevlex basis with t last and, when that ideal is
    zero-dimensional, contracts it to ``vars_`` by linear algebra on normal
    forms, falling back to elimination otherwise.
    """
    t = Var("t_sat")
    aux = Polynomial.var(t) * witness - 1
    if method == "fglm":
        gb = groebner(gens + [aux], vars_ + [t], max_pairs=max_pairs)
        log.debug("rabinowitsch grevlex: %s", gb.stats)
        if gb.is_unit() or gb.dimension() == 0:
            return fglm_contract(gb, vars_)
    elif method != "eliminate":
        raise ValueError(f"unknown saturation method {method!r}")
    return contract(gens + [aux], [t], vars_, max_pairs)


def contract(polys: list, drop: list, keep: list, max_pairs=200_000) -> GroebnerBasis:
    """Reduced grevlex basis of (polys) intersected with Q[keep], by elimination."""
    gb = groebner(polys, drop + keep, eliminate=len(drop), max_pairs=max_pairs)
    log.debug("elimination: %s", gb.stats)
    kept = [g for g in gb.generators if not (g.variables() & set(drop))]
    return groebner(kept, keep, max_pairs=max_pairs)


def saturate_inverse(r: ModelRing, S, max_pairs=200_000) -> GroebnerBasis:
    """Saturated score ideal through the auxiliary-inverse system."""
    polys, aux = inverse_system(r, S)
    vars_ = list(r.variables)
    gb = groebner(polys, vars_ + aux, max_pairs=max_pairs)
    log.debug("inverse system: %s", gb.stats)
    if gb.is_unit() or gb.dimension() == 0:
        return fglm_contract(gb, vars_)
    return contract(polys, aux, vars_, max_pairs)


def score_equations(
    r: ModelRing, S, saturate_ideal: bool = True, method: str = "inverse", max_pairs: int | None = 200_000
) -> ScoreSystem:
    """Build the (saturated) score-equation system for covariance matrix S.

    ``method`` picks the saturation route: ``"inverse"`` (auxiliary inverse
    entries, the default), ``"fglm"`` or ``"eliminate"`` (both Rabinowitsch,
    see :func:`saturate`).  All three give the same reduced basis.
    """
    S = rationalize_matrix(S)
    if len(S) != r.m:
        raise InputError(f"covariance matrix is {len(S)}x{len(S)}, graph has {r.m} vertices")
    raw = score_numerators(r, S)
    witness, factors = _witness(r)
    vars_ = list(r.variables)
    gens = [p for p in raw if not p.is_zero()]
    if saturate_ideal and method == "inverse":
        basis = saturate_inverse(r, S, max_pairs=max_pairs)
    elif saturate_ideal and not witness.is_constant():
        basis = saturate(gens, witness, vars_, method=method, max_pairs=max_pairs)
    else:
        basis = groebner(gens, vars_, max_pairs=max_pairs)
    return ScoreSystem(
        ring=r,
        S=S,
        vars=vars_,
        polynomials=list(basis.generators),
        raw=raw,
        sigma=r.sigma,
        denominator_witness=witness,
        witness_factors=factors,
        basis=basis,
        saturated=saturate_ideal,
    )


def gradient_and_hessian(sys: ScoreSystem, hessian: bool = True):
    """Exact gradient of -log det Sigma - tr(S Sigma^{-1}) and its Jacobian.

    Returned as a 1 x d RFMatrix and a d x d RFMatrix in ``sys.vars`` order.
    """
    r = sys.ring
    det = r.det_sigma
    inv_det = det.inverse()
    tr = sys.trace_term
    grad = [-(det.diff(v) * inv_det) - tr.diff(v) for v in sys.vars]
    g = RFMatrix([grad])
    if not hessian:
        return g, None
    H = [[ga.diff(vb) for vb in sys.vars] for ga in grad]
    return g, RFMatrix(H)
