"""Parameter catalog and symbolic matrices K, Lambda, Psi, Sigma of a mixed graph.

Sigma = (I - Lambda)^{-T} diag(K^{-1}, Psi) (I - Lambda)^{-1}, with K indexed by
the U block, Psi by the W block, and all matrices indexed by the internal
vertex order 1..m (declared order, renumbered).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from gmpy2 import mpq

from .graphs import MixedGraph, Partition, partition_lmg
from .symbolic import Polynomial, RationalFunction, RFMatrix, Var, to_mpq

__all__ = ["ModelRing", "build_model_ring", "sample_covariance", "EmptyDataError"]


class EmptyDataError(ValueError):
    """Sample data with no observations."""


@dataclass
class ModelRing:
    """The Gaussian model of a loopless mixed graph, in symbolic form.

    ``graph`` is the user's graph; ``labels`` maps internal index (0-based) to
    the user's vertex label.  Parameter lists are in ring order: diagonal
    entries first, then edges.
    """

    graph: MixedGraph
    partition: Partition
    labels: tuple
    k_vars: list
    l_vars: list
    p_vars: list
    K: RFMatrix | None
    Lambda: RFMatrix
    Psi: RFMatrix | None
    _internal: MixedGraph = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def variables(self) -> list:
        return self.k_vars + self.l_vars + self.p_vars

    @property
    def n_params(self) -> int:
        return len(self.variables)

    @property
    def u_index(self) -> list:
        """Internal 0-based indices of U vertices."""
        return [self.labels.index(v) for v in self.partition.U]

    @property
    def w_index(self) -> list:
        return [self.labels.index(v) for v in self.partition.W]

    def label(self, v: Var) -> str:
        """Render a parameter with the user's vertex labels."""
        return f"{v.kind}_({self.labels[v.i - 1]},{self.labels[v.j - 1]})"

    @cached_property
    def path_matrix(self) -> RFMatrix:
        """(I - Lambda)^{-1}, a polynomial matrix since Lambda is nilpotent."""
        m = self.m
        A = RFMatrix.identity(m) - self.Lambda
        # forward substitution on the unit upper-triangular I - Lambda
        rows = [[RationalFunction() for _ in range(m)] for _ in range(m)]
        for j in range(m):
            rows[j][j] = RationalFunction.coerce(1)
            for i in range(j - 1, -1, -1):
                acc = RationalFunction()
                for t in range(i + 1, j + 1):
                    a = A[i, t]
                    if not a.is_zero() and not rows[t][j].is_zero():
                        acc = acc - a * rows[t][j]
                rows[i][j] = acc
        return RFMatrix(rows)

    def _block_diag(self, upper: RFMatrix | None, lower: RFMatrix | None) -> RFMatrix:
        B = [[RationalFunction() for _ in range(self.m)] for _ in range(self.m)]
        for blk, idx in ((upper, self.u_index), (lower, self.w_index)):
            if blk is None:
                continue
            for a, ia in enumerate(idx):
                for b, ib in enumerate(idx):
                    B[ia][ib] = blk[a, b]
        return RFMatrix(B)

    @cached_property
    def K_inverse(self) -> RFMatrix | None:
        return self.K.inverse() if self.K is not None else None

    @cached_property
    def Psi_inverse(self) -> RFMatrix | None:
        return self.Psi.inverse() if self.Psi is not None else None

    @cached_property
    def sigma(self) -> RFMatrix:
        """The covariance parametrization."""
        P = self.path_matrix
        B = self._block_diag(self.K_inverse, self.Psi)
        return P.T @ B @ P

    @cached_property
    def concentration(self) -> RFMatrix:
        """Sigma^{-1} = (I - Lambda) diag(K, Psi^{-1}) (I - Lambda)^T."""
        A = RFMatrix.identity(self.m) - self.Lambda
        B = self._block_diag(self.K, self.Psi_inverse)
        return A @ B @ A.T

    @cached_property
    def det_sigma(self) -> RationalFunction:
        """det Sigma = det Psi / det K, using det(I - Lambda) = 1."""
        d = RationalFunction.coerce(1)
        if self.Psi is not None:
            d = d * self.Psi.det()
        if self.K is not None:
            d = d / self.K.det()
        return d

    def sigma_at(self, theta) -> np.ndarray:
        """Numeric Sigma at a parameter vector (ring order), via numpy."""
        K, L, Psi = self.numeric_blocks(theta)
        m = self.m
        B = np.zeros((m, m), dtype=np.result_type(K if K is not None else 0.0, Psi if Psi is not None else 0.0, L))
        if K is not None:
            B[np.ix_(self.u_index, self.u_index)] = np.linalg.inv(K)
        if Psi is not None:
            B[np.ix_(self.w_index, self.w_index)] = Psi
        P = np.linalg.inv(np.eye(m) - L)
        return P.T @ B @ P

    def numeric_blocks(self, theta):
        """(K, Lambda, Psi) numeric arrays from a parameter vector."""
        theta = np.asarray(theta)
        dtype = complex if np.iscomplexobj(theta) else float
        vals = dict(zip(self.variables, theta))
        m = self.m
        L = np.zeros((m, m), dtype=dtype)
        for v in self.l_vars:
            L[v.i - 1, v.j - 1] = vals[v]
        K = Psi = None
        if self.K is not None:
            K = _fill_sym(len(self.u_index), self.k_vars, vals, self.u_index, dtype)
        if self.Psi is not None:
            Psi = _fill_sym(len(self.w_index), self.p_vars, vals, self.w_index, dtype)
        return K, L, Psi

    def assignment(self, theta) -> dict:
        return dict(zip(self.variables, theta))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.labels),
            "U": list(self.partition.U),
            "W": list(self.partition.W),
            "parameters": [self.label(v) for v in self.variables],
        }


def _fill_sym(n, variables, vals, index, dtype):
    pos = {v: k for k, v in enumerate(index)}
    M = np.zeros((n, n), dtype=dtype)
    for v in variables:
        a, b = pos[v.i - 1], pos[v.j - 1]
        M[a, b] = M[b, a] = vals[v]
    return M


def _sym_block(kind: str, verts: list, edges) -> tuple[list, RFMatrix | None]:
    """Symmetric matrix with diagonal variables and one variable per edge."""
    if not verts:
        return [], None
    diag = [Var(kind, v, v) for v in verts]
    off = sorted(Var(kind, a, b) for a, b in edges)
    n = len(verts)
    pos = {v: k for k, v in enumerate(verts)}
    rows = [[RationalFunction() for _ in range(n)] for _ in range(n)]
    for v in diag + off:
        x = RationalFunction(Polynomial.var(v))
        rows[pos[v.i]][pos[v.j]] = x
        rows[pos[v.j]][pos[v.i]] = x
    return diag + off, RFMatrix(rows)


def build_model_ring(g: MixedGraph) -> ModelRing:
    """Populate K, Lambda, Psi for a loopless mixed graph."""
    part = partition_lmg(g)
    internal, mapping = g.relabel()
    U = [mapping[v] for v in part.U]
    W = [mapping[v] for v in part.W]
    k_vars, K = _sym_block("k", U, internal.undirected)
    p_vars, Psi = _sym_block("p", W, internal.bidirected)
    l_vars = sorted(Var("l", a, b) for a, b in internal.directed)
    m = g.m
    L = [[RationalFunction() for _ in range(m)] for _ in range(m)]
    for v in l_vars:
        L[v.i - 1][v.j - 1] = RationalFunction(Polynomial.var(v))
    return ModelRing(
        graph=g,
        partition=part,
        labels=tuple(g.vertices),
        k_vars=k_vars,
        l_vars=l_vars,
        p_vars=p_vars,
        K=K,
        Lambda=RFMatrix(L),
        Psi=Psi,
        _internal=internal,
    )


def covariance_parametrization(r: ModelRing) -> RFMatrix:
    return r.sigma


def sample_covariance(data, samples_in: str = "rows") -> list:
    """Sample covariance with divisor n, exact when the data are rational.

    ``samples_in="rows"`` reads each row as one observation; ``"cols"`` reads
    each column as one.  Returns a nested list of ``mpq`` for exact input and
    a numpy array otherwise.
    """
    rows = [list(r) for r in data]
    if samples_in == "cols":
        rows = [list(c) for c in zip(*rows)] if rows else []
    elif samples_in != "rows":
        raise ValueError("samples_in must be 'rows' or 'cols'")
    n = len(rows)
    if n == 0 or not rows[0]:
        raise EmptyDataError("no observations")
    m = len(rows[0])
    exact = all(isinstance(x, (int, mpq, str)) or hasattr(x, "denominator") for r in rows for x in r)
    if not exact:
        X = np.asarray(rows, dtype=float)
        Xc = X - X.mean(axis=0)
        return Xc.T @ Xc / n
    X = [[to_mpq(x) for x in r] for r in rows]
    mean = [sum((r[j] for r in X), mpq(0)) / n for j in range(m)]
    S = [[mpq(0)] * m for _ in range(m)]
    for r in X:
        c = [r[j] - mean[j] for j in range(m)]
        for a in range(m):
            for b in range(a, m):
                S[a][b] += c[a] * c[b]
    for a in range(m):
        for b in range(a, m):
            S[a][b] /= n
            S[b][a] = S[a][b]
    return S
