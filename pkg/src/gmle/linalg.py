"""Small dense eigenvalue routines.

Nonsymmetric matrices go through Householder reduction to Hessenberg form and
a complex single-shift QR iteration with Wilkinson shifts.  Symmetric matrices
use cyclic Jacobi rotations.  Both are meant for the tiny matrices that show
up here (quotient rings of dimension <= ~30, Hessians of <= ~15 parameters).
"""

from __future__ import annotations

import numpy as np

__all__ = ["hessenberg", "eigvals", "jacobi_eigh", "symmetric_eigvals", "ConvergenceError"]

DEFLATE_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """An iteration hit its cap without converging."""


def hessenberg(A) -> np.ndarray:
    """Upper Hessenberg matrix similar to A (Householder reflections)."""
    H = np.array(A, dtype=complex)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _givens(a, b):
    r = np.hypot(abs(a), abs(b))
    if r == 0.0:
        return 1.0, 0.0
    return a / r, b / r


def eigvals(A, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of a square matrix by shifted QR on its Hessenberg form.

    ``max_iter`` bounds the sweeps spent on any single eigenvalue.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("eigvals needs a square matrix")
    n = A.shape[0]
    if n == 0:
        return np.zeros(0, dtype=complex)
    H = hessenberg(A)
    out = np.zeros(n, dtype=complex)
    hi = n - 1
    its = 0
    while hi >= 0:
        if hi == 0:
            out[0] = H[0, 0]
            break
        # look for a negligible subdiagonal entry
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0.0:
                s = np.abs(H[: hi + 1, : hi + 1]).max()
            if abs(H[lo, lo - 1]) <= DEFLATE_TOL * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        its += 1
        if its > max_iter:
            raise ConvergenceError(f"QR iteration did not converge for eigenvalue {hi}")
        # Wilkinson shift from the trailing 2x2 block
        a, b, c, d = H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi]
        tr, det = a + d, a * d - b * c
        disc = np.sqrt(tr * tr / 4 - det)
        mu1, mu2 = tr / 2 + disc, tr / 2 - disc
        mu = mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2
        if its % 11 == 0:
            # exceptional shift to break cycles
            mu = d + abs(H[hi, hi - 1]) * (0.75 + 0.5j)
        # QR step on the active block H[lo:hi+1, lo:hi+1]
        m = hi - lo + 1
        B = H[lo:hi + 1, lo:hi + 1]
        B -= mu * np.eye(m)
        rots = []
        for k in range(m - 1):
            cs, sn = _givens(B[k, k], B[k + 1, k])
            G = np.array([[np.conj(cs), np.conj(sn)], [-sn, cs]])
            B[k:k + 2, k:] = G @ B[k:k + 2, k:]
            rots.append(G)
        for k, G in enumerate(rots):
            B[: min(k + 3, m), k:k + 2] = B[: min(k + 3, m), k:k + 2] @ G.conj().T
        B += mu * np.eye(m)
        H[lo:hi + 1, lo:hi + 1] = B
    return out


def jacobi_eigh(A, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigenvalues and eigenvectors of a real symmetric matrix (cyclic Jacobi).

    Returns ``(w, V)`` with ascending ``w`` and ``A V = V diag(w)``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("jacobi_eigh needs a square matrix")
    n = A.shape[0]
    V = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2))
        scale = np.sqrt(np.sum(A * A))
        if off <= tol * scale or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def symmetric_eigvals(A) -> np.ndarray:
    return jacobi_eigh(A)[0]
