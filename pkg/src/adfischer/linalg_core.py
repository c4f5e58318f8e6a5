"""Dense complex and Hermitian matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
:func:`as_matrix` and :func:`hermitian` validate and normalise inputs; every
other routine calls one of them first and never mutates its arguments.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import (ConvergenceError, DimensionError,
                         NotPositiveDefiniteError, SingularMatrixError)

__all__ = [
    "PDCertificate", "LoewnerResult", "as_matrix", "hermitian", "lu_factor",
    "det", "inverse", "cholesky_pd", "jacobi_eigh", "hermitian_eigenvalues",
    "hpd_sqrt", "loewner_geq", "DEFAULT_PD_TOL",
]

DEFAULT_PD_TOL = 1e-10


@dataclass(frozen=True)
class PDCertificate:
    """Outcome of a Cholesky-based positive definiteness test.

    ``is_pd`` holds iff every Cholesky pivot exceeded
    ``tolerance_used * scale``, where ``scale`` is the largest absolute
    diagonal entry of the tested matrix.
    """
    is_pd: bool
    min_pivot: float
    scale: float
    tolerance_used: float

    @property
    def threshold(self):
        return self.tolerance_used * self.scale


@dataclass(frozen=True)
class LoewnerResult:
    """``holds`` is ``X >= Y`` up to tolerance; ``margin`` is min eig(X - Y)."""
    holds: bool
    margin: float
    scale: float

    def __bool__(self):
        return self.holds

    @property
    def relative_margin(self):
        return self.margin / self.scale


def as_matrix(M, square=True):
    """Return ``M`` as a finite 2-D complex array (a copy)."""
    M = np.array(M, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def hermitian(H):
    """Symmetrise ``H`` so that ``H[i, j] == conj(H[j, i])`` exactly."""
    H = as_matrix(H)
    H = 0.5 * (H + H.conj().T)
    # the average above already makes the diagonal real up to rounding
    H[np.diag_indices_from(H)] = H.diagonal().real
    return H


def lu_factor(M):
    """LU factorisation with partial pivoting, ``M[perm] = L @ U``.

    Returns ``(lu, perm, sign)``: ``lu`` stores the unit lower factor below the
    diagonal and ``U`` on and above it, ``perm`` is the row order and ``sign``
    the parity of the permutation. A column with no nonzero pivot candidate is
    skipped, which leaves an exact zero on the diagonal of ``U``.
    """
    lu = as_matrix(M)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1
    for j in range(n - 1):
        p = j + int(np.argmax(np.abs(lu[j:, j])))
        if p != j:
            lu[[j, p]] = lu[[p, j]]
            perm[[j, p]] = perm[[p, j]]
            sign = -sign
        pivot = lu[j, j]
        if pivot == 0:
            continue
        lu[j + 1:, j] /= pivot
        lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, perm, sign


def det(M):
    """Determinant as the signed product of the LU pivots."""
    lu, _, sign = lu_factor(M)
    return complex(sign * np.prod(lu.diagonal()))


def inverse(M, tol=None):
    """Inverse via LU; raises :class:`SingularMatrixError` on a tiny pivot.

    A pivot counts as singular when ``|u_jj| <= tol * max|M_ij|``; the default
    ``tol`` is ``n`` times machine epsilon.
    """
    M = as_matrix(M)
    n = M.shape[0]
    if tol is None:
        tol = n * np.finfo(float).eps
    lu, perm, _ = lu_factor(M)
    pivots = np.abs(lu.diagonal())
    threshold = tol * np.max(np.abs(M))
    j = int(np.argmin(pivots))
    if pivots[j] <= threshold:
        raise SingularMatrixError(
            f"matrix is singular to tolerance: pivot {pivots[j]:.3e} at column {j}",
            pivot=float(pivots[j]))
    rhs = np.eye(n, dtype=np.complex128)[perm]
    y = solve_triangular(lu, rhs, lower=True, unit_diagonal=True)
    return solve_triangular(lu, y, lower=False)


def _cholesky(H, tol):
    """Cholesky with early exit; returns ``(L, pivots, complete)``."""
    n = H.shape[0]
    L = np.zeros_like(H)
    pivots = []
    scale = float(np.max(np.abs(H.diagonal())))
    threshold = tol * scale
    for j in range(n):
        row = L[j, :j]
        d = float((H[j, j] - np.vdot(row, row)).real)
        pivots.append(d)
        if not d > threshold:
            return L, pivots, False
        L[j, j] = np.sqrt(d)
        if j + 1 < n:
            L[j + 1:, j] = (H[j + 1:, j] - L[j + 1:, :j] @ row.conj()) / L[j, j]
    return L, pivots, True


def cholesky_pd(H, tol=DEFAULT_PD_TOL):
    """Certify positive definiteness of Hermitian ``H`` by Cholesky.

    Never raises for a non-PD input; the returned certificate says so.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    H = hermitian(H)
    _, pivots, complete = _cholesky(H, tol)
    scale = float(np.max(np.abs(H.diagonal())))
    return PDCertificate(is_pd=complete, min_pivot=float(min(pivots)),
                         scale=scale, tolerance_used=float(tol))


def _rotate(A, V, p, q):
    """Annihilate ``A[p][q]`` with one complex Jacobi rotation (in place).

    ``A`` and ``V`` are nested lists of Python complex numbers; scalar
    arithmetic on lists is several times faster than numpy at these orders.
    """
    apq = A[p][q]
    r = abs(apq)
    phase = apq / r
    app, aqq = A[p][p].real, A[q][q].real
    tau = (aqq - app) / (2.0 * r)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = t * c
    # unitary 2x2 block on columns p, q: diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g10 = -s * phase.conjugate()
    g11 = c * phase.conjugate()
    for M in (A, V):
        for row in M:
            xp, xq = row[p], row[q]
            row[p] = c * xp + g10 * xq
            row[q] = s * xp + g11 * xq
    rp, rq = A[p], A[q]
    h10, h11 = g10.conjugate(), g11.conjugate()
    for j in range(len(rp)):
        xp, xq = rp[j], rq[j]
        rp[j] = c * xp + h10 * xq
        rq[j] = s * xp + h11 * xq
    rp[q] = rq[p] = 0j
    rp[p] = complex(rp[p].real, 0.0)
    rq[q] = complex(rq[q].real, 0.0)


def _off_diagonal_mass(A):
    return math.sqrt(sum(abs(x) ** 2 for i, row in enumerate(A)
                         for j, x in enumerate(row) if i != j))


def jacobi_eigh(H, max_sweeps=100, rtol=1e-14):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    H : array_like, shape (n, n)
        Hermitian input; it is symmetrised first.
    max_sweeps : int
        Budget of full cyclic sweeps before :class:`ConvergenceError`.
    rtol : float
        Stop once the off-diagonal Frobenius mass is at most
        ``rtol * ||H||_F``.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues in ascending order.
    V : ndarray, shape (n, n)
        Unitary matrix whose columns are the matching eigenvectors.
    """
    H = hermitian(H)
    n = H.shape[0]
    A = H.tolist()
    V = np.eye(n, dtype=np.complex128).tolist()
    target = rtol * np.linalg.norm(H)
    off = _off_diagonal_mass(A)
    sweeps = 0
    while off > target:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal mass {off:.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p][q] != 0:
                    _rotate(A, V, p, q)
        sweeps += 1
        off = _off_diagonal_mass(A)
    w = np.array([A[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(V)[:, order]


def hermitian_eigenvalues(H, max_sweeps=100):
    """Ascending real eigenvalues of a Hermitian matrix."""
    return jacobi_eigh(H, max_sweeps=max_sweeps)[0]


def hpd_sqrt(H, tol=DEFAULT_PD_TOL):
    """Unique Hermitian positive definite square root of ``H``."""
    H = hermitian(H)
    cert = cholesky_pd(H, tol)
    if not cert.is_pd:
        raise NotPositiveDefiniteError(
            f"square root requires a PD matrix (min pivot {cert.min_pivot:.3e})", cert)
    w, V = jacobi_eigh(H)
    return hermitian((V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T)


def loewner_geq(X, Y, tol=1e-9):
    """Test ``X >= Y`` in the Loewner order.

    The test passes when ``min eig(X - Y) >= -tol * max(||X||, ||Y||, 1)``
    with Frobenius norms. The minimum eigenvalue is returned as the margin.
    """
    X, Y = hermitian(X), hermitian(Y)
    if X.shape != Y.shape:
        raise DimensionError(f"order mismatch: {X.shape} vs {Y.shape}")
    margin = float(hermitian_eigenvalues(X - Y)[0])
    scale = max(np.linalg.norm(X), np.linalg.norm(Y), 1.0)
    return LoewnerResult(holds=margin >= -tol * scale, margin=margin, scale=float(scale))
