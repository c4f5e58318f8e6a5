"""Accretive-dissipative matrices: Cartesian split, 2x2 block partition,
Schur complement and the structural facts about inverses used later."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import NotAccretiveDissipativeError, NotPositiveDefiniteError
from .linalg_core import (DEFAULT_PD_TOL, LoewnerResult, PDCertificate,
                          as_matrix, cholesky_pd, hermitian, inverse,
                          loewner_geq)

__all__ = [
    "CartesianPair", "PartitionedAD", "InverseSplit", "cartesian_decompose",
    "is_accretive_dissipative", "partition", "schur_complement",
    "inverse_split", "lemma3_margin", "p1_check", "swap_blocks",
]


@dataclass(frozen=True)
class CartesianPair:
    """Hermitian parts of ``A = B + iC``."""
    B: np.ndarray
    C: np.ndarray

    @property
    def n(self):
        return self.B.shape[0]

    def recompose(self):
        return self.B + 1j * self.C


@dataclass(frozen=True)
class InverseSplit:
    """``(B + iC)^{-1} = E - iF`` with both parts Hermitian."""
    E: np.ndarray
    F: np.ndarray
    residual: float


@dataclass(frozen=True)
class PartitionedAD:
    """A certified accretive-dissipative matrix split after row/column ``k``.

    Only :func:`partition` should build instances; it refuses matrices whose
    Cartesian parts fail the PD certificate, so downstream checks can never
    be fooled by invalid input.
    """
    A: np.ndarray
    k: int
    pair: CartesianPair
    cert_b: PDCertificate
    cert_c: PDCertificate
    tol: float = DEFAULT_PD_TOL
    orientation: str = field(default="as_given")

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def l(self):
        return self.n - self.k

    @property
    def m(self):
        return min(self.k, self.l)

    # complex blocks
    @property
    def A11(self):
        return self.A[:self.k, :self.k]

    @property
    def A12(self):
        return self.A[:self.k, self.k:]

    @property
    def A21(self):
        return self.A[self.k:, :self.k]

    @property
    def A22(self):
        return self.A[self.k:, self.k:]

    # Cartesian blocks; the (2,1) blocks are the adjoints of the (1,2) blocks
    @property
    def B11(self):
        return self.pair.B[:self.k, :self.k]

    @property
    def B12(self):
        return self.pair.B[:self.k, self.k:]

    @property
    def B22(self):
        return self.pair.B[self.k:, self.k:]

    @property
    def C11(self):
        return self.pair.C[:self.k, :self.k]

    @property
    def C12(self):
        return self.pair.C[:self.k, self.k:]

    @property
    def C22(self):
        return self.pair.C[self.k:, self.k:]


def cartesian_decompose(A):
    """Split ``A`` into ``B = (A + A*)/2`` and ``C = (A - A*)/(2i)``."""
    A = as_matrix(A)
    return CartesianPair(B=hermitian(A), C=hermitian((A - A.conj().T) / 2j))


def is_accretive_dissipative(A, tol=DEFAULT_PD_TOL):
    """Return ``(is_ad, cert_b, cert_c)`` for the Cartesian parts of ``A``."""
    pair = cartesian_decompose(A)
    cert_b = cholesky_pd(pair.B, tol)
    cert_c = cholesky_pd(pair.C, tol)
    return cert_b.is_pd and cert_c.is_pd, cert_b, cert_c


def partition(A, k, tol=DEFAULT_PD_TOL):
    """Certify ``A`` as accretive-dissipative and split it at ``k``."""
    A = as_matrix(A)
    n = A.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"block size k={k} out of range 1..{n - 1}")
    ok, cert_b, cert_c = is_accretive_dissipative(A, tol)
    if not ok:
        failing = "B (Hermitian part)" if not cert_b.is_pd else "C (skew-derived part)"
        raise NotAccretiveDissipativeError(
            f"matrix is not accretive-dissipative: {failing} fails the PD test",
            cert_b, cert_c)
    return PartitionedAD(A=_frozen(A), k=int(k), pair=_frozen_pair(A),
                         cert_b=cert_b, cert_c=cert_c, tol=tol)


def _frozen(X):
    X.setflags(write=False)
    return X


def _frozen_pair(A):
    pair = cartesian_decompose(A)
    return CartesianPair(_frozen(pair.B), _frozen(pair.C))


def swap_blocks(P):
    """Re-partition with the diagonal blocks exchanged (``A -> Q A Q^T``).

    The permutation is real, so the result is still certified and has the
    same Fischer ratio; the new leading block has order ``l``.
    """
    order = np.r_[P.k:P.n, 0:P.k]
    A = P.A[np.ix_(order, order)]
    orientation = "swapped" if P.orientation == "as_given" else "as_given"
    return PartitionedAD(A=_frozen(A), k=P.l, pair=_frozen_pair(A),
                         cert_b=P.cert_b, cert_c=P.cert_c, tol=P.tol,
                         orientation=orientation)


def schur_complement(P):
    """``A/A11 = A22 - A21 A11^{-1} A12``."""
    return P.A22 - P.A21 @ inverse(P.A11) @ P.A12


def inverse_split(pair, tol=DEFAULT_PD_TOL):
    """Split ``(B + iC)^{-1}`` as ``E - iF`` with
    ``E = (B + C B^{-1} C)^{-1}`` and ``F = (C + B C^{-1} B)^{-1}``.

    The reconstruction residual ``||(B+iC)^{-1} - (E - iF)||_F`` relative to
    ``||(B+iC)^{-1}||_F`` is stored on the result.
    """
    B, C = pair.B, pair.C
    for name, X in (("B", B), ("C", C)):
        cert = cholesky_pd(X, tol)
        if not cert.is_pd:
            raise NotPositiveDefiniteError(f"inverse split needs {name} positive definite", cert)
    E = hermitian(inverse(hermitian(B + C @ inverse(B) @ C)))
    F = hermitian(inverse(hermitian(C + B @ inverse(C) @ B)))
    direct = inverse(B + 1j * C)
    residual = np.linalg.norm(direct - (E - 1j * F)) / np.linalg.norm(direct)
    return InverseSplit(E=E, F=F, residual=float(residual))


def lemma3_margin(B, C, tol=1e-9, pd_tol=DEFAULT_PD_TOL):
    """Loewner test of ``B + C B^{-1} C >= 2C``; ``C`` need only be Hermitian."""
    B, C = hermitian(B), hermitian(C)
    cert = cholesky_pd(B, pd_tol)
    if not cert.is_pd:
        raise NotPositiveDefiniteError("B must be positive definite", cert)
    return loewner_geq(B + C @ inverse(B) @ C, 2 * C, tol)


@dataclass(frozen=True)
class P1Report:
    E_k: np.ndarray
    F_k: np.ndarray
    e_bound: LoewnerResult
    f_bound: LoewnerResult

    @property
    def holds(self):
        return self.e_bound.holds and self.f_bound.holds


def p1_check(P, tol=1e-9):
    """Check ``E_k <= C11^{-1}/2`` and ``F_k <= B11^{-1}/2``.

    ``E_k, F_k`` come from splitting the inverse of the leading block pair
    ``(B11, C11)``, not from blocks of ``A^{-1}``.
    """
    split = inverse_split(CartesianPair(P.B11, P.C11), P.tol)
    e_bound = loewner_geq(0.5 * inverse(P.C11), split.E, tol)
    f_bound = loewner_geq(0.5 * inverse(P.B11), split.F, tol)
    return P1Report(E_k=split.E, F_k=split.F, e_bound=e_bound, f_bound=f_bound)
