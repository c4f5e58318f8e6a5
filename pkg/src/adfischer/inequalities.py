"""Fischer-type determinant bounds for accretive-dissipative matrices.

Besides the bounds themselves, this module replays the two proof chains
step by step. Every step is stored as a :class:`ChainStep` that asserts
``lhs <= rhs`` (scalars) or ``lhs <= rhs`` in the Loewner order (matrices),
together with a signed relative margin, so a report shows how tight each link
is on a concrete matrix.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .ad_matrix import p1_check, schur_complement, swap_blocks
from .exceptions import DegenerateInstanceError, NotPositiveDefiniteError
from .linalg_core import (DEFAULT_PD_TOL, cholesky_pd, det, hermitian,
                          hermitian_eigenvalues, hpd_sqrt, inverse,
                          loewner_geq)

__all__ = [
    "BoundSet", "ChainStep", "ChainReport", "Lemma4Report", "SchurParts",
    "BoundCheck", "bounds_for", "lin_constant", "fischer_ratio",
    "lemma4_verify", "theorem3_chain", "schur_parts", "theorem4_chain",
    "check_all_bounds", "DEFAULT_INEQ_TOL",
]

DEFAULT_INEQ_TOL = 1e-9


def lin_constant(n, m):
    """Piecewise constant ``a``: ``2^(3m/2)`` if ``3m <= n``, else ``2^(n/2)``."""
    if not 1 <= m <= n // 2:
        raise ValueError(f"need 1 <= m <= n/2, got n={n}, m={m}")
    return 2.0 ** (1.5 * m) if 3 * m <= n else 2.0 ** (n / 2)


@dataclass(frozen=True)
class BoundSet:
    n: int
    k: int
    l: int
    m: int
    fischer: float
    ikramov: float
    lin_a: float
    conjecture: float

    @property
    def ordered(self):
        """``conjecture <= lin_a <= ikramov`` for this instance."""
        return self.conjecture <= self.lin_a <= self.ikramov


def bounds_for(n, k):
    """Evaluate the Fischer, ``3^m``, piecewise and ``2^m`` constants."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"block size k={k} out of range 1..{n - 1}")
    m = min(k, n - k)
    return BoundSet(n=n, k=k, l=n - k, m=m, fischer=1.0, ikramov=3.0 ** m,
                    lin_a=lin_constant(n, m), conjecture=2.0 ** m)


@dataclass(frozen=True)
class ChainStep:
    description: str
    lhs: float
    rhs: float
    margin: float
    kind: str
    passed: bool
    strict: bool = False

    @property
    def strictly_holds(self):
        return self.margin > 0


@dataclass(frozen=True)
class ChainReport:
    chain_name: str
    steps: tuple
    orientation: str = "as_given"

    @property
    def overall_pass(self):
        return all(step.passed for step in self.steps)

    def step(self, description):
        for s in self.steps:
            if s.description == description:
                return s
        raise KeyError(description)

    @property
    def tightest(self):
        return min(self.steps, key=lambda s: s.margin)


def _scalar_step(description, lhs, rhs, tol, strict=False):
    lhs, rhs = float(lhs), float(rhs)
    margin = (rhs - lhs) / max(abs(lhs), abs(rhs), 1.0)
    return ChainStep(description, lhs, rhs, margin, "scalar", margin >= -tol, strict)


def _loewner_step(description, smaller, larger, tol, strict=False):
    """Record ``smaller <= larger``; lhs/rhs hold Frobenius norms."""
    res = loewner_geq(larger, smaller, tol)
    return ChainStep(description, float(np.linalg.norm(smaller)),
                     float(np.linalg.norm(larger)), res.relative_margin,
                     "loewner", res.holds, strict)


def _identity_step(description, lhs, rhs, tol):
    lhs, rhs = float(lhs), float(rhs)
    margin = -abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
    return ChainStep(description, lhs, rhs, margin, "identity", margin >= -tol)


def _block_dets(P):
    d11, d22 = abs(det(P.A11)), abs(det(P.A22))
    if not (d11 > 0 and d22 > 0 and math.isfinite(d11 * d22)):
        raise DegenerateInstanceError(
            f"degenerate block determinants |det A11|={d11:.3e}, |det A22|={d22:.3e}")
    return d11, d22


def fischer_ratio(P):
    """``|det A| / (|det A11| |det A22|)``."""
    d11, d22 = _block_dets(P)
    return abs(det(P.A)) / (d11 * d22)


@dataclass(frozen=True)
class Lemma4Report:
    n: int
    lambdas: np.ndarray
    lhs: float
    mid: float
    rhs: float
    scalar_checks: np.ndarray
    lower_margin: float
    upper_margin: float
    scalar_margin: float
    eigen_identity_residual: float
    tol: float

    @property
    def passed(self):
        return min(self.lower_margin, self.upper_margin, self.scalar_margin) >= -self.tol


def lemma4_verify(pair, tol=DEFAULT_INEQ_TOL, pd_tol=DEFAULT_PD_TOL):
    """Evaluate ``|det(B+iC)| <= det(B+C) <= 2^(n/2) |det(B+iC)|``.

    The eigenvalues ``lambda_j`` of ``B^{-1/2} C B^{-1/2}`` are computed
    explicitly, the per-eigenvalue inequalities
    ``|1+i lambda| <= 1+lambda <= sqrt(2)|1+i lambda|`` are checked, and the
    determinant products are compared against ``det B * prod(...)``.
    Margins are relative to the larger side of each comparison.
    """
    B, C = hermitian(pair.B), hermitian(pair.C)
    cert = cholesky_pd(B, pd_tol)
    if not cert.is_pd:
        raise NotPositiveDefiniteError("B must be positive definite", cert)
    n = B.shape[0]
    root_inv = inverse(hpd_sqrt(B, pd_tol))
    lambdas = hermitian_eigenvalues(root_inv @ C @ root_inv)

    lhs = abs(det(B + 1j * C))
    mid = det(B + C).real
    rhs = 2.0 ** (n / 2) * lhs
    mod = np.abs(1 + 1j * lambdas)
    triples = np.column_stack([mod, 1 + lambdas, math.sqrt(2) * mod])

    def rel(a, b):
        return (b - a) / max(abs(a), abs(b))

    scalar_margin = min(min(rel(t[0], t[1]), rel(t[1], t[2])) for t in triples)
    det_b = det(B).real
    via_eigs = (det_b * np.prod(mod), det_b * np.prod(1 + lambdas))
    residual = max(abs(via_eigs[0] - lhs) / lhs, abs(via_eigs[1] - mid) / mid)
    return Lemma4Report(n=n, lambdas=lambdas, lhs=lhs, mid=mid, rhs=rhs,
                        scalar_checks=triples, lower_margin=rel(lhs, mid),
                        upper_margin=rel(mid, rhs), scalar_margin=float(scalar_margin),
                        eigen_identity_residual=float(residual), tol=tol)


def theorem3_chain(P, tol=DEFAULT_INEQ_TOL):
    """Replay ``|det A| <= det(B+C) <= det(B11+C11) det(B22+C22)
    <= 2^(k/2)|det A11| 2^(l/2)|det A22|``."""
    d11, d22 = _block_dets(P)
    det_a = abs(det(P.A))
    det_sum = det(P.pair.B + P.pair.C).real
    fischer_prod = det(P.B11 + P.C11).real * det(P.B22 + P.C22).real
    scaled = 2.0 ** (P.k / 2) * d11 * 2.0 ** (P.l / 2) * d22
    steps = (
        _scalar_step("|det A| <= det(B+C)", det_a, det_sum, tol),
        _scalar_step("det(B+C) <= det(B11+C11) det(B22+C22)", det_sum, fischer_prod, tol),
        _scalar_step("det(B11+C11) det(B22+C22) <= 2^(k/2)|det A11| 2^(l/2)|det A22|",
                     fischer_prod, scaled, tol),
        _scalar_step("|det A| <= 2^(n/2)|det A11||det A22|", det_a,
                     2.0 ** (P.n / 2) * d11 * d22, tol),
    )
    return ChainReport("theorem3", steps, P.orientation)


@dataclass(frozen=True)
class SchurParts:
    R: np.ndarray
    S: np.ndarray
    E_k: np.ndarray
    F_k: np.ndarray
    residual: float


def schur_parts(P, p1=None):
    """Hermitian and skew-derived parts of ``A/A11`` from the block formulas.

    ``R`` and ``S`` are assembled from ``B_ij, C_ij`` and the split
    ``A11^{-1} = E_k - i F_k``; ``residual`` is the relative Frobenius
    distance of ``R + iS`` from the directly computed Schur complement.
    """
    if p1 is None:
        p1 = p1_check(P)
    E, F = p1.E_k, p1.F_k
    B12, C12 = P.B12, P.C12
    B21, C21 = B12.conj().T, C12.conj().T
    R = P.B22 - B21 @ E @ B12 + C21 @ E @ C12 - B21 @ F @ C12 - C21 @ F @ B12
    S = P.C22 + B21 @ F @ B12 - C21 @ F @ C12 - C21 @ E @ B12 - B21 @ E @ C12
    direct = schur_complement(P)
    residual = np.linalg.norm(R + 1j * S - direct) / np.linalg.norm(direct)
    return SchurParts(R=hermitian(R), S=hermitian(S), E_k=E, F_k=F, residual=float(residual))


def theorem4_chain(P, tol=DEFAULT_INEQ_TOL):
    """Replay the ``2^(3m/2)`` proof on ``P``.

    The argument works with the smaller block in position (2,2). When
    ``k < l`` the diagonal blocks are exchanged first (a real permutation
    similarity that keeps every determinant modulus) and the report's
    ``orientation`` says so.
    """
    Q = swap_blocks(P) if P.k < P.l else P
    m = Q.l
    d11, d22 = _block_dets(Q)
    p1 = p1_check(Q, tol)
    parts = schur_parts(Q, p1)
    E, F, R, S = parts.E_k, parts.F_k, parts.R, parts.S
    B12, C12 = Q.B12, Q.C12
    B21, C21 = B12.conj().T, C12.conj().T

    bfb, cfc = B21 @ F @ B12, C21 @ F @ C12
    beb, cec = B21 @ E @ B12, C21 @ E @ C12
    cross_f = B21 @ F @ C12 + C21 @ F @ B12
    cross_e = C21 @ E @ B12 + B21 @ E @ C12
    sum_22 = Q.B22 + Q.C22
    after_p5 = sum_22 + 2 * bfb + 2 * cec
    schur_b = B21 @ inverse(Q.B11) @ B12
    schur_c = C21 @ inverse(Q.C11) @ C12
    after_p1 = sum_22 + schur_b + schur_c
    zero = np.zeros_like(R)

    steps = [
        _loewner_step("R > 0", zero, R, tol),
        _loewner_step("S > 0", zero, S, tol),
        _loewner_step("E_k <= C11^{-1}/2", E, 0.5 * inverse(Q.C11), tol),
        _loewner_step("F_k <= B11^{-1}/2", F, 0.5 * inverse(Q.B11), tol),
        _loewner_step("+(B12* F C12 + C12* F B12) <= B12* F B12 + C12* F C12",
                      cross_f, bfb + cfc, tol),
        _loewner_step("-(B12* F C12 + C12* F B12) <= B12* F B12 + C12* F C12",
                      -cross_f, bfb + cfc, tol),
        _loewner_step("+(C12* E B12 + B12* E C12) <= B12* E B12 + C12* E C12",
                      cross_e, beb + cec, tol),
        _loewner_step("-(C12* E B12 + B12* E C12) <= B12* E B12 + C12* E C12",
                      -cross_e, beb + cec, tol),
        _loewner_step("R + S <= B22 + 2 B12* F B12 + C22 + 2 C12* E C12",
                      R + S, after_p5, tol),
        _loewner_step("2 B12* F B12 + 2 C12* E C12 <= B12* B11^{-1} B12 + C12* C11^{-1} C12",
                      2 * bfb + 2 * cec, schur_b + schur_c, tol),
        _loewner_step("B12* B11^{-1} B12 < B22", schur_b, Q.B22, tol, strict=True),
        _loewner_step("C12* C11^{-1} C12 < C22", schur_c, Q.C22, tol, strict=True),
    ]

    det_schur = abs(det(R + 1j * S))
    det_rs = det(R + S).real
    det_p5 = det(after_p5).real
    det_p1 = det(after_p1).real
    det_doubled = 2.0 ** m * det(sum_22).real
    bound_22 = 2.0 ** (1.5 * m) * d22
    det_a = abs(det(Q.A))
    steps += [
        _identity_step("R + iS = A/A11 (relative residual)", 0.0, parts.residual, tol),
        _identity_step("|det A| = |det A11| |det(A/A11)|", det_a, d11 * det_schur, tol),
        _scalar_step("|det(A/A11)| <= det(R+S)", det_schur, det_rs, tol),
        _scalar_step("det(R+S) <= det(B22 + 2 B12* F B12 + C22 + 2 C12* E C12)",
                     det_rs, det_p5, tol),
        _scalar_step("det(B22 + 2 B12* F B12 + C22 + 2 C12* E C12) <= "
                     "det(B22 + B12* B11^{-1} B12 + C22 + C12* C11^{-1} C12)",
                     det_p5, det_p1, tol),
        _scalar_step("det(B22 + B12* B11^{-1} B12 + C22 + C12* C11^{-1} C12) < "
                     "2^m det(B22+C22)", det_p1, det_doubled, tol, strict=True),
        _scalar_step("2^m det(B22+C22) <= 2^(3m/2)|det A22|", det_doubled, bound_22, tol),
        _scalar_step("|det A| <= 2^(3m/2)|det A11||det A22|", det_a, d11 * bound_22, tol),
    ]
    return ChainReport("theorem4", tuple(steps), Q.orientation)


@dataclass(frozen=True)
class BoundCheck:
    rho: float
    bound_set: BoundSet
    ikramov_ok: bool
    lin_ok: bool
    conjecture_ok: bool
    fischer_ok: bool
    margins: dict = field(default_factory=dict)
    relative_margins: dict = field(default_factory=dict)


def check_all_bounds(P, tol=DEFAULT_INEQ_TOL, conjecture_slack=1e-9):
    """Compare the Fischer ratio with every constant in :func:`bounds_for`.

    ``ikramov_ok`` and ``lin_ok`` are theorems and must hold; ``conjecture_ok``
    is the open question and is allowed to be ``False``.
    """
    rho = fischer_ratio(P)
    bs = bounds_for(P.n, P.k)
    names = ("fischer", "ikramov", "lin_a", "conjecture")
    margins = {name: getattr(bs, name) - rho for name in names}
    relative = {name: margins[name] / getattr(bs, name) for name in names}
    return BoundCheck(
        rho=rho, bound_set=bs,
        ikramov_ok=relative["ikramov"] >= -tol,
        lin_ok=relative["lin_a"] >= -tol,
        conjecture_ok=margins["conjecture"] >= -conjecture_slack,
        fischer_ok=relative["fischer"] >= -tol,
        margins=margins, relative_margins=relative)

