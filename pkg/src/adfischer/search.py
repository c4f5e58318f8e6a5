"""Derivative-free search for accretive-dissipative matrices with a large
Fischer ratio, used to probe whether ``2^m`` can be exceeded.

Iterates are parametrised by lower-triangular factors ``L_B, L_C`` with
``B = L_B L_B*`` and ``C = L_C L_C*``, so every candidate sits inside the open
cone of accretive-dissipative matrices.
"""

import itertools
import logging
import math
import os
from dataclasses import dataclass, replace

import mpmath
import numpy as np

from .ad_matrix import partition
from .exceptions import SoundnessError
from .generation import STYLES, GenSpec, paired_example, rng_for, sample_ad
from .inequalities import bounds_for, fischer_ratio
from .linalg_core import _cholesky, cholesky_pd, det, hermitian

__all__ = [
    "SearchConfig", "SearchResult", "ScanCell", "maximize_ratio",
    "conjecture_scan", "leibniz_det", "reverify_ratio", "witness_ratio",
    "SOUNDNESS_SLACK",
]

log = logging.getLogger(__name__)

SOUNDNESS_SLACK = 1e-9


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    restarts: int = 10
    steps_per_restart: int = 2000
    initial_step: float = 0.1
    shrink: float = 0.5
    seed: int = 0
    seed_points: tuple = ()
    pd_floor: float = 1e-8
    window: int = 40

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"block size k={self.k} out of range 1..{self.n - 1}")
        if self.restarts < 1 or self.steps_per_restart < 0:
            raise ValueError("need restarts >= 1 and steps_per_restart >= 0")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if not self.pd_floor > 0:
            raise ValueError("pd_floor must be positive")


@dataclass(frozen=True)
class SearchResult:
    best_rho: float
    witness: np.ndarray
    bound_set: object
    conjecture_margin: float
    trajectory: tuple
    seed: int
    pd_floor: float
    evaluations: int
    skipped: int
    best_restart: int


def leibniz_det(M):
    """Permutation-sum determinant; exponential cost, for tiny orders only."""
    M = np.asarray(M, dtype=np.complex128)
    n = M.shape[0]
    total = 0j
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1.0 if inversions % 2 else 1.0
        for i, j in enumerate(perm):
            term = term * M[i, j]
        total += term
    return total


def _mp_det(M, dps=50):
    with mpmath.workdps(dps):
        X = mpmath.matrix([[mpmath.mpc(complex(z)) for z in row] for row in M])
        return abs(mpmath.det(X))


def reverify_ratio(A, k):
    """Recompute the Fischer ratio with an independent determinant.

    Orders up to 4 use the permutation sum; larger ones use 50-digit
    arithmetic.
    """
    A = np.asarray(A, dtype=np.complex128)
    blocks = (A, A[:k, :k], A[k:, k:])
    if A.shape[0] <= 4:
        d = [abs(leibniz_det(X)) for X in blocks]
        return d[0] / (d[1] * d[2])
    d = [_mp_det(X) for X in blocks]
    return float(d[0] / (d[1] * d[2]))


def _ratio(A, k):
    """Fischer ratio on a raw matrix, ``None`` if a block determinant vanishes."""
    d11, d22 = abs(det(A[:k, :k])), abs(det(A[k:, k:]))
    if not (d11 > 0 and d22 > 0):
        return None
    rho = abs(det(A)) / (d11 * d22)
    return rho if math.isfinite(rho) else None


def _factor(H, floor):
    L, _, complete = _cholesky(hermitian(H), 0.0)
    if not complete:
        raise ValueError("seed point is not accretive-dissipative")
    return _clamp(L, floor)


def _clamp(L, floor):
    d = np.maximum(L.diagonal().real, math.sqrt(floor))
    L[np.diag_indices_from(L)] = d
    return L


def _normalise(LB, LC):
    # common rescaling multiplies A by a positive constant: the ratio is unchanged
    s = math.sqrt(2 * LB.shape[0] / (np.linalg.norm(LB) ** 2 + np.linalg.norm(LC) ** 2))
    return LB * s, LC * s


def _certified(B, C, floor):
    return cholesky_pd(B, floor).is_pd and cholesky_pd(C, floor).is_pd


def _random_start(cfg, rng):
    specs = [GenSpec(n=cfg.n, seed=int(rng.integers(2 ** 63)),
                     condition_target=float(10 ** rng.uniform(0, 2)),
                     style=STYLES[int(rng.integers(len(STYLES)))]) for _ in range(2)]
    return sample_ad(*specs)


def _climb(cfg, restart):
    """One hill-climbing run; returns ``(rho, A, evaluations, skipped)``."""
    rng = rng_for(cfg.seed, restart)
    if restart < len(cfg.seed_points):
        A = np.array(cfg.seed_points[restart], dtype=np.complex128)
    else:
        A = _random_start(cfg, rng)
    B, C = hermitian(A), hermitian((A - A.conj().T) / 2j)
    best_A = A
    best = _ratio(A, cfg.k)
    if best is None or not _certified(B, C, cfg.pd_floor):
        raise ValueError(f"start point of restart {restart} is not a certified AD matrix")
    LB, LC = _normalise(_factor(B, cfg.pd_floor), _factor(C, cfg.pd_floor))
    n = cfg.n
    rows, cols = np.tril_indices(n)
    step = cfg.initial_step
    stale = 0
    evaluations = skipped = 0
    for _ in range(cfg.steps_per_restart):
        which = int(rng.integers(2))
        e = int(rng.integers(len(rows)))
        i, j = rows[e], cols[e]
        z = rng.standard_normal(2)
        LB_new, LC_new = LB.copy(), LC.copy()
        target = LB_new if which == 0 else LC_new
        target[i, j] += step * (z[0] if i == j else complex(z[0], z[1]) / math.sqrt(2))
        LB_new, LC_new = _normalise(_clamp(LB_new, cfg.pd_floor), _clamp(LC_new, cfg.pd_floor))
        B_new = LB_new @ LB_new.conj().T
        C_new = LC_new @ LC_new.conj().T
        A_new = B_new + 1j * C_new
        evaluations += 1
        rho = _ratio(A_new, cfg.k)
        if rho is None:
            skipped += 1
            continue
        if rho > best and _certified(B_new, C_new, cfg.pd_floor):
            best, best_A, LB, LC = rho, A_new, LB_new, LC_new
            stale = 0
        else:
            stale += 1
            if stale >= cfg.window:
                step *= cfg.shrink
                stale = 0
    return best, best_A, evaluations, skipped


def maximize_ratio(cfg):
    """Best Fischer ratio over ``cfg.restarts`` independent hill climbs.

    Restart ``r`` starts from ``cfg.seed_points[r]`` when present and from a
    random accretive-dissipative draw otherwise; its random stream is keyed by
    ``(cfg.seed, r)``. A candidate replaces the incumbent only on strict
    improvement and after both Cartesian parts pass the PD certificate at
    relative threshold ``pd_floor``. After ``window`` consecutive failures the
    step size is multiplied by ``shrink``.
    """
    bs = bounds_for(cfg.n, cfg.k)
    trajectory = []
    best = (-math.inf, None, -1)
    evaluations = skipped = 0
    for r in range(cfg.restarts):
        rho, A, ev, sk = _climb(cfg, r)
        evaluations += ev
        skipped += sk
        trajectory.append(rho)
        if rho > bs.lin_a + SOUNDNESS_SLACK:
            raise SoundnessError(
                f"ratio {rho!r} exceeds the proven bound {bs.lin_a} at n={cfg.n}, k={cfg.k}")
        if rho > best[0]:
            best = (rho, A, r)
    rho, A, r = best
    return SearchResult(best_rho=rho, witness=A, bound_set=bs,
                        conjecture_margin=bs.conjecture - rho,
                        trajectory=tuple(trajectory), seed=cfg.seed,
                        pd_floor=cfg.pd_floor, evaluations=evaluations,
                        skipped=skipped, best_restart=r)


@dataclass(frozen=True)
class ScanCell:
    n: int
    k: int
    result: SearchResult
    flagged: bool = False
    verified_rho: float = None
    witness_path: str = None

    @property
    def m(self):
        return self.result.bound_set.m


def _cell_seed(seed, n, k):
    return int(rng_for(seed, n, k).integers(2 ** 63))


def conjecture_scan(n_max, template=None, witness_dir=None, seed_epsilon=0.5):
    """Run :func:`maximize_ratio` for every ``2 <= n <= n_max``, ``1 <= k <= n/2``.

    Each cell is seeded with the block-diagonal matrix ``(1+i) I`` (ratio 1)
    and with :func:`paired_example` at ``seed_epsilon``. A cell whose best
    ratio exceeds ``2^m`` by more than ``1e-9`` is recomputed with an
    independent determinant and its witness written to ``witness_dir``.
    """
    from .reports import write_matrix

    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if template is None:
        template = SearchConfig(n=2, k=1)
    cells = []
    for n in range(2, n_max + 1):
        for k in range(1, n // 2 + 1):
            seeds = ((1 + 1j) * np.eye(n), paired_example(seed_epsilon, n, k))
            cfg = replace(template, n=n, k=k, seed=_cell_seed(template.seed, n, k),
                          seed_points=seeds)
            result = maximize_ratio(cfg)
            log.info("n=%d k=%d best_rho=%.12g", n, k, result.best_rho)
            cell = ScanCell(n=n, k=k, result=result)
            if result.best_rho > result.bound_set.conjecture + SOUNDNESS_SLACK:
                verified = reverify_ratio(result.witness, k)
                path = None
                if witness_dir is not None:
                    os.makedirs(witness_dir, exist_ok=True)
                    path = os.path.join(witness_dir, f"witness_n{n}_k{k}.txt")
                    write_matrix(path, result.witness, header=(
                        f"n={n} k={k} best_rho={result.best_rho!r} "
                        f"verified_rho={verified!r} bound_2^m={result.bound_set.conjecture!r}"))
                cell = replace(cell, flagged=True, verified_rho=verified, witness_path=path)
            cells.append(cell)
    return cells


def witness_ratio(result, k):
    """Fischer ratio of the re-certified witness (raises if it is not AD)."""
    P = partition(result.witness, k, tol=result.pd_floor)
    return fischer_ratio(P)
