"""Reproducible HPD / accretive-dissipative matrix generators.

Every random draw comes from a Philox stream keyed by ``(seed, *indices)``,
so a matrix depends only on its own key and never on how many other draws
happened before it or on which worker produced it.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError
from .linalg_core import hermitian, jacobi_eigh

__all__ = [
    "GenSpec", "ExampleParams", "STYLES", "rng_for", "random_unitary",
    "sample_hpd", "sample_ad", "sample_hermitian", "example_family",
    "example_family_block", "paired_example", "example_ratio", "ad_corpus",
]

STYLES = ("wishart-like", "eigenvalue-prescribed", "near-singular-part")


@dataclass(frozen=True)
class GenSpec:
    n: int
    seed: int
    condition_target: float = 10.0
    style: str = "wishart-like"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.condition_target >= 1:
            raise ValueError("condition_target must be >= 1")
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}; expected one of {STYLES}")


@dataclass(frozen=True)
class ExampleParams:
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")


def rng_for(seed, *indices):
    """Counter-based generator for the stream ``(seed, *indices)``."""
    key = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *map(int, indices)])
    return np.random.Generator(np.random.Philox(key))


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(n, rng):
    """Haar-distributed unitary from the QR of a complex Gaussian matrix."""
    Q, R = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    d = R.diagonal()
    return Q * (d / np.abs(d))


def _from_spectrum(spectrum, rng):
    U = random_unitary(len(spectrum), rng)
    return hermitian((U * spectrum) @ U.conj().T)


def sample_hpd(spec):
    """Draw an HPD matrix with trace ``n`` per ``spec``.

    ``wishart-like``
        ``G* G + delta I`` with ``delta`` lifting the spectrum so that the
        condition number is at most ``condition_target``.
    ``eigenvalue-prescribed``
        ``U diag(w) U*`` with ``w`` geometrically spaced from 1 to
        ``condition_target`` and Haar ``U``.
    ``near-singular-part``
        Like the prescribed style but with a single small eigenvalue
        ``1/condition_target`` below an otherwise O(1) spectrum.
    """
    n = spec.n
    rng = rng_for(spec.seed, 0)
    target = float(spec.condition_target)
    if spec.style == "wishart-like":
        G = _complex_gaussian(rng, (n, n))
        W = hermitian(G.conj().T @ G)
        if target == 1:
            return np.eye(n, dtype=np.complex128)
        w = jacobi_eigh(W)[0]
        lo, hi = max(w[0], 0.0), w[-1]
        delta = max((hi - target * lo) / (target - 1), 0.0)
        H = W + delta * np.eye(n)
    elif spec.style == "eigenvalue-prescribed":
        spectrum = np.geomspace(1.0, target, n) if n > 1 else np.ones(1)
        H = _from_spectrum(spectrum, rng)
    else:
        spectrum = np.ones(n) if n == 1 else np.r_[1.0 / target, rng.uniform(0.5, 1.5, n - 1)]
        H = _from_spectrum(spectrum, rng)
    return hermitian(H * (n / np.trace(H).real))


def sample_hermitian(n, seed, *indices):
    """Random Hermitian matrix (GUE-like), not necessarily definite."""
    G = _complex_gaussian(rng_for(seed, *indices), (n, n))
    return hermitian(G + G.conj().T)


def sample_ad(spec_b, spec_c):
    """``A = B + iC`` from two independent HPD draws."""
    if spec_b.n != spec_c.n:
        raise DimensionError(f"order mismatch: {spec_b.n} vs {spec_c.n}")
    return sample_hpd(spec_b) + 1j * sample_hpd(spec_c)


def example_family(params):
    """The 2x2 matrix ``[[(1+e)(1+i), i-1], [i-1, (1+e)(1+i)]]``."""
    if not isinstance(params, ExampleParams):
        params = ExampleParams(params)
    d = (1 + params.epsilon) * (1 + 1j)
    return np.array([[d, 1j - 1], [1j - 1, d]])


def example_ratio(epsilon):
    """Closed form ``((1+e)^2 + 1) / (1+e)^2`` of the family's Fischer ratio."""
    s = (1 + epsilon) ** 2
    return (s + 1) / s


def paired_example(params, n, k):
    """Order-``n`` matrix with ``m = min(k, n-k)`` copies of the 2x2 example
    coupling position ``i`` of the leading block to position ``i`` of the
    trailing block; the remaining diagonal is ``(1+i)``.

    Its Fischer ratio at split ``k`` is ``example_ratio(epsilon) ** m``.
    """
    if not isinstance(params, ExampleParams):
        params = ExampleParams(params)
    if not 1 <= k <= n - 1:
        raise ValueError(f"block size k={k} out of range 1..{n - 1}")
    m = min(k, n - k)
    A = (1 + 1j) * np.eye(n, dtype=np.complex128)
    d = (1 + params.epsilon) * (1 + 1j)
    for i in range(m):
        p, q = i, k + i
        A[p, p] = A[q, q] = d
        A[p, q] = A[q, p] = 1j - 1
    return A


def example_family_block(params, m):
    """``2m x 2m`` interleaved direct sum of ``m`` copies of the example,
    arranged so the split ``k = m`` cuts every copy across the two blocks."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return paired_example(params, 2 * m, m)


def ad_corpus(count, seed, n_values=range(2, 9), cond_range=(1.0, 1e3)):
    """Yield ``(index, A)`` for ``count`` random accretive-dissipative matrices.

    Order, style and condition target of both Cartesian parts are drawn
    from the stream ``(seed, index, 0)``; the parts themselves use
    ``(seed, index, 1)`` and ``(seed, index, 2)``.
    """
    n_values = list(n_values)
    lo, hi = np.log10(cond_range[0]), np.log10(cond_range[1])
    for i in range(count):
        rng = rng_for(seed, i, 0)
        n = int(rng.choice(n_values))
        specs = []
        for part in (1, 2):
            style = STYLES[int(rng.integers(len(STYLES)))]
            cond = float(10 ** rng.uniform(lo, hi))
            sub_seed = int(rng_for(seed, i, part).integers(2 ** 63))
            specs.append(GenSpec(n=n, seed=sub_seed, condition_target=cond, style=style))
        yield i, sample_ad(*specs)
