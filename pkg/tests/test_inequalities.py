import math

import numpy as np
import pytest

from adfischer.ad_matrix import CartesianPair, partition, schur_complement
from adfischer.exceptions import NotPositiveDefiniteError
from adfischer.generation import example_family
from adfischer.inequalities import (bounds_for, check_all_bounds,
                                    fischer_ratio, lemma4_verify, lin_constant,
                                    schur_parts, theorem3_chain,
                                    theorem4_chain)
from adfischer.linalg_core import cholesky_pd
from oracles import (example_ratio_closed_form, random_ad, random_hpd)


def block_diagonal_ad(rng, k, l):
    A = np.zeros((k + l, k + l), dtype=complex)
    A[:k, :k] = random_ad(rng, k)
    A[k:, k:] = random_ad(rng, l)
    return A


def block_unitary(rng, k, l):
    U = np.zeros((k + l, k + l), dtype=complex)
    for sl, size in ((slice(0, k), k), (slice(k, k + l), l)):
        Q, _ = np.linalg.qr(rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size)))
        U[sl, sl] = Q
    return U


class TestBounds:
    def test_n2(self):
        bs = bounds_for(2, 1)
        assert (bs.m, bs.lin_a, bs.ikramov, bs.conjecture) == (1, 2.0, 3.0, 2.0)

    def test_boundary_m_equals_n_over_3(self):
        assert bounds_for(3, 1).lin_a == pytest.approx(2 ** 1.5)

    def test_upper_branch(self):
        assert bounds_for(6, 3).lin_a == 8.0

    def test_k_symmetric(self):
        assert bounds_for(7, 5) == bounds_for(7, 5)
        assert bounds_for(7, 5).m == bounds_for(7, 2).m == 2

    @pytest.mark.parametrize("k", [0, 5])
    def test_range(self, k):
        with pytest.raises(ValueError):
            bounds_for(5, k)

    def test_ordering(self):
        for n in range(2, 65):
            for k in range(1, n):
                bs = bounds_for(n, k)
                assert bs.ordered
                assert bs.lin_a < bs.ikramov

    def test_lin_constant_range(self):
        with pytest.raises(ValueError):
            lin_constant(4, 3)


class TestFischerRatio:
    def test_block_diagonal(self, rng):
        P = partition(block_diagonal_ad(rng, 2, 3), 2)
        assert fischer_ratio(P) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("eps", [1e-6, 1e-3, 0.01, 0.5, 1.0, 10.0])
    def test_example_closed_form(self, eps):
        rho = fischer_ratio(partition(example_family(eps), 1))
        assert rho == pytest.approx(example_ratio_closed_form(eps), rel=1e-12)

    def test_example_value_at_one(self):
        assert fischer_ratio(partition(example_family(1.0), 1)) == pytest.approx(1.25, rel=1e-15)

    def test_limit(self):
        assert abs(fischer_ratio(partition(example_family(1e-8), 1)) - 2) < 1e-7

    def test_scale_invariance(self, rng):
        for _ in range(20):
            A = random_ad(rng, 5)
            t = rng.uniform(0.01, 100)
            assert fischer_ratio(partition(t * A, 2)) == pytest.approx(
                fischer_ratio(partition(A, 2)), rel=1e-12)

    def test_block_unitary_invariance(self, rng):
        for _ in range(20):
            A = random_ad(rng, 6)
            U = block_unitary(rng, 2, 4)
            rho = fischer_ratio(partition(A, 2))
            assert fischer_ratio(partition(U.conj().T @ A @ U, 2)) == pytest.approx(rho, rel=1e-9)


class TestLemma4:
    def test_scalar_upper_tight(self):
        rep = lemma4_verify(CartesianPair(np.eye(1), np.eye(1)))
        assert rep.lhs == pytest.approx(math.sqrt(2))
        assert rep.mid == pytest.approx(2.0)
        assert rep.rhs == pytest.approx(2.0)
        assert rep.upper_margin == pytest.approx(0, abs=1e-15)
        assert rep.passed

    def test_zero_c_lower_tight(self, rng):
        B = random_hpd(rng, 4)
        rep = lemma4_verify(CartesianPair(B, np.zeros((4, 4))))
        detb = np.linalg.det(B).real
        assert rep.lhs == pytest.approx(detb, rel=1e-12)
        assert rep.mid == pytest.approx(detb, rel=1e-12)
        assert rep.rhs / 2 ** 2 == pytest.approx(detb, rel=1e-12)
        np.testing.assert_allclose(rep.lambdas, 0, atol=1e-12)
        assert rep.passed

    def test_b_equals_c(self, rng):
        B = random_hpd(rng, 5)
        rep = lemma4_verify(CartesianPair(B, B))
        np.testing.assert_allclose(rep.lambdas, 1, rtol=1e-10)
        assert abs(rep.upper_margin) <= 1e-9

    def test_random(self, rng):
        for _ in range(50):
            rep = lemma4_verify(CartesianPair(random_hpd(rng, 6), random_hpd(rng, 6)))
            assert rep.passed
            assert min(rep.lower_margin, rep.upper_margin) >= -1e-9
            assert rep.eigen_identity_residual <= 1e-9
            t = rep.scalar_checks
            assert np.all(t[:, 0] <= t[:, 1] * (1 + 1e-12))
            assert np.all(t[:, 1] <= t[:, 2] * (1 + 1e-12))

    def test_b_not_pd(self):
        with pytest.raises(NotPositiveDefiniteError):
            lemma4_verify(CartesianPair(-np.eye(2), np.eye(2)))


class TestTheorem3:
    def test_identity(self):
        rep = theorem3_chain(partition((1 + 1j) * np.eye(4), 2))
        assert rep.overall_pass and len(rep.steps) == 4
        assert rep.steps[1].margin == pytest.approx(0, abs=1e-15)

    def test_example(self):
        rep = theorem3_chain(partition(example_family(0.5), 1))
        assert rep.overall_pass
        final = rep.steps[-1]
        assert final.lhs == pytest.approx(6.5)
        assert final.rhs == pytest.approx(9.0)

    def test_steps_compose(self, rng):
        rep = theorem3_chain(partition(random_ad(rng, 5), 2))
        for a, b in zip(rep.steps[:2], rep.steps[1:3]):
            assert a.rhs == b.lhs

    def test_random(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rep = theorem3_chain(partition(random_ad(rng, n), int(rng.integers(1, n))))
            assert rep.overall_pass


class TestSchurParts:
    def test_block_diagonal(self, rng):
        P = partition(block_diagonal_ad(rng, 2, 2), 2)
        parts = schur_parts(P)
        np.testing.assert_allclose(parts.R, P.B22, atol=1e-15)
        np.testing.assert_allclose(parts.S, P.C22, atol=1e-15)

    def test_example(self):
        P = partition(example_family(1.0), 1)
        parts = schur_parts(P)
        np.testing.assert_allclose(parts.R + 1j * parts.S, schur_complement(P), rtol=1e-12)

    def test_random(self, rng):
        for _ in range(50):
            parts = schur_parts(partition(random_ad(rng, 6), 2))
            assert parts.residual <= 1e-9
            assert cholesky_pd(parts.R).is_pd and cholesky_pd(parts.S).is_pd


class TestTheorem4:
    def test_block_diagonal(self, rng):
        P = partition(block_diagonal_ad(rng, 3, 2), 3)
        rep = theorem4_chain(P)
        assert rep.overall_pass
        p6 = rep.step("B12* B11^{-1} B12 < B22")
        assert p6.margin * max(np.linalg.norm(P.B22), 1) == pytest.approx(
            np.linalg.eigvalsh(P.B22)[0], rel=1e-10)

    def test_example(self):
        rep = theorem4_chain(partition(example_family(1.0), 1))
        assert rep.overall_pass
        final = rep.steps[-1]
        assert final.rhs / (final.lhs / 1.25) == pytest.approx(2 ** 1.5)

    def test_orientation(self, rng):
        A = random_ad(rng, 5)
        assert theorem4_chain(partition(A, 2)).orientation == "swapped"
        assert theorem4_chain(partition(A, 3)).orientation == "as_given"

    def test_scalar_chain_composes(self, rng):
        rep = theorem4_chain(partition(random_ad(rng, 6), 3))
        scalar = [s for s in rep.steps if s.kind == "scalar"][:-1]
        assert len(scalar) == 5
        for a, b in zip(scalar, scalar[1:]):
            assert a.rhs == b.lhs

    def test_random(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rep = theorem4_chain(partition(random_ad(rng, n), int(rng.integers(1, n))))
            assert rep.overall_pass, rep.tightest


class TestCheckAllBounds:
    def test_example_near_limit(self):
        chk = check_all_bounds(partition(example_family(0.01), 1))
        assert chk.rho == pytest.approx(1.98029604940692, rel=1e-12)
        assert chk.conjecture_ok and chk.lin_ok and chk.ikramov_ok
        assert chk.margins["conjecture"] == pytest.approx(0.0197039505930794, rel=1e-10)

    @pytest.mark.parametrize("n,k", [(2, 1), (5, 2), (6, 3)])
    def test_scalar_identity(self, n, k):
        chk = check_all_bounds(partition((1 + 1j) * np.eye(n), k))
        assert chk.rho == pytest.approx(1.0)
        assert chk.ikramov_ok and chk.lin_ok and chk.conjecture_ok and chk.fischer_ok
