import numpy as np
import pytest

from adfischer.ad_matrix import partition
from adfischer.generation import example_family
from adfischer.inequalities import fischer_ratio
from adfischer.search import (SearchConfig, _climb, conjecture_scan,
                              leibniz_det, maximize_ratio, reverify_ratio,
                              witness_ratio)
from oracles import leibniz, random_ad


class TestConfig:
    @pytest.mark.parametrize("kwargs", [dict(restarts=0), dict(shrink=1.0), dict(shrink=0.0),
                                        dict(pd_floor=0.0), dict(k=2), dict(steps_per_restart=-1)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**{"n": 2, "k": 1, **kwargs})


class TestMaximize:
    def test_zero_steps_returns_seed(self):
        cfg = SearchConfig(n=2, k=1, restarts=1, steps_per_restart=0,
                           seed_points=(example_family(1.0),))
        res = maximize_ratio(cfg)
        assert res.best_rho == pytest.approx(1.25, rel=1e-12)
        np.testing.assert_array_equal(res.witness, example_family(1.0))

    def test_rediscovers_limit(self):
        cfg = SearchConfig(n=2, k=1, restarts=4, steps_per_restart=1500, seed=3,
                           seed_points=(example_family(0.5),))
        res = maximize_ratio(cfg)
        assert res.best_rho >= 1.99
        assert res.best_rho <= 2 + 1e-9

    def test_witness_is_certified(self):
        cfg = SearchConfig(n=4, k=2, restarts=2, steps_per_restart=500, seed=5)
        res = maximize_ratio(cfg)
        assert witness_ratio(res, 2) == pytest.approx(res.best_rho, rel=1e-12)
        assert res.best_rho <= 4 + 1e-9
        assert res.best_rho >= 1.0
        assert res.conjecture_margin == pytest.approx(4 - res.best_rho)
        assert len(res.trajectory) == 2

    def test_deterministic(self):
        cfg = SearchConfig(n=3, k=1, restarts=3, steps_per_restart=300, seed=11)
        a, b = maximize_ratio(cfg), maximize_ratio(cfg)
        assert a.best_rho == b.best_rho and a.trajectory == b.trajectory
        assert a.witness.tobytes() == b.witness.tobytes()

    def test_restarts_are_independent(self):
        # restart r depends only on (seed, r), not on how many restarts run
        big = maximize_ratio(SearchConfig(n=3, k=1, restarts=4, steps_per_restart=200, seed=2))
        small = maximize_ratio(SearchConfig(n=3, k=1, restarts=2, steps_per_restart=200, seed=2))
        assert big.trajectory[:2] == small.trajectory

    def test_monotone_incumbent(self):
        cfg = SearchConfig(n=3, k=1, restarts=1, seed=4)
        values = [_climb(SearchConfig(n=3, k=1, restarts=1, steps_per_restart=s, seed=4), 0)[0]
                  for s in (0, 50, 100, 200, 400)]
        assert values == sorted(values)
        assert cfg.restarts == 1

    def test_pd_floor_caps_ratio(self):
        loose = maximize_ratio(SearchConfig(n=2, k=1, restarts=2, steps_per_restart=1500,
                                            seed=1, pd_floor=1e-2))
        # the floor keeps eigenvalue ratios of B and C bounded away from zero
        assert loose.best_rho < 2 - 1e-3


class TestReverify:
    def test_leibniz_matches_oracle(self, rng):
        for n in range(1, 5):
            M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert leibniz_det(M) == pytest.approx(leibniz(M), rel=1e-12)

    @pytest.mark.parametrize("n,k", [(3, 1), (6, 2)])
    def test_reverify(self, rng, n, k):
        A = random_ad(rng, n)
        assert reverify_ratio(A, k) == pytest.approx(fischer_ratio(partition(A, k)), rel=1e-12)


class TestScan:
    def test_small_scan(self, tmp_path):
        tmpl = SearchConfig(n=2, k=1, restarts=2, steps_per_restart=300, seed=1)
        cells = conjecture_scan(4, tmpl, witness_dir=str(tmp_path))
        assert [(c.n, c.k) for c in cells] == [(2, 1), (3, 1), (4, 1), (4, 2)]
        for c in cells:
            assert 1.0 <= c.result.best_rho <= c.result.bound_set.lin_a + 1e-9
            assert c.flagged == (c.result.best_rho > c.result.bound_set.conjecture + 1e-9)

    def test_n_max_invalid(self):
        with pytest.raises(ValueError):
            conjecture_scan(1)

    def test_flagged_witness_persisted(self, tmp_path, monkeypatch):
        # force the flag path by pretending the conjecture bound is tiny
        import adfischer.search as search
        from adfischer.inequalities import BoundSet
        from adfischer.reports import read_matrix

        real = search.bounds_for

        def fake(n, k):
            bs = real(n, k)
            return BoundSet(bs.n, bs.k, bs.l, bs.m, bs.fischer, bs.ikramov, bs.lin_a, 0.5)

        monkeypatch.setattr(search, "bounds_for", fake)
        tmpl = SearchConfig(n=2, k=1, restarts=2, steps_per_restart=50, seed=1)
        cells = conjecture_scan(2, tmpl, witness_dir=str(tmp_path))
        cell = cells[0]
        assert cell.flagged
        assert cell.verified_rho == pytest.approx(cell.result.best_rho, rel=1e-12)
        W = read_matrix(cell.witness_path)
        assert W.tobytes() == cell.result.witness.tobytes()
