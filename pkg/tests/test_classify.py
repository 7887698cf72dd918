import math
import random
from fractions import Fraction

import pytest

import tspdom as t
from tspdom.classify import (
    KIND_DENSE,
    KIND_REGULAR,
    KIND_SPARSE,
    KIND_UNCLASSIFIED,
    dense_conditions,
    sparse_density_threshold,
)
from tspdom.instance import Instance01, all_edges
from tspdom.matching import matching_weight_01, min_weight_optimal_matching_01
from helpers import complement_instance, random_instance

EPS = 1 / 28


class TestMEps:
    def test_zero_density_single_term(self):
        for n in (10, 100, 1000):
            assert t.m_eps(n, 0.0, EPS) == pytest.approx(
                40 * (EPS + math.sqrt(EPS)) * math.log(n)
            )

    def test_pinned_large(self):
        assert t.m_eps(10**6, 0.5, EPS) == pytest.approx(23751.08293725627)

    def test_closed_form_point(self):
        # n = e, d = 1, eps = 1: 80 + 40 sqrt(e)
        assert t.m_eps(math.e, 1.0, 1.0) == pytest.approx(80 + 40 * math.sqrt(math.e))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            t.m_eps(100, 0.5, 0.0)
        with pytest.raises(ValueError):
            t.m_eps(100, 1.5, 0.1)


class TestCorollaryThresholds:
    def test_pinned_large(self):
        f, g = t.corollary_thresholds(10**6, EPS)
        assert f == pytest.approx(14.802332740676013)
        assert g == pytest.approx(2762.6202531110775)
        assert f > 1  # vacuous at this n

    def test_f_monotone_decreasing_by_doubling(self):
        for n in range(8, 4000, 37):
            f1, _ = t.corollary_thresholds(n, EPS)
            f2, _ = t.corollary_thresholds(2 * n, EPS)
            assert f2 < f1

    def test_closed_form_point(self):
        f, _ = t.corollary_thresholds(math.exp(7), 1e-12)
        assert f == pytest.approx(1e4 * 7 * math.exp(-14 / 3), rel=1e-9)


class TestClassify:
    def test_all_zero_is_sparse(self):
        cls = t.classify(Instance01(20, frozenset()))
        assert cls.kind == KIND_SPARSE and cls.d == 0

    def test_all_ones_unclassified_at_desk_scale(self):
        # r = m_eps(n, 0) makes 46 r far exceed n^(1/2 - eps) until n ~ 1e8,
        # so the dense conditions cannot fire here
        inst = Instance01.from_edges(100, all_edges(100))
        cls = t.classify(inst)
        assert cls.kind == KIND_UNCLASSIFIED
        assert cls.min_matching_weight == 50

    def test_dense_conditions_scalar_large_n(self):
        # all-ones at n = 1e6: minimum matching weight is exactly d n / 2
        n = 10**6
        r = t.m_eps(n, 0.0, EPS)
        ok, why = dense_conditions(n, Fraction(1), r, EPS, n // 2)
        assert not ok and "46r" in why
        assert 46 * r == pytest.approx(5711.906802097625)
        assert n ** (0.5 - EPS) == pytest.approx(610.5402296585326)

    def test_dense_conditions_scalar_fires_at_huge_n(self):
        n = 10**9
        r = t.m_eps(n, 0.0, EPS)
        ok, _ = dense_conditions(n, Fraction(1), r, EPS, n // 2)
        assert ok

    def test_regular_with_tiny_eps(self):
        inst = t.gen_bernoulli(100, 0.5, 3)
        cls = t.classify(inst, 1e-6)
        assert cls.kind == KIND_REGULAR and cls.witness == "density"
        assert cls.min_matching_weight == 0

    def test_dense_star_instance(self):
        # zero-graph = spanning star: minimum matching weight equals d n / 2
        n = 400
        inst = complement_instance(n, [(0, v) for v in range(1, n)])
        cls = t.classify(inst, 1e-7)
        assert cls.kind == KIND_DENSE
        assert cls.r is not None and 0 < cls.r < 1

    def test_sparse_threshold(self):
        n = 225
        inst = Instance01.from_edges(n, [(0, 1), (0, 2), (1, 2)])
        cls = t.classify(inst)
        assert cls.kind == KIND_SPARSE
        assert float(cls.d) <= sparse_density_threshold(n, EPS)

    def test_soundness_recheck(self):
        rng = random.Random(99)
        for _ in range(60):
            n = rng.randint(8, 30)
            inst = random_instance(n, rng.random(), rng)
            eps = rng.choice([EPS, 1e-3, 1e-6])
            cls = t.classify(inst, eps)
            mw = matching_weight_01(inst, min_weight_optimal_matching_01(inst))
            assert cls.min_matching_weight == mw
            half = float(cls.d * n / 2)
            if cls.kind == KIND_REGULAR:
                side = float(cls.d) if cls.witness == "density" else float(1 - cls.d)
                assert mw <= half - t.m_eps(n, side, eps)
            elif cls.kind == KIND_SPARSE:
                assert cls.d <= sparse_density_threshold(n, eps)
            elif cls.kind == KIND_DENSE:
                assert 1 - cls.d <= Fraction(1, 12)
                assert mw >= half - cls.r
                dbar = float(1 - cls.d)
                assert 6 * dbar**2 * (n + 1) + 46 * cls.r + 3 * dbar <= n ** (0.5 - eps)

    def test_deterministic(self):
        inst = t.gen_bernoulli(40, 0.4, 5)
        assert t.classify(inst) == t.classify(inst)

    def test_sparse_no_reentry_under_density_sweep(self):
        # planted cliques of growing size: once the sparse region is left it
        # is never re-entered
        n = 30
        for eps in (EPS, 1e-3):
            flags = []
            for r in range(2, n + 1):
                inst = t.gen_planted_clique(n, r)
                flags.append(t.classify(inst, eps).kind == KIND_SPARSE)
            left = False
            for flag in flags:
                if left:
                    assert not flag
                if not flag:
                    left = True

    def test_small_random_self_consistency(self):
        inst = t.gen_bernoulli(12, 0.5, 77)
        cls = t.classify(inst)
        assert cls.kind in (KIND_REGULAR, KIND_DENSE, KIND_SPARSE, KIND_UNCLASSIFIED)
