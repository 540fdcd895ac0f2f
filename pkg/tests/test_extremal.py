"""Certified ray extrema: worked examples with brute-force dense-grid
oracles, tail-cut behaviour, and invariance properties."""

import math

import numpy as np
import pytest

from macroball.errors import TailNeverDominatesError
from macroball.extremal import inf_on_ray, sup_on_ray

SIN1_PLUS_1 = 1.8414709848078965  # sin(1) + 1


class TestSupOnRay:
    def test_monotone_decreasing(self):
        res = sup_on_ray(lambda r: math.exp(-r), 0.0, 0.0,
                         lambda r: math.exp(-r), 1e-8)
        assert res.kind == "sup"
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.arg == 0.0
        assert not res.at_infinity
        assert res.tail_margin >= 0.0

    def test_endpoint_sup(self):
        res = sup_on_ray(lambda r: 2.0 + 1.0 / r, 1.0, 2.0,
                         lambda r: 2.0 + 1.0 / r, 1e-8)
        assert res.value == pytest.approx(3.0, abs=1e-10)
        assert res.arg == 1.0

    def test_oscillatory_with_dense_oracle(self):
        f = lambda r: math.sin(r) / r + 1.0  # noqa: E731
        res = sup_on_ray(f, 1.0, 1.0, lambda r: 1.0 + 1.0 / r, 1e-8)
        assert res.value == pytest.approx(SIN1_PLUS_1, abs=1e-8)
        assert res.arg == pytest.approx(1.0, abs=1e-6)
        # brute-force oracle: dense grid over [1, 100] at step 1e-4
        grid = 1.0 + 1e-4 * np.arange(990001)
        brute = float(np.max(np.sin(grid) / grid + 1.0))
        assert res.value == pytest.approx(brute, abs=1e-6)

    def test_sup_approached_at_infinity(self):
        # increasing toward the limit: nothing on the grid beats it
        res = sup_on_ray(lambda r: 2.0 - math.exp(-r), 1.0, 2.0,
                         lambda r: 2.0, 1e-8)
        assert res.at_infinity
        assert res.arg is None
        assert res.value == 2.0

    def test_tail_never_dominates(self):
        # converges like 1/R: the envelope cannot certify a cut by R = 100
        with pytest.raises(TailNeverDominatesError):
            sup_on_ray(lambda r: 2.0 - 1.0 / r, 1.0, 2.0,
                       lambda r: 2.0 + 1.0 / r, 1e-9, max_ray_cut=100.0)

    def test_interior_maximum_refined(self):
        f = lambda r: -(r - 2.7) ** 2 + 5.0  # noqa: E731
        tb = lambda r: 5.0 if r <= 2.7 else f(r)  # noqa: E731
        res = sup_on_ray(f, 1.0, -math.inf, tb, 1e-10)
        assert res.value == pytest.approx(5.0, abs=1e-10)
        assert res.arg == pytest.approx(2.7, abs=1e-4)


class TestInfOnRay:
    def test_inf_at_infinity(self):
        res = inf_on_ray(lambda r: 1.0 + math.exp(-r), 2.0, 1.0,
                         lambda r: 1.0, 1e-8)
        assert res.kind == "inf"
        assert res.value == 1.0
        assert res.arg is None
        assert res.at_infinity

    def test_interior_minimum(self):
        f = lambda r: (r - 3.0) ** 2 + 0.5  # noqa: E731
        # envelope of the pointwise bound: inf over [R, inf)
        tlb = lambda r: 0.5 if r <= 3.0 else f(r)  # noqa: E731
        res = inf_on_ray(f, 2.0, math.inf, tlb, 1e-8)
        assert res.value == pytest.approx(0.5, abs=1e-8)
        assert res.arg == pytest.approx(3.0, abs=1e-4)
        assert not res.at_infinity

    def test_volume_gauge_floor(self):
        # closed-form halved-radius gauge in dimension 2; the shift
        # inequality sinh(s + R/2) >= sinh(s) e^(R/2) makes 1 a certified
        # floor while the gauge tends to 1
        def g(r):
            return (math.cosh(r) - 1.0) / (math.cosh(r / 2.0) - 1.0) * math.exp(-r / 2.0)

        res = inf_on_ray(g, 2.0, 1.0, lambda r: 1.0, 1e-8)
        assert res.value == 1.0
        assert res.at_infinity
        assert res.window_used[1] > 20.0
        # brute-force oracle: the gauge never drops below 1 on [2, 200]
        grid = 2.0 + 1e-3 * np.arange(198001)
        vals = (np.cosh(grid) - 1.0) / (np.cosh(grid / 2.0) - 1.0) * np.exp(-grid / 2.0)
        assert float(vals.min()) >= 1.0 - 1e-12


class TestProperties:
    def test_sup_majorizes_window(self):
        f = lambda r: math.sin(r) / r + 1.0  # noqa: E731
        res = sup_on_ray(f, 1.0, 1.0, lambda r: 1.0 + 1.0 / r, 1e-8)
        rng = np.random.default_rng(99)
        rs = rng.uniform(res.window_used[0], res.window_used[1], size=10_000)
        assert all(res.value >= f(r) - 1e-8 for r in rs)

    def test_inf_minorizes_window(self):
        f = lambda r: (r - 3.0) ** 2 + 0.5  # noqa: E731
        tlb = lambda r: 0.5 if r <= 3.0 else f(r)  # noqa: E731
        res = inf_on_ray(f, 2.0, math.inf, tlb, 1e-8)
        rng = np.random.default_rng(100)
        rs = rng.uniform(res.window_used[0], res.window_used[1], size=10_000)
        assert all(res.value <= f(r) + 1e-8 for r in rs)

    def test_grid_doubling_invariance(self):
        f = lambda r: math.sin(r) / r + 1.0  # noqa: E731
        tb = lambda r: 1.0 + 1.0 / r  # noqa: E731
        tol = 1e-8
        coarse = sup_on_ray(f, 1.0, 1.0, tb, tol)
        fine = sup_on_ray(f, 1.0, 1.0, tb, tol, h0=0.01)
        assert abs(coarse.value - fine.value) <= 2.0 * tol

    def test_log_transform_argmax_invariance(self):
        # sup of log f and log of sup of f agree for positive f
        f = lambda r: 2.0 + 1.0 / r  # noqa: E731
        tol = 1e-9
        plain = sup_on_ray(f, 1.0, 2.0, f, tol)
        logged = sup_on_ray(lambda r: math.log(f(r)), 1.0, math.log(2.0),
                            lambda r: math.log(f(r)), tol)
        assert math.exp(logged.value) == pytest.approx(plain.value, abs=2.0 * tol)
        assert logged.arg == plain.arg

    def test_reported_window_and_counts(self):
        res = sup_on_ray(lambda r: math.exp(-r), 0.0, 0.0,
                         lambda r: math.exp(-r), 1e-8)
        a, cut = res.window_used
        assert a == 0.0 and cut >= a
        assert res.grid_points >= 1

    def test_bad_step_rejected(self):
        with pytest.raises(ValueError):
            sup_on_ray(lambda r: 1.0, 0.0, 1.0, lambda r: 1.0, 1e-8, h0=0.0)
