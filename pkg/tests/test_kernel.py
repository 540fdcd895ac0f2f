"""Smoothing-kernel quantities: closed-form spot checks, the inequality
chain, and the finite-difference total-variation certification."""

import math

import numpy as np
import pytest

from macroball.errors import DegenerateKernelError, UnsupportedDimError
from macroball.hypgeom import from_spatial, geodesic_point, origin, tangent_vector, v_hyp
from macroball.kernel import (
    KernelParams,
    chain_check,
    deriv_bound,
    f_of_R,
    fd_derivative_check,
    kernel_I,
    kernel_mass,
    lambda_min,
    tv_distance,
)

# Frozen closed forms at (n=2, lambda=1, R=2):
#   I    = 2 pi e^2 (3/4 + e^-4/4)
#   mass = e^-2 (I - V(2)),  V(2) = 2 pi (cosh 2 - 1)
I_212 = 35.032690701838899
MASS_212 = 2.392362851680844
DB_212 = 1.981789307313034
LMIN_22 = 2.319670555596391          # log(2 V(2) / V(1))
LMIN_21 = 4.282602297840317          # 2 log(2 V(1) / V(0.5))
F_21 = 8.565204595680635             # 4 log(2 V(1) / V(0.5))


class TestKernelI:
    def test_vanishing_decay_reduces_to_volume(self):
        p = KernelParams(2, 1e-10, 1.0)
        assert kernel_I(p) == pytest.approx(v_hyp(2, 1.0), rel=1e-6)

    def test_closed_form(self):
        assert kernel_I(KernelParams(2, 1.0, 2.0)) == pytest.approx(I_212, rel=1e-9)

    @pytest.mark.parametrize("n,lam,r", [(2, 0.5, 0.5), (3, 2.0, 4.0), (4, 10.0, 8.0)])
    def test_dominates_weighted_halfball(self, n, lam, r):
        p = KernelParams(n, lam, r)
        assert kernel_I(p) >= math.exp(0.5 * lam * r) * v_hyp(n, r / 2.0)

    def test_bad_params(self):
        with pytest.raises(ValueError):
            KernelParams(2, 0.0, 1.0)
        with pytest.raises(ValueError):
            KernelParams(2, 1.0, -1.0)


class TestKernelMass:
    def test_closed_form(self):
        assert kernel_mass(KernelParams(2, 1.0, 2.0)) == pytest.approx(MASS_212, rel=1e-8)

    def test_below_ball_volume_for_large_decay(self):
        mass = kernel_mass(KernelParams(2, 10.0, 1.0))
        assert 0.0 < mass < v_hyp(2, 1.0)

    def test_monotone_decay(self):
        assert (kernel_mass(KernelParams(2, 50.0, 1.0))
                < kernel_mass(KernelParams(2, 10.0, 1.0)))

    def test_degenerate_for_tiny_decay(self):
        with pytest.raises(DegenerateKernelError):
            kernel_mass(KernelParams(2, 1e-10, 1.0))


class TestDerivBound:
    def test_closed_form(self):
        assert deriv_bound(KernelParams(2, 1.0, 2.0)) == pytest.approx(DB_212, rel=1e-8)

    @pytest.mark.parametrize("n,r", [(2, 1.0), (2, 2.0), (3, 1.5), (4, 4.0)])
    def test_two_lambda_once_decay_sufficient(self, n, r):
        lam = lambda_min(n, r) * 1.000001
        assert deriv_bound(KernelParams(n, lam, r)) <= 2.0 * lam * (1.0 + 1e-9)


class TestLambdaMinAndF:
    def test_frozen_values(self):
        assert lambda_min(2, 2.0) == pytest.approx(LMIN_22, rel=1e-10)
        assert lambda_min(2, 1.0) == pytest.approx(LMIN_21, rel=1e-10)
        assert f_of_R(2, 1.0) == pytest.approx(F_21, rel=1e-10)

    @pytest.mark.parametrize("n,r", [(2, 1.0), (3, 2.0), (5, 0.7)])
    def test_ratio_identity(self, n, r):
        from macroball.hypgeom import v_ratio_halved
        lhs = r * lambda_min(n, r) / 2.0 - math.log(2.0)
        assert lhs == pytest.approx(math.log(v_ratio_halved(n, r)), abs=1e-12)

    @pytest.mark.parametrize("n,r", [(2, 0.5), (3, 1.0), (4, 7.0), (6, 2.5)])
    def test_f_is_twice_lambda_min(self, n, r):
        assert f_of_R(n, r) == pytest.approx(2.0 * lambda_min(n, r), rel=1e-12)

    @pytest.mark.parametrize("n", (2, 3, 4, 5))
    def test_large_radius_limit(self, n):
        want = 2.0 * (n - 1) + 4.0 * math.log(2.0) / 100.0
        assert abs(f_of_R(n, 100.0) - want) <= 2e-3

    @pytest.mark.parametrize("n", (2, 3, 4))
    def test_small_radius_law(self, n):
        r = 1e-3
        assert abs(r * f_of_R(n, r) - 4.0 * (n + 1) * math.log(2.0)) <= 1e-3


class TestChainCheck:
    def test_decay_above_threshold(self):
        rep = chain_check(KernelParams(2, 3.0, 2.0))
        assert rep.two_lambda_ok is True
        assert rep.deriv_bound <= 6.0
        assert all(e.holds for e in rep.chain_inequalities)

    def test_decay_below_threshold(self):
        rep = chain_check(KernelParams(2, 1.0, 2.0))
        assert rep.two_lambda_ok is None  # hypothesis lambda >= lambda_min fails
        first = rep.chain_inequalities[0]
        assert first.name == "weighted_integral_dominates_halfball" and first.holds

    def test_grid_member(self):
        rep = chain_check(KernelParams(3, 5.0, 4.0))
        assert rep.two_lambda_ok is True
        assert all(e.holds for e in rep.chain_inequalities)

    def test_mass_consistency_invariant(self):
        rep = chain_check(KernelParams(3, 2.0, 1.5))
        want = math.exp(-2.0 * 1.5) * (rep.I - rep.ball_vol)
        assert rep.mass == pytest.approx(want, rel=1e-8)

    def test_entries_internally_consistent(self):
        rep = chain_check(KernelParams(2, 5.0, 1.0))
        for e in rep.chain_inequalities:
            if e.relation == ">=":
                assert e.holds == (e.lhs >= e.rhs)
            else:
                assert e.holds == (e.lhs <= e.rhs * (1.0 + 1e-9))


class TestTvDistance:
    def test_identical_centers(self):
        p = KernelParams(2, 3.0, 2.0)
        y = origin(2)
        assert tv_distance(p, y, y) == 0.0

    def test_disjoint_supports(self):
        p = KernelParams(2, 3.0, 2.0)
        y = origin(2)
        far = geodesic_point(y, np.array([0.0, 1.0, 0.0]), 4.5)
        assert tv_distance(p, y, far) == 2.0

    def test_unsupported_dim(self):
        with pytest.raises(UnsupportedDimError):
            tv_distance(KernelParams(4, 1.0, 1.0), origin(4), origin(4))

    def test_homogeneity(self):
        # depends only on the distance between centers, not the pair
        p = KernelParams(2, 3.0, 2.0)
        rng = np.random.default_rng(31)
        sep = 0.5
        vals = []
        for _ in range(3):
            base = from_spatial(rng.uniform(-1.0, 1.0, size=2))
            u = tangent_vector(base, rng.uniform(-1.0, 1.0, size=2))
            vals.append(tv_distance(p, base, geodesic_point(base, u, sep)))
        assert max(vals) - min(vals) < 1e-6

    def test_bounded_by_two(self):
        p = KernelParams(3, 1.0, 1.0)
        y = origin(3)
        near = geodesic_point(y, np.array([0.0, 1.0, 0.0, 0.0]), 1.2)
        assert 0.0 < tv_distance(p, y, near) < 2.0


class TestFdDerivativeCheck:
    @pytest.mark.parametrize("n,lam,r,h", [
        (2, 1.0, 1.0, 1e-3),
        (2, 3.0, 2.0, 1e-3),
        (3, 2.0, 1.5, 2e-3),
    ])
    def test_bound_certified(self, n, lam, r, h):
        res = fd_derivative_check(KernelParams(n, lam, r), h)
        assert res.holds
        assert res.fd_norm_rate <= res.bound * 1.05 + 1e-7 / h

    def test_rate_converges_under_halving(self):
        p = KernelParams(2, 3.0, 2.0)
        rates = [fd_derivative_check(p, h).fd_norm_rate for h in (8e-3, 4e-3, 2e-3)]
        d1 = abs(rates[0] - rates[1])
        d2 = abs(rates[1] - rates[2])
        assert d2 < d1

    def test_step_validation(self):
        p = KernelParams(2, 1.0, 1.0)
        with pytest.raises(ValueError):
            fd_derivative_check(p, 0.0)
        with pytest.raises(ValueError):
            fd_derivative_check(p, 0.1)
