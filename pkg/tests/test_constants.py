"""The constants chain: ideal simplex volumes, certified extrema, the
dependency pipeline invariants, and the volume thresholds."""

import math

import numpy as np
import pytest

from macroball.constants import (
    ExternalConstants,
    compute_beta_n,
    compute_C_alpha,
    compute_c_n,
    compute_lambda_n,
    croke_cprime_formula,
    default_externals,
    g_gauge,
    ideal_simplex_volume,
    lambda_gauge,
    log_growth_prefactor,
    volume_thresholds,
)
from macroball.errors import MissingExternalError, MissingInputError
from macroball.hypgeom import log_v_hyp

# Frozen pipeline values for n = 2 (closed-form arithmetic):
F_SUP_2 = 8.565204595680635          # 4 log(2 (cosh 1 - 1)/(cosh 1/2 - 1))
C_2 = 73.36272976586866              # F_SUP_2^2
ALPHA_2 = 6.815449773961661e-3       # 1 / (2 C_2)
G_2_AT_2 = 1.871094165579497         # (cosh 2 - 1)/(cosh 1 - 1) / e

FIXTURE = ExternalConstants(
    croke_cprime={n: 1.0 for n in range(2, 7)},
    ideal_simplex_vol_override={4: 0.2689, 5: 0.21, 6: 0.17},
)


class TestIdealSimplexVolume:
    def test_dim2_is_pi(self):
        assert ideal_simplex_volume(2, FIXTURE) == math.pi

    def test_dim3_tetrahedron(self):
        v3 = ideal_simplex_volume(3, FIXTURE)
        assert v3 == pytest.approx(1.0149416, abs=1e-5)
        assert v3 == pytest.approx(1.0149416064096536, abs=1e-11)

    def test_override_passthrough(self):
        assert ideal_simplex_volume(4, FIXTURE) == 0.2689

    def test_missing_override(self):
        with pytest.raises(MissingExternalError) as exc:
            ideal_simplex_volume(4, default_externals())
        assert "ideal_simplex_vol_override[4]" in str(exc.value)


class TestComputeCAlpha:
    def test_dim2_frozen(self):
        c, alpha, f_sup = compute_C_alpha(2)
        assert f_sup.value == pytest.approx(F_SUP_2, rel=1e-9)
        assert f_sup.arg == pytest.approx(1.0, abs=1e-9)
        assert not f_sup.at_infinity
        assert c == pytest.approx(C_2, rel=1e-8)
        assert alpha == pytest.approx(ALPHA_2, rel=1e-8)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_definitional_identity(self, n):
        c, alpha, _ = compute_C_alpha(n)
        assert alpha * math.factorial(n) * c == pytest.approx(1.0, rel=1e-12)

    def test_attainment_reported_not_assumed(self):
        _, _, f_sup = compute_C_alpha(3)
        assert f_sup.window_used[0] <= f_sup.arg <= f_sup.window_used[1]


class TestComputeCn:
    @pytest.mark.parametrize("n", (2, 3, 4))
    def test_floor_at_infinity(self, n):
        res = compute_c_n(n)
        assert res.value == pytest.approx(1.0, abs=1e-6)
        assert res.at_infinity
        assert res.arg is None

    def test_gauge_entry_value(self):
        assert g_gauge(2)(2.0) == pytest.approx(G_2_AT_2, rel=1e-9)

    @pytest.mark.parametrize("n", (2, 3))
    def test_gauge_never_below_one(self, n):
        rng = np.random.default_rng(11 + n)
        g = g_gauge(n)
        for r in rng.uniform(2.0, 100.0, size=100):
            assert g(float(r)) >= 1.0 - 1e-9


class TestComputeLambdaN:
    @pytest.mark.parametrize("n", (2, 3))
    def test_constructed_identity(self, n):
        # c''' = V(1) e^{-(n-1)} makes the gauge exactly 2 at R = 1
        c3 = math.exp(log_v_hyp(n, 1.0) - (n - 1))
        assert lambda_gauge(n, c3)(1.0) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("n", (2, 3))
    def test_asymptote_with_prefactor_correction(self, n):
        # gauge(R) - 2 - (2/((n-1)R)) log(K_n / c''') -> 0
        ext = default_externals()
        c3 = 1.0 * ext.croke_cprime[n] * 2.0 ** -n
        gauge = lambda_gauge(n, c3)
        corr = (2.0 / ((n - 1) * 200.0)) * (log_growth_prefactor(n) - math.log(c3))
        assert abs(gauge(200.0) - 2.0 - corr) <= 1e-6

    @pytest.mark.parametrize("n", (2, 3, 4))
    def test_at_least_two(self, n):
        lam, clamped = compute_lambda_n(n, 0.25)
        assert lam >= 2.0
        if clamped:
            assert lam == 2.0

    def test_rejects_nonpositive_c3(self):
        with pytest.raises(ValueError):
            compute_lambda_n(2, 0.0)


class TestComputeBetaN:
    def test_report_invariants_fixture(self):
        rep = compute_beta_n(2, FIXTURE)
        assert rep.C_n == pytest.approx(rep.f_sup.value ** 2, rel=1e-12)
        assert rep.alpha_n == pytest.approx(1.0 / (2.0 * rep.C_n), rel=1e-12)
        assert rep.c_triple_prime_n == pytest.approx(
            rep.c_n.value * rep.c_prime_n * 0.25, rel=1e-12)
        assert rep.lambda_n >= 2.0
        assert rep.beta_n == pytest.approx(
            rep.alpha_n / (rep.lambda_n ** 2 * rep.V_n), rel=1e-12)
        assert rep.entropy_threshold_ratio == pytest.approx(
            rep.alpha_n / rep.V_n, rel=1e-12)
        assert rep.isoembolic_coefficient == pytest.approx(
            rep.beta_n * rep.V_n, rel=1e-12)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_positive_across_dims(self, n):
        ext = FIXTURE if n >= 4 else default_externals()
        rep = compute_beta_n(n, ext)
        assert rep.alpha_n > 0.0 and rep.beta_n > 0.0

    @pytest.mark.parametrize("n", (2, 3, 4))
    def test_beta_bounded_by_clamp_floor(self, n):
        ext = FIXTURE if n >= 4 else default_externals()
        rep = compute_beta_n(n, ext)
        assert rep.beta_n <= rep.alpha_n / (2.0 ** n * rep.V_n) * (1.0 + 1e-12)

    def test_croke_monotonicity_sweep(self):
        reports = [
            compute_beta_n(2, ExternalConstants(croke_cprime={2: c}))
            for c in (0.5, 1.0, 2.0, 4.0, 8.0)
        ]
        c3s = [r.c_triple_prime_n for r in reports]
        lams = [r.lambda_n for r in reports]
        betas = [r.beta_n for r in reports]
        assert all(a < b for a, b in zip(c3s, c3s[1:]))
        assert all(a >= b - 1e-12 for a, b in zip(lams, lams[1:]))
        assert all(a <= b + 1e-15 for a, b in zip(betas, betas[1:]))

    def test_missing_croke(self):
        with pytest.raises(MissingExternalError) as exc:
            compute_beta_n(2, ExternalConstants(croke_cprime={3: 1.0}))
        assert "croke_cprime[2]" in str(exc.value)

    def test_provenance_tags(self):
        rep = compute_beta_n(4, FIXTURE)
        assert rep.provenance["V_n"] == "external"
        assert rep.provenance["c_prime_n"] == "external"
        assert rep.provenance["alpha_n"] == "computed"

    def test_deterministic(self):
        a = compute_beta_n(2, FIXTURE)
        b = compute_beta_n(2, FIXTURE)
        assert a == b


class TestCrokeDefaults:
    def test_formula_positive_and_below_euclidean(self):
        from macroball.numerics import sphere_volume
        for n in range(2, 9):
            c = croke_cprime_formula(n)
            assert 0.0 < c < sphere_volume(n - 1) / n  # below the euclidean ball

    def test_dim2_value(self):
        assert croke_cprime_formula(2) == pytest.approx(math.pi / 2.0, rel=1e-12)


class TestVolumeThresholds:
    def test_genus_two_surface(self):
        # area 4 pi from curvature -1 and Euler characteristic -2
        rep = volume_thresholds(2, default_externals(), vol_hyp=4.0 * math.pi)
        assert rep.simplicial_volume == pytest.approx(4.0, abs=1e-10)
        assert rep.simplicial_volume_derived
        assert rep.theorem_threshold == pytest.approx(4.0 * ALPHA_2, rel=1e-8)
        assert rep.corollary_threshold == pytest.approx(
            rep.isoembolic_threshold, rel=1e-12)

    def test_simplicial_only(self):
        rep = volume_thresholds(2, default_externals(), simplicial_volume=4.0)
        assert rep.vol_hyp is None
        assert rep.corollary_threshold is None
        assert rep.entropy_threshold is None
        assert rep.theorem_threshold is not None
        assert rep.isoembolic_threshold is not None
        assert not rep.simplicial_volume_derived

    def test_both_given(self):
        rep = volume_thresholds(2, default_externals(),
                                vol_hyp=10.0, simplicial_volume=2.0)
        assert rep.simplicial_volume == 2.0
        assert rep.entropy_threshold == pytest.approx(
            rep.constants.entropy_threshold_ratio * 10.0, rel=1e-12)

    def test_neither_given(self):
        with pytest.raises(MissingInputError):
            volume_thresholds(2, default_externals())

    def test_invalid_scalars(self):
        with pytest.raises(ValueError):
            volume_thresholds(2, default_externals(), vol_hyp=-1.0)
