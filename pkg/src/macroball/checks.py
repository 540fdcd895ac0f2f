"""Verification suite: every certified inequality and asymptotic, evaluated
against independent closed-form oracles where one exists.

Each check compares a library code path against either an analytic closed
form (dimension 2 and 3 ball volumes have elementary antiderivatives), a
stated limit law, or a definitional identity, and reports the worst margin
observed over its grid.  Checks are pure functions of the configuration,
so a fixed configuration yields byte-identical reports.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import constants as cn
from .config import Config
from .extremal import sup_on_ray
from .hypgeom import geodesic_point, log_v_hyp, origin, v_hyp
from .kernel import (
    KernelParams,
    deriv_bound,
    lambda_min,
    log_kernel_I,
    tv_distance,
)

LOG2 = math.log(2.0)

# Fixture externals for identity checks in dimensions where the ideal
# simplex volume is an external input.  The simplex numbers are test
# fixtures, not literature claims: the identities they feed are exact for
# any positive value.
FIXTURE_SIMPLEX = {4: 0.2689, 5: 0.21, 6: 0.17}
FIXTURE_CROKE_ONE = {n: 1.0 for n in range(2, 7)}

V3_REFERENCE = 1.0149416  # regular ideal tetrahedron volume, 3 * Lob(pi/3)


@dataclass(frozen=True)
class CheckResult:
    id: str
    suite: str
    description: str
    statement: str
    status: str  # "pass" | "fail" | "skipped"
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class VerificationOutcome:
    suite: str
    checks: list[CheckResult]

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0


# --------------------------------------------------------------------------
# Closed-form oracles (independent of the quadrature pipeline)
# --------------------------------------------------------------------------


def closed_form_volume(n: int, r):
    """Elementary ball volumes: 2 pi (cosh r - 1) in dimension 2,
    pi (sinh 2r - 2r) in dimension 3.  Accepts scalars or arrays."""
    r = np.asarray(r, dtype=float)
    if n == 2:
        return 2.0 * np.pi * (np.cosh(r) - 1.0)
    if n == 3:
        return np.pi * (np.sinh(2.0 * r) - 2.0 * r)
    raise ValueError("closed forms exist only for n in {2, 3}")


def _log_closed_volume(n: int, r):
    return np.log(closed_form_volume(n, r))


def _closed_f(n: int, r):
    r = np.asarray(r, dtype=float)
    return (4.0 / r) * (LOG2 + _log_closed_volume(n, r) - _log_closed_volume(n, r / 2.0))


def _closed_g(n: int, r):
    r = np.asarray(r, dtype=float)
    return np.exp(_log_closed_volume(n, r) - _log_closed_volume(n, r / 2.0)
                  - 0.5 * (n - 1) * r)


def _closed_lambda_gauge(n: int, c3: float, r):
    r = np.asarray(r, dtype=float)
    return (2.0 / ((n - 1) * r)) * (_log_closed_volume(n, r) - math.log(c3))


def _scan(a: float, b: float, step: float = 1e-4) -> np.ndarray:
    count = max(int(round((b - a) / step)), 1)
    return a + step * np.arange(count + 1)


# --------------------------------------------------------------------------
# Criteria
# --------------------------------------------------------------------------


def check_closed_form_volume_oracles(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["closed_form_volume_oracles"]
    worst = -math.inf
    worst_pair = (0.0, 0.0)
    for n in (2, 3):
        for r in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            got = v_hyp(n, r, cfg.quad_tol)
            want = float(closed_form_volume(n, r))
            rel = abs(got - want) / want
            if rel > worst:
                worst, worst_pair = rel, (got, want)
    return CheckResult(
        id="closed_form_volume_oracles",
        suite="hypgeom",
        description=("ball volumes vs elementary antiderivatives, "
                     "n in {2,3}, R in {0.1,0.5,1,2,5,10}"),
        statement="|v_hyp(n,R) - closed_form(n,R)| <= tol * closed_form(n,R)",
        status="pass" if worst <= tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


def check_f_large_r_limit(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["f_large_r_limit"]
    worst = -math.inf
    worst_pair = (0.0, 0.0)
    for n in (2, 3, 4, 5):
        got = cn.f_of_R(n, 100.0, cfg.quad_tol)
        want = 2.0 * (n - 1) + 4.0 * LOG2 / 100.0
        dev = abs(got - want)
        if dev > worst:
            worst, worst_pair = dev, (got, want)
    return CheckResult(
        id="f_large_r_limit",
        suite="asymptotics",
        description="large-radius law of the derivative budget, n in {2..5} at R=100",
        statement="|f(100) - 2(n-1) - 4 log2 / 100| <= tol",
        status="pass" if worst <= tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


def check_f_small_r_law(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["f_small_r_law"]
    r = 1e-3
    worst = -math.inf
    worst_pair = (0.0, 0.0)
    for n in (2, 3, 4):
        got = r * cn.f_of_R(n, r, cfg.quad_tol)
        want = 4.0 * (n + 1) * LOG2
        dev = abs(got - want)
        if dev > worst:
            worst, worst_pair = dev, (got, want)
    return CheckResult(
        id="f_small_r_law",
        suite="asymptotics",
        description="small-radius law of the derivative budget, n in {2..4} at R=1e-3",
        statement="|R f(R) - 4 (n+1) log 2| <= tol at R = 1e-3",
        status="pass" if worst <= tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


def check_chain_halfball_inequality(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["chain_halfball_inequality"]
    worst = math.inf
    worst_pair = (0.0, 0.0)
    count = 0
    for n in cfg.dims:
        for lam in cfg.lambda_values:
            for r in cfg.r_values:
                p = KernelParams(n, lam, r)
                log_i = log_kernel_I(p, cfg.quad_tol)
                log_a = 0.5 * lam * r + log_v_hyp(n, r / 2.0, cfg.quad_tol)
                margin = log_i - log_a
                count += 1
                if margin < worst:
                    worst, worst_pair = margin, (log_i, log_a)
    return CheckResult(
        id="chain_halfball_inequality",
        suite="kernel",
        description=(f"weighted ball integral dominates exp(lambda R/2) V(R/2) "
                     f"on the {count}-point grid (log-space margin)"),
        statement="I(lambda,R) >= exp(lambda R / 2) V(R/2) with nonnegative margin",
        status="pass" if worst >= -tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=worst,
    )


def check_two_lambda_bound(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["two_lambda_bound"]
    lams = list(cfg.lambda_values)
    qualifying: list[tuple[int, float, float]] = []
    extension = 20.0
    while True:
        qualifying = [
            (n, lam, r)
            for n in cfg.dims
            for lam in lams
            for r in cfg.r_values
            if lam >= lambda_min(n, r, cfg.quad_tol)
        ]
        if len(qualifying) >= 30:
            break
        # Grid too small to exercise the hypothesis; enlarge deterministically.
        lams.append(extension)
        extension *= 2.0
    worst = math.inf
    worst_pair = (0.0, 0.0)
    for n, lam, r in qualifying:
        db = deriv_bound(KernelParams(n, lam, r), cfg.quad_tol)
        rel_margin = (2.0 * lam - db) / (2.0 * lam)
        if rel_margin < worst:
            worst, worst_pair = rel_margin, (db, 2.0 * lam)
    return CheckResult(
        id="two_lambda_bound",
        suite="kernel",
        description=(f"derivative bound below 2 lambda at all {len(qualifying)} grid "
                     f"points with lambda >= lambda_min (relative margin)"),
        statement="deriv_bound <= 2 lambda (1 + tol) whenever lambda >= lambda_min",
        status="pass" if worst >= -tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=worst + tol,
    )


FD_POINTS = ((2, 1.0, 1.0), (2, 3.0, 2.0), (3, 2.0, 1.5))
FD_STEPS = (4e-3, 2e-3, 1e-3)


def check_fd_derivative_certification(cfg: Config) -> CheckResult:
    slack = cfg.criteria_tolerances["fd_derivative_certification"]
    worst = math.inf
    worst_pair = (0.0, 0.0)
    converged = True
    holds_all = True
    for n, lam, r in FD_POINTS:
        p = KernelParams(n, lam, r)
        base = origin(n)
        direction = np.zeros(n + 1)
        direction[1] = 1.0
        rates = []
        for h in FD_STEPS:
            shifted = geodesic_point(base, direction, h)
            rates.append(tv_distance(p, base, shifted, cfg.quad_tol) / h)
        d1 = abs(rates[0] - rates[1])
        d2 = abs(rates[1] - rates[2])
        if d2 > d1 + 1e-9:
            converged = False
        bound = deriv_bound(p, cfg.quad_tol)
        allowed = bound * (1.0 + slack) + 1e-7 / FD_STEPS[-1]
        if rates[-1] > allowed:
            holds_all = False
        margin = allowed - rates[-1]
        if margin < worst:
            worst, worst_pair = margin, (rates[-1], allowed)
    return CheckResult(
        id="fd_derivative_certification",
        suite="kernel",
        description=("finite-difference TV rate within the derivative bound at "
                     "(n,lambda,R) in {(2,1,1),(2,3,2),(3,2,1.5)}, h=1e-3, with "
                     "decreasing step-halving differences"),
        statement=("tv(h)/h <= deriv_bound (1 + slack) + quadrature tolerance, "
                   "successive rate differences decrease"),
        status="pass" if (holds_all and converged) else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=worst,
    )


def check_c_n_floor(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["c_n_floor"]
    worst_log = math.inf
    worst_pair = (0.0, 0.0)
    for n in range(2, 7):
        for r in np.geomspace(2.0, 200.0, 100):
            log_g = (log_v_hyp(n, float(r), cfg.quad_tol)
                     - log_v_hyp(n, float(r) / 2.0, cfg.quad_tol)
                     - 0.5 * (n - 1) * float(r))
            if log_g < worst_log:
                worst_log, worst_pair = log_g, (math.exp(log_g), 1.0)
    floor_ok = worst_log >= math.log1p(-tol)
    inf_ok = True
    for n in range(2, 7):
        res = cn.compute_c_n(n, cfg.extremal_tol, max_ray_cut=cfg.max_ray_cut)
        if not (res.at_infinity and abs(res.value - 1.0) <= 1e-6):
            inf_ok = False
    return CheckResult(
        id="c_n_floor",
        suite="constants",
        description=("halved-radius volume gauge stays >= 1 - tol at 100 "
                     "geometric radii in [2,200], n in {2..6}; certified "
                     "infimum is 1 attained at infinity"),
        statement="g_n(R) >= 1 - tol for all R >= 2; inf g_n = 1 at infinity",
        status="pass" if (floor_ok and inf_ok) else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=worst_log - math.log1p(-tol),
    )


def _lambda_law_fixture() -> cn.ExternalConstants:
    # c'_n chosen so c''' equals the volume growth prefactor K_n exactly:
    # the gauge's asymptotic correction term then vanishes and its approach
    # to the limit 2 is visible at finite radius.
    return cn.ExternalConstants(
        croke_cprime={n: math.exp(cn.log_growth_prefactor(n)) * 2.0 ** n
                      for n in (2, 3)},
    )


def check_lambda_n_law(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["lambda_n_law"]
    fixture = _lambda_law_fixture()
    worst = -math.inf
    worst_pair = (0.0, 0.0)
    consistent = True
    for n in (2, 3):
        rep = cn.compute_beta_n(n, fixture, cfg.extremal_tol,
                                max_ray_cut=cfg.max_ray_cut)
        gauge = cn.lambda_gauge(n, rep.c_triple_prime_n)
        dev = abs(gauge(200.0) - 2.0)
        if dev > worst:
            worst, worst_pair = dev, (gauge(200.0), 2.0)
        if rep.lambda_n < 2.0:
            consistent = False
        if rep.lambda_clamped and rep.lambda_n != 2.0:
            consistent = False
    return CheckResult(
        id="lambda_n_law",
        suite="constants",
        description=("growth-rate gauge near its limit 2 at R=200 under fixture "
                     "externals; reported lambda_n >= 2 with consistent clamp flag"),
        statement="|gauge(200) - 2| <= tol; lambda_n >= 2; clamped iff sup below 2",
        status="pass" if (worst <= tol and consistent) else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


def _identity_externals() -> list[tuple[int, cn.ExternalConstants]]:
    default = cn.default_externals()
    fixture = cn.ExternalConstants(
        croke_cprime=FIXTURE_CROKE_ONE,
        ideal_simplex_vol_override=FIXTURE_SIMPLEX,
    )
    return [(2, default), (3, default), (4, fixture), (5, fixture), (6, fixture)]


def check_pipeline_identities(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["pipeline_identities"]
    worst = -math.inf
    worst_pair = (0.0, 0.0)
    for n, ext in _identity_externals():
        rep = cn.compute_beta_n(n, ext, cfg.extremal_tol,
                                max_ray_cut=cfg.max_ray_cut)
        ids = (
            (rep.alpha_n * math.factorial(n) * rep.C_n, 1.0),
            (rep.beta_n * rep.lambda_n ** n * rep.V_n / rep.alpha_n, 1.0),
            (rep.c_triple_prime_n / (rep.c_n.value * rep.c_prime_n * 2.0 ** -n), 1.0),
        )
        for got, want in ids:
            dev = abs(got - want)
            if dev > worst:
                worst, worst_pair = dev, (got, want)
    return CheckResult(
        id="pipeline_identities",
        suite="constants",
        description=("definitional identities of the constants chain, n in "
                     "{2,3} plus {4,5,6} under fixture externals"),
        statement=("alpha n! C = 1; beta lambda^n V = alpha; "
                   "c''' = c c' / 2^n; each to tol relative"),
        status="pass" if worst <= tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


def check_ideal_simplex_values(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["ideal_simplex_values"]
    ext = cn.default_externals()
    v2 = cn.ideal_simplex_volume(2, ext)
    v3 = cn.ideal_simplex_volume(3, ext)
    dev2 = abs(v2 - math.pi)
    dev3 = abs(v3 - V3_REFERENCE)
    ok = dev2 <= 1e-12 and dev3 <= tol
    return CheckResult(
        id="ideal_simplex_values",
        suite="constants",
        description="maximal ideal simplex volumes in dimensions 2 and 3",
        statement=f"V_2 = pi to 1e-12; V_3 = {V3_REFERENCE} within tol",
        status="pass" if ok else "fail",
        lhs=v3,
        rhs=V3_REFERENCE,
        margin=min(1e-12 - dev2, tol - dev3),
    )


def check_surface_consistency(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["surface_consistency"]
    area = 4.0 * math.pi  # genus-2 surface of curvature -1 (Gauss-Bonnet)
    rep = cn.volume_thresholds(2, cfg.externals, vol_hyp=area,
                               tol=cfg.extremal_tol)
    sv_dev = abs(rep.simplicial_volume - 4.0)
    pair_dev = abs(rep.corollary_threshold - rep.isoembolic_threshold) / rep.corollary_threshold
    ok = sv_dev <= 1e-10 and pair_dev <= tol
    return CheckResult(
        id="surface_consistency",
        suite="constants",
        description=("genus-2 surface: derived simplicial volume 4 from area "
                     "4 pi; matching thresholds on volume-consistent input"),
        statement=("vol_hyp / V_2 = 4 to 1e-10; corollary and isoembolic "
                   "thresholds agree to tol when vol_hyp = V_n ||M||"),
        status="pass" if ok else "fail",
        lhs=rep.corollary_threshold,
        rhs=rep.isoembolic_threshold,
        margin=min(1e-10 - sv_dev, tol - pair_dev),
    )


LAMBDA_SCAN_FIXTURE_C3 = 0.1


def check_optimizer_oracle_equivalence(cfg: Config) -> CheckResult:
    tol = cfg.criteria_tolerances["optimizer_oracle_equivalence"]
    worst = -math.inf
    worst_pair = (0.0, 0.0)

    def update(got: float, want: float):
        nonlocal worst, worst_pair
        dev = abs(got - want)
        if dev > worst:
            worst, worst_pair = dev, (got, want)

    for n in (2, 3):
        _, _, f_sup = cn.compute_C_alpha(n, cfg.extremal_tol,
                                         max_ray_cut=cfg.max_ray_cut)
        a, b = f_sup.window_used
        update(f_sup.value, float(np.max(_closed_f(n, _scan(a, b)))))

        c_res = cn.compute_c_n(n, cfg.extremal_tol, max_ray_cut=cfg.max_ray_cut)
        a, b = c_res.window_used
        update(c_res.value, float(np.min(_closed_g(n, _scan(a, b)))))

        gauge_sup = sup_on_ray(
            cn.lambda_gauge(n, LAMBDA_SCAN_FIXTURE_C3), 1.0, 2.0,
            cn.lambda_tail_bound(n, LAMBDA_SCAN_FIXTURE_C3), cfg.extremal_tol,
            max_ray_cut=cfg.max_ray_cut,
        )
        a, b = gauge_sup.window_used
        update(gauge_sup.value,
               float(np.max(_closed_lambda_gauge(n, LAMBDA_SCAN_FIXTURE_C3, _scan(a, b)))))

    return CheckResult(
        id="optimizer_oracle_equivalence",
        suite="constants",
        description=("ray extrema vs dense closed-form scans at step 1e-4 over "
                     "each search window: f and g gauges (n=2,3) and the "
                     "growth-rate gauge under a fixture c'''"),
        statement="|extremal result - dense grid scan| <= tol",
        status="pass" if worst <= tol else "fail",
        lhs=worst_pair[0],
        rhs=worst_pair[1],
        margin=tol - worst,
    )


REGISTRY = (
    ("hypgeom", check_closed_form_volume_oracles),
    ("asymptotics", check_f_large_r_limit),
    ("asymptotics", check_f_small_r_law),
    ("kernel", check_chain_halfball_inequality),
    ("kernel", check_two_lambda_bound),
    ("kernel", check_fd_derivative_certification),
    ("constants", check_c_n_floor),
    ("constants", check_lambda_n_law),
    ("constants", check_pipeline_identities),
    ("constants", check_ideal_simplex_values),
    ("constants", check_surface_consistency),
    ("constants", check_optimizer_oracle_equivalence),
)

SUITES = ("all", "hypgeom", "kernel", "constants", "asymptotics")


def run_checks(cfg: Config, suite: str = "all", workers: int = 4) -> VerificationOutcome:
    """Run the verification grid, fanning check evaluation across worker
    threads; results are gathered back into registry order so the outcome
    is deterministic for a fixed configuration."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    selected = [fn for s, fn in REGISTRY if suite in ("all", s)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [pool.submit(fn, cfg) for fn in selected]
        results = [f.result() for f in futures]
    return VerificationOutcome(suite=suite, checks=results)


def outcome_to_dict(outcome: VerificationOutcome, config_digest: str) -> dict:
    return {
        "suite": outcome.suite,
        "checks": [
            {
                "id": c.id,
                "description": c.description,
                "statement": c.statement,
                "status": c.status,
                "lhs": c.lhs,
                "rhs": c.rhs,
                "margin": c.margin,
            }
            for c in outcome.checks
        ],
        "summary": outcome.counts,
        "config_digest": config_digest,
    }
