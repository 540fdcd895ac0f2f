"""Dependency pipeline from the derivative budget f to the headline
dimensional constants and the admissible-volume thresholds they imply.

    f_sup = sup f over [1, inf)       C_n = f_sup^n     alpha_n = 1/(n! C_n)
    c_n   = inf of the halved-radius volume gauge over [2, inf)
    c'''_n = c_n * c'_n / 2^n         (c'_n externally sourced, Croke [Cr80])
    lambda_n = max(sup of the volume-growth rate gauge, 2)
    beta_n = alpha_n / (lambda_n^n * V_n)

Tail envelopes for the three ray searches all come from the sandwich
(e^t/2)(1 - e^{-2t}) <= sinh t <= e^t/2, which brackets every ball volume
between explicit exponentials.  Pipeline arithmetic stays in log space
until report emission: C_n and lambda_n^n span many orders of magnitude as
the dimension grows.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import MissingExternalError, MissingInputError
from .extremal import DEFAULT_MAX_RAY_CUT, ExtremalResult, inf_on_ray, sup_on_ray
from .hypgeom import check_dim, log_v_hyp
from .kernel import f_of_R
from .numerics import lobachevsky, log_sphere_volume, sphere_volume

DEFAULT_EXTREMAL_TOL = 1e-8


@dataclass(frozen=True)
class ExternalConstants:
    """Externally-sourced constants the pipeline refuses to invent.

    croke_cprime[n] is the constant of the local volume lower bound
    vol B(r) >= c'_n r^n below half the injectivity radius (Croke,
    Proposition 14 of [Cr80]); the regular ideal simplex volume V_n has no
    elementary formula for n >= 4 and must be supplied from the literature.
    """

    croke_cprime: Mapping[int, float]
    ideal_simplex_vol_override: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        for name, table in (("croke_cprime", self.croke_cprime),
                            ("ideal_simplex_vol_override", self.ideal_simplex_vol_override)):
            for k, v in table.items():
                if not v > 0.0:
                    raise ValueError(f"{name}[{k}] must be > 0, got {v}")


def croke_cprime_formula(n: int) -> float:
    """Croke's Proposition 14 constant, 2^(n-1) s_{n-1}^n / (n^n s_n^(n-1))
    with s_k the unit k-sphere volume.  Transcribed from [Cr80]; treated as
    an external input everywhere, this formula only seeds the default
    configuration."""
    check_dim(n)
    return (2.0 ** (n - 1) * sphere_volume(n - 1) ** n
            / (float(n) ** n * sphere_volume(n) ** (n - 1)))


def default_externals() -> ExternalConstants:
    """Defaults ship Croke constants for n = 2..8 and no simplex overrides:
    dimensions above 3 fail loudly until the caller supplies V_n."""
    return ExternalConstants(
        croke_cprime={n: croke_cprime_formula(n) for n in range(2, 9)},
    )


# --------------------------------------------------------------------------
# Tail envelopes from the sinh sandwich
# --------------------------------------------------------------------------


def log_growth_prefactor(n: int) -> float:
    """log K_n where V(R) ~ K_n exp((n-1) R), K_n = s_{n-1}/(2^(n-1)(n-1))."""
    return log_sphere_volume(n - 1) - (n - 1) * math.log(2.0) - math.log(n - 1.0)


def f_limit(n: int) -> float:
    return 2.0 * (n - 1)


def f_tail_bound(n: int) -> Callable[[float], float]:
    """Decreasing envelope dominating f on [R, inf):

        2(n-1) + (4/R) [log 2 - (n-1) log(1-e^{-R/2}) - log(1-e^{-(n-1)R/4})]

    upper sinh bound on V(R), lower on V(R/2) restricted to [R/4, R/2].
    """
    m = n - 1

    def bound(r: float) -> float:
        return 2.0 * m + (4.0 / r) * (
            math.log(2.0)
            - m * math.log1p(-math.exp(-r / 2.0))
            - math.log1p(-math.exp(-m * r / 4.0))
        )

    return bound


def g_gauge(n: int) -> Callable[[float], float]:
    """The halved-radius volume gauge V(R)/V(R/2) e^{-(n-1)R/2}; at least 1
    everywhere because sinh(s + R/2) >= sinh(s) e^{R/2}, and tends to 1."""
    m = n - 1

    def g(r: float) -> float:
        return math.exp(log_v_hyp(n, r) - log_v_hyp(n, r / 2.0) - 0.5 * m * r)

    return g


def g_tail_lower_bound(n: int) -> Callable[[float], float]:
    # The shift inequality makes the constant 1 a certified floor for the
    # whole tail, and 1 is also the limit.
    return lambda r: 1.0


def lambda_gauge(n: int, c_triple_prime: float) -> Callable[[float], float]:
    """Growth-rate gauge (2 / ((n-1) R)) log(V(R) / c'''); its sup defines
    lambda_n and it tends to 2."""
    m = n - 1
    log_c3 = math.log(c_triple_prime)

    def h(r: float) -> float:
        return (2.0 / (m * r)) * (log_v_hyp(n, r) - log_c3)

    return h


def lambda_tail_bound(n: int, c_triple_prime: float) -> Callable[[float], float]:
    """Envelope 2 + (2/((n-1)R)) max(0, log(K_n / c''')) from the upper
    sinh bound V(R) <= K_n exp((n-1) R)."""
    m = n - 1
    excess = max(0.0, log_growth_prefactor(n) - math.log(c_triple_prime))
    return lambda r: 2.0 + (2.0 / (m * r)) * excess


# --------------------------------------------------------------------------
# Pipeline stages
# --------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _f_sup_cached(n: int, tol: float, max_ray_cut: float) -> ExtremalResult:
    return sup_on_ray(
        lambda r: f_of_R(n, r), 1.0, f_limit(n), f_tail_bound(n), tol,
        max_ray_cut=max_ray_cut,
    )


def compute_C_alpha(
    n: int, tol: float = DEFAULT_EXTREMAL_TOL, *,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> tuple[float, float, ExtremalResult]:
    """(C_n, alpha_n, f_sup): C_n = (sup f)^n and alpha_n = 1/(n! C_n).

    The attainment point is reported by the search, never assumed
    (empirically the sup sits at the window edge R = 1).
    """
    check_dim(n)
    f_sup = _f_sup_cached(n, tol, max_ray_cut)
    log_c = n * math.log(f_sup.value)
    c_n = math.exp(log_c)
    alpha = math.exp(-(math.lgamma(n + 1.0) + log_c))
    return c_n, alpha, f_sup


@lru_cache(maxsize=256)
def _c_n_cached(n: int, tol: float, max_ray_cut: float) -> ExtremalResult:
    return inf_on_ray(
        g_gauge(n), 2.0, 1.0, g_tail_lower_bound(n), tol,
        max_ray_cut=max_ray_cut,
    )


def compute_c_n(
    n: int, tol: float = DEFAULT_EXTREMAL_TOL, *,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> ExtremalResult:
    """Certified infimum of the halved-radius volume gauge over [2, inf).

    The analytically provable sharpening (the gauge never drops below 1) is
    used only as a test oracle, never wired into this computation.
    """
    check_dim(n)
    return _c_n_cached(n, tol, max_ray_cut)


def compute_lambda_n(
    n: int, c_triple_prime: float, tol: float = DEFAULT_EXTREMAL_TOL, *,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> tuple[float, bool]:
    """(lambda_n, clamped): sup of the growth-rate gauge over [1, inf),
    clamped below at 2 (the conformal-scaling argument needs lambda_n >= 2;
    the clamp event is flagged)."""
    check_dim(n)
    if not c_triple_prime > 0.0:
        raise ValueError("c_triple_prime must be > 0")
    s = sup_on_ray(
        lambda_gauge(n, c_triple_prime), 1.0, 2.0,
        lambda_tail_bound(n, c_triple_prime), tol,
        max_ray_cut=max_ray_cut,
    )
    clamped = s.value < 2.0
    return (2.0 if clamped else s.value), clamped


@dataclass(frozen=True)
class ConstantsReport:
    """Fully resolved constants chain for one dimension, with provenance."""

    n: int
    V_n: float
    f_sup: ExtremalResult
    C_n: float
    alpha_n: float
    c_n: ExtremalResult
    c_prime_n: float
    c_triple_prime_n: float
    lambda_n: float
    lambda_clamped: bool
    beta_n: float
    entropy_threshold_ratio: float
    isoembolic_coefficient: float
    provenance: dict


def ideal_simplex_volume(n: int, ext: ExternalConstants) -> float:
    """Maximal ideal simplex volume V_n: pi for n = 2 (ideal triangle,
    Gauss-Bonnet), three times the Lobachevsky function at pi/3 for n = 3
    (regular ideal tetrahedron), externally supplied beyond."""
    check_dim(n)
    if n == 2:
        return math.pi
    if n == 3:
        return 3.0 * lobachevsky(math.pi / 3.0)
    try:
        return float(ext.ideal_simplex_vol_override[n])
    except KeyError:
        raise MissingExternalError(f"ideal_simplex_vol_override[{n}]") from None


def compute_beta_n(
    n: int,
    ext: ExternalConstants,
    tol: float = DEFAULT_EXTREMAL_TOL,
    *,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> ConstantsReport:
    """Run the full chain alpha -> c_n -> c''' -> lambda_n -> beta_n."""
    v_n = ideal_simplex_volume(n, ext)
    c_big, alpha, f_sup = compute_C_alpha(n, tol, max_ray_cut=max_ray_cut)
    c_n_res = compute_c_n(n, tol, max_ray_cut=max_ray_cut)
    try:
        c_prime = float(ext.croke_cprime[n])
    except KeyError:
        raise MissingExternalError(f"croke_cprime[{n}]") from None

    log_c3 = math.log(c_n_res.value) + math.log(c_prime) - n * math.log(2.0)
    c3 = math.exp(log_c3)
    lam_n, clamped = compute_lambda_n(n, c3, tol, max_ray_cut=max_ray_cut)

    log_alpha = math.log(alpha)
    log_v = math.log(v_n)
    log_beta = log_alpha - n * math.log(lam_n) - log_v

    provenance = {
        "V_n": "computed" if n in (2, 3) else "external",
        "f_sup": "computed",
        "C_n": "computed",
        "alpha_n": "computed",
        "c_n": "computed",
        "c_prime_n": "external",
        "c_triple_prime_n": "computed",
        "lambda_n": "clamped" if clamped else "computed",
        "beta_n": "computed",
    }
    return ConstantsReport(
        n=n,
        V_n=v_n,
        f_sup=f_sup,
        C_n=c_big,
        alpha_n=alpha,
        c_n=c_n_res,
        c_prime_n=c_prime,
        c_triple_prime_n=c3,
        lambda_n=lam_n,
        lambda_clamped=clamped,
        beta_n=math.exp(log_beta),
        entropy_threshold_ratio=math.exp(log_alpha - log_v),
        isoembolic_coefficient=math.exp(log_beta + log_v),
        provenance=provenance,
    )


@dataclass(frozen=True)
class ThresholdReport:
    """Admissible-volume thresholds for one manifold summary.

    Fields are None when the scalar they need was not provided.
    """

    n: int
    vol_hyp: Optional[float]
    simplicial_volume: Optional[float]
    simplicial_volume_derived: bool
    theorem_threshold: Optional[float]
    corollary_threshold: Optional[float]
    isoembolic_threshold: Optional[float]
    entropy_threshold: Optional[float]
    constants: ConstantsReport


def volume_thresholds(
    n: int,
    ext: ExternalConstants,
    vol_hyp: Optional[float] = None,
    simplicial_volume: Optional[float] = None,
    tol: float = DEFAULT_EXTREMAL_TOL,
    *,
    constants: Optional[ConstantsReport] = None,
) -> ThresholdReport:
    """The four admissible-volume thresholds for scalar manifold summaries.

    With only the hyperbolic volume given, the simplicial volume is derived
    as vol_hyp / V_n (proportionality of the two volumes for hyperbolic
    manifolds).
    """
    if vol_hyp is None and simplicial_volume is None:
        raise MissingInputError("provide vol_hyp or simplicial_volume (or both)")
    if vol_hyp is not None and not vol_hyp > 0.0:
        raise ValueError("vol_hyp must be > 0")
    if simplicial_volume is not None and not simplicial_volume > 0.0:
        raise ValueError("simplicial_volume must be > 0")

    rep = constants if constants is not None else compute_beta_n(n, ext, tol)
    derived = False
    sv = simplicial_volume
    if sv is None:
        sv = vol_hyp / rep.V_n
        derived = True

    return ThresholdReport(
        n=n,
        vol_hyp=vol_hyp,
        simplicial_volume=sv,
        simplicial_volume_derived=derived,
        theorem_threshold=rep.alpha_n * sv,
        corollary_threshold=rep.beta_n * vol_hyp if vol_hyp is not None else None,
        isoembolic_threshold=rep.beta_n * rep.V_n * sv,
        entropy_threshold=(rep.entropy_threshold_ratio * vol_hyp
                           if vol_hyp is not None else None),
        constants=rep,
    )
