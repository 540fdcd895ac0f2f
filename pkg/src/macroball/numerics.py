"""Adaptive quadrature with explicit error control, plus the special functions
(sphere volumes, Lobachevsky function) everything downstream is built on.

The quadrature core is an embedded Gauss(7)/Kronrod(15) pair driven by a
worst-panel-first bisection loop, so every result carries a per-run error
estimate.  A log-space front end (`log_integrate_exp`) evaluates
log of integrals of exp(g) whose values overflow native floats.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import DepthExceededError, NonFiniteError

_EPS = 2.220446049250313e-16

# Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (QUADPACK dqk15).
# Odd-index abscissae are the embedded Gauss-7 nodes.
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
)
_WGK = (
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
)
_WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)


@dataclass(frozen=True)
class Tolerance:
    """Error target for an adaptive integration run.

    `rel` may not be tighter than 8 ulp: below that the nested-rule error
    estimator is indistinguishable from rounding noise.
    """

    rel: float = 1e-10
    abs: float = 1e-12
    max_depth: int = 60

    def __post_init__(self):
        if not self.rel >= 8 * _EPS:
            raise ValueError(f"rel tolerance {self.rel} below 8*machine epsilon")
        if not self.abs >= 0.0:
            raise ValueError("abs tolerance must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class QuadResult:
    """Value and error estimate of a definite integral.

    When `is_log` is set, `value` carries log of the integral and
    `abs_error_estimate` is the absolute error estimate of that log
    (i.e. the relative error of the underlying integral).
    """

    value: float
    abs_error_estimate: float
    evaluations: int
    is_log: bool = False

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("error estimate must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")

    @property
    def log_value(self) -> float:
        return self.value if self.is_log else math.log(self.value)


def _panel(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod 7-15 pass over [a, b]: (value, error estimate)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    if not math.isfinite(fc):
        raise NonFiniteError(f"integrand returned {fc} at t={c}")
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        dx = _XGK[i] * h
        fp = f(c + dx)
        fm = f(c - dx)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise NonFiniteError(f"integrand non-finite near t={c + dx} or t={c - dx}")
        pair = fp + fm
        kron += _WGK[i] * pair
        if i % 2 == 1:
            gauss += _WG[i // 2] * pair
    return kron * h, abs(kron - gauss) * h


def _adaptive(
    f: Callable[[float], float],
    panels: list[tuple[float, float]],
    tol: Tolerance,
) -> QuadResult:
    """Refine the worst panel until the summed error meets the target."""
    heap = []
    evaluations = 0
    total = 0.0
    total_err = 0.0
    seq = 0
    for lo, hi in panels:
        val, err = _panel(f, lo, hi)
        evaluations += 15
        heapq.heappush(heap, (-err, seq, lo, hi, val, 0))
        seq += 1
        total += val
        total_err += err

    while total_err > max(tol.abs, tol.rel * abs(total)):
        neg_err, _, lo, hi, val, depth = heapq.heappop(heap)
        if depth >= tol.max_depth:
            raise DepthExceededError(
                f"error {total_err:.3e} above target at max_depth={tol.max_depth} "
                f"on panel [{lo}, {hi}]"
            )
        mid = 0.5 * (lo + hi)
        v1, e1 = _panel(f, lo, mid)
        v2, e2 = _panel(f, mid, hi)
        evaluations += 30
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, seq, lo, mid, v1, depth + 1))
        heapq.heappush(heap, (-e2, seq + 1, mid, hi, v2, depth + 1))
        seq += 2

    # Recombine in positional order with compensated summation: the running
    # totals above accumulate rounding over many pop/push cycles.
    ordered = sorted(heap, key=lambda p: (p[2], p[3]))
    value = math.fsum(p[4] for p in ordered)
    err = math.fsum(-p[0] for p in ordered)
    return QuadResult(value, err, evaluations)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadResult:
    """Integrate f over [a, b] to max(tol.abs, tol.rel*|integral|).

    Kronrod nodes are strictly interior, so integrable log-singularities at
    either endpoint are admissible: bisection walks panels toward the
    endpoint until their contribution estimate is below target.

    Raises NonFiniteError if f returns NaN/inf at a node, DepthExceededError
    if the target is still unmet once the worst panel reaches max_depth.
    """
    if not (a <= b):
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return QuadResult(0.0, 0.0, 1)
    return _adaptive(f, [(a, b)], tol)


def _graded_panels(a: float, b: float, center: float, w0: float) -> list[tuple[float, float]]:
    """Panel edges spreading dyadically from `center` out to [a, b].

    Keeps the panel containing an exponential peak narrow while covering an
    arbitrarily long domain in O(log(range/w0)) panels.
    """
    edges = {a, b}
    for sign in (-1.0, 1.0):
        w = w0
        t = center
        while a < t < b or t == center:
            t = center + sign * w
            edges.add(min(max(t, a), b))
            w *= 2.0
    if a < center < b:
        edges.add(center)
    srt = sorted(edges)
    return [(lo, hi) for lo, hi in zip(srt, srt[1:]) if hi > lo]


def log_integrate_exp(
    g: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadResult:
    """Return log of the integral of exp(g) over [a, b] without overflow.

    Max-shift scheme: m = max of g over a sampling grid, integrate
    exp(g - m) adaptively, add m back.  g may return -inf (zero integrand)
    but not NaN or +inf.  The initial panels are graded around the sampled
    argmax so a narrow exponential peak inside a long domain is never
    missed by the first Kronrod pass.
    """
    if not (a <= b):
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return QuadResult(-math.inf, 0.0, 1, is_log=True)

    n_samples = 128
    step = (b - a) / n_samples
    best = -math.inf
    t_star = a
    for i in range(n_samples + 1):
        t = a + i * step
        gt = g(t)
        if math.isnan(gt) or gt == math.inf:
            raise NonFiniteError(f"g returned {gt} at t={t}")
        if gt > best:
            best = gt
            t_star = t
    if best == -math.inf:
        raise NonFiniteError("g is -inf on the whole sampling grid")

    m = best
    shifted = lambda t: math.exp(g(t) - m)  # noqa: E731
    inner_tol = Tolerance(rel=tol.rel, abs=0.0, max_depth=tol.max_depth)
    res = _adaptive(shifted, _graded_panels(a, b, t_star, step), inner_tol)
    log_value = m + math.log(res.value)
    log_err = res.abs_error_estimate / res.value
    return QuadResult(log_value, log_err, res.evaluations + n_samples + 1, is_log=True)


def sphere_volume(k: int) -> float:
    """Volume of the unit k-sphere S^k: 2*pi^((k+1)/2) / Gamma((k+1)/2)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 2.0 * math.pi ** (0.5 * (k + 1)) / math.gamma(0.5 * (k + 1))


def log_sphere_volume(k: int) -> float:
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.log(2.0) + 0.5 * (k + 1) * math.log(math.pi) - math.lgamma(0.5 * (k + 1))


# Lobachevsky function.  Series below _SERIES_CUT handles the log-singularity
# of the integrand at 0; adaptive quadrature covers the smooth remainder.
_SERIES_CUT = 0.25
_ZETA_EVEN = tuple(float(z) for z in zeta(np.arange(2, 42, 2, dtype=float)))
_LOB_TOL = Tolerance(rel=1e-12, abs=1e-14)


def _lobachevsky_series(t: float) -> float:
    """L(t) = t - t*log(2t) + sum_m zeta(2m) t^(2m+1) / (m (2m+1) pi^(2m)).

    Converges geometrically with ratio (t/pi)^2; truncation below 1e-16
    relative for t <= _SERIES_CUT.
    """
    if t == 0.0:
        return 0.0
    acc = t - t * math.log(2.0 * t)
    q = (t / math.pi) ** 2
    power = t
    for m, z in enumerate(_ZETA_EVEN, start=1):
        power *= q
        term = z * power / (m * (2 * m + 1))
        acc += term
        if abs(term) < 1e-17 * max(abs(acc), t):
            break
    return acc


def lobachevsky(theta: float) -> float:
    """Lobachevsky function: minus the integral of log|2 sin t| from 0 to theta.

    Odd and pi-periodic; any real argument is reduced to [-pi/2, pi/2]
    before evaluation.  Absolute accuracy around 1e-12.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    t = theta - math.pi * math.floor(theta / math.pi + 0.5)
    sign = 1.0 if t >= 0.0 else -1.0
    t = abs(t)
    if t <= _SERIES_CUT:
        return sign * _lobachevsky_series(t)
    head = _lobachevsky_series(_SERIES_CUT)
    tail = integrate_adaptive(
        lambda u: math.log(2.0 * math.sin(u)), _SERIES_CUT, t, _LOB_TOL
    )
    return sign * (head - tail.value)
