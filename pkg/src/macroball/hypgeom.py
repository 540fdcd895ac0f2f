"""Model-space hyperbolic geometry: geodesic ball volumes (linear and
log-space), their halved-radius ratio, and hyperboloid-model points with
distances and geodesics.

The ball volume of radius R in curvature -1 is
Vol(S^(n-1)) times the integral of sinh^(n-1) over [0, R]; it grows like
exp((n-1) R), so everything radius-dependent has a log-space twin.  Points
live on the upper sheet of {<x,x> = 1} in Minkowski space with signature
(+, -, ..., -), where distances and geodesics are closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidDirectionError, InvalidPointError, VolumeOverflowError
from .numerics import (
    DEFAULT_TOLERANCE,
    Tolerance,
    integrate_adaptive,
    log_integrate_exp,
    log_sphere_volume,
    sphere_volume,
)

# Below this radius the sinh-power integral is evaluated by series: the
# quadrature path loses relative accuracy to cancellation against t^(n-1).
SMALL_RADIUS_CUT = 1e-4

# (n-1)*R beyond this overflows the linear-space volume.
_OVERFLOW_EXPONENT = 700.0

_POINT_TOL = 1e-8


def check_dim(n: int) -> None:
    """Ambient dimension must be an integer >= 2."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n!r}")


def log_sinh(t: float) -> float:
    """log(sinh t) for t >= 0, stable for large t; -inf at t = 0."""
    if t == 0.0:
        return -math.inf
    if t > 20.0:
        return t - math.log(2.0) + math.log1p(-math.exp(-2.0 * t))
    return math.log(math.sinh(t))


def _log_v_hyp_series(n: int, r: float) -> float:
    # Integral of sinh^(n-1) ~ r^n/n * (1 + n(n-1) r^2 / (6(n+2)));
    # the dropped r^4 term is below 1e-16 relative for r <= SMALL_RADIUS_CUT.
    corr = n * (n - 1) * r * r / (6.0 * (n + 2))
    return log_sphere_volume(n - 1) + n * math.log(r) - math.log(n) + math.log1p(corr)


def v_hyp(n: int, r: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Volume of the geodesic r-ball in the n-dimensional model space.

    Raises VolumeOverflowError once (n-1)*r exceeds the float exponent
    range; callers needing large radii must use log_v_hyp.
    """
    check_dim(n)
    if not r >= 0.0:
        raise ValueError(f"radius must be >= 0, got {r}")
    if r == 0.0:
        return 0.0
    if r <= SMALL_RADIUS_CUT:
        return math.exp(_log_v_hyp_series(n, r))
    if (n - 1) * r > _OVERFLOW_EXPONENT:
        raise VolumeOverflowError(
            f"v_hyp(n={n}, r={r}) exceeds float range; use log_v_hyp"
        )
    shell = integrate_adaptive(lambda t: math.sinh(t) ** (n - 1), 0.0, r, tol)
    return sphere_volume(n - 1) * shell.value


@lru_cache(maxsize=200_000)
def _log_v_hyp_cached(n: int, r: float, rel: float, abs_: float, max_depth: int) -> float:
    if r <= SMALL_RADIUS_CUT:
        return _log_v_hyp_series(n, r)
    tol = Tolerance(rel=rel, abs=abs_, max_depth=max_depth)
    shell = log_integrate_exp(lambda t: (n - 1) * log_sinh(t), 0.0, r, tol)
    return log_sphere_volume(n - 1) + shell.value


def log_v_hyp(n: int, r: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """log of v_hyp(n, r), valid for any radius a float can hold."""
    check_dim(n)
    if not r >= 0.0:
        raise ValueError(f"radius must be >= 0, got {r}")
    if r == 0.0:
        return -math.inf
    return _log_v_hyp_cached(n, float(r), tol.rel, tol.abs, tol.max_depth)


def v_ratio_halved(n: int, r: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """V(r) / V(r/2), always evaluated in log space: both volumes overflow
    long before their ratio does."""
    check_dim(n)
    if not r > 0.0:
        raise ValueError(f"radius must be > 0, got {r}")
    return math.exp(log_v_hyp(n, r, tol) - log_v_hyp(n, r / 2.0, tol))


# --------------------------------------------------------------------------
# Hyperboloid model
# --------------------------------------------------------------------------


def _mink(a: np.ndarray, b: np.ndarray) -> float:
    return float(a[0] * b[0] - np.dot(a[1:], b[1:]))


@dataclass(frozen=True, eq=False)
class HPoint:
    """Point on the upper hyperboloid sheet, coordinates in Minkowski space.

    Immutable; the constraint <x,x> = 1, x0 >= 1 is checked on construction.
    """

    x: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", arr)
        if arr.ndim != 1 or arr.size < 3:
            raise InvalidPointError(f"need an (n+1)-vector with n >= 2, got shape {arr.shape}")
        norm = _mink(arr, arr)
        if abs(norm - 1.0) > _POINT_TOL or arr[0] < 1.0 - _POINT_TOL:
            raise InvalidPointError(
                f"<x,x>={norm}, x0={arr[0]}: not on the upper unit hyperboloid"
            )

    @property
    def n(self) -> int:
        return self.x.size - 1


def origin(n: int) -> HPoint:
    check_dim(n)
    coords = np.zeros(n + 1)
    coords[0] = 1.0
    return HPoint(coords)


def from_spatial(spatial) -> HPoint:
    """Lift spatial coordinates onto the hyperboloid (x0 determined)."""
    s = np.asarray(spatial, dtype=float)
    return HPoint(np.concatenate(([math.sqrt(1.0 + float(np.dot(s, s)))], s)))


def minkowski_inner(p: HPoint, q: HPoint) -> float:
    return _mink(p.x, q.x)


def hdistance(p: HPoint, q: HPoint) -> float:
    """Geodesic distance arccosh(<p,q>), pairing clamped below at 1 to
    absorb rounding for nearly-coincident points."""
    if p.n != q.n:
        raise InvalidPointError("points live in different dimensions")
    return math.acosh(max(minkowski_inner(p, q), 1.0))


def tangent_vector(p: HPoint, spatial) -> np.ndarray:
    """Unit spacelike vector at p obtained by projecting (0, spatial) onto
    the tangent space and normalizing."""
    s = np.asarray(spatial, dtype=float)
    if s.size != p.n:
        raise InvalidDirectionError(f"seed must have {p.n} spatial components")
    v = np.concatenate(([0.0], s))
    u = v - _mink(v, p.x) * p.x
    norm_sq = -_mink(u, u)
    if norm_sq <= 0.0:
        raise InvalidDirectionError("seed projects to a degenerate direction")
    return u / math.sqrt(norm_sq)


def geodesic_point(p: HPoint, direction: np.ndarray, t: float) -> HPoint:
    """Point at arclength t from p along a unit tangent direction:
    cosh(t) p + sinh(t) direction."""
    d = np.asarray(direction, dtype=float)
    if d.shape != p.x.shape:
        raise InvalidDirectionError("direction shape does not match the point")
    if abs(_mink(d, d) + 1.0) > _POINT_TOL:
        raise InvalidDirectionError("direction is not a unit spacelike vector")
    if abs(_mink(d, p.x)) > _POINT_TOL:
        raise InvalidDirectionError("direction is not tangent at p")
    return HPoint(math.cosh(t) * p.x + math.sinh(t) * d)
