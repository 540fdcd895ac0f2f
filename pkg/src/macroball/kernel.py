"""Truncated-exponential smoothing kernel on the model space.

The kernel centered at y weights a point y' by
exp(-lambda d(y,y')) - exp(-lambda R) inside the ball B(y, R) and vanishes
outside.  Everything radial reduces to one-dimensional integrals against
sinh^(n-1); the derivative-norm bound

    lambda * I / (I - V(R)),   I = weighted ball integral,

is certified twice: through the analytic inequality chain ending in the
2*lambda bound, and independently through a finite-difference total
variation experiment between kernels at nearby centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .errors import DegenerateKernelError, UnsupportedDimError
from .hypgeom import (
    HPoint,
    check_dim,
    geodesic_point,
    hdistance,
    log_sinh,
    log_v_hyp,
    origin,
)
from .numerics import (
    DEFAULT_TOLERANCE,
    Tolerance,
    integrate_adaptive,
    log_integrate_exp,
    log_sphere_volume,
)

# Below this gap between log I and log V(R) the mass I - V(R) is dominated
# by quadrature rounding and any downstream division is meaningless.
_DEGENERACY_FLOOR = 1e-9

_TV_INNER_TOL = Tolerance(rel=1e-8, abs=1e-12, max_depth=48)
_TV_OUTER_TOL = Tolerance(rel=1e-7, abs=1e-9, max_depth=48)

# Absolute slack granted to the finite-difference rate on top of the 5%
# inequality slack; covers the TV quadrature error divided by the step.
_TV_QUAD_SLACK = 1e-7


@dataclass(frozen=True)
class KernelParams:
    """Kernel parameter triple: dimension, decay rate, ball radius."""

    n: int
    lam: float
    R: float

    def __post_init__(self):
        check_dim(self.n)
        if not self.lam > 0.0:
            raise ValueError(f"lambda must be > 0, got {self.lam}")
        if not self.R > 0.0:
            raise ValueError(f"R must be > 0, got {self.R}")


@dataclass(frozen=True)
class ChainEntry:
    name: str
    lhs: float
    rhs: float
    relation: str  # ">=" or "<="
    holds: bool


@dataclass(frozen=True)
class ChainReport:
    params: KernelParams
    I: float
    ball_vol: float
    mass: float
    deriv_bound: float
    lambda_min: float
    two_lambda_ok: Optional[bool]
    chain_inequalities: list[ChainEntry]


@lru_cache(maxsize=50_000)
def _log_kernel_I_cached(n: int, lam: float, R: float, rel: float, abs_: float,
                         max_depth: int) -> float:
    tol = Tolerance(rel=rel, abs=abs_, max_depth=max_depth)
    g = lambda t: lam * (R - t) + (n - 1) * log_sinh(t)  # noqa: E731
    shell = log_integrate_exp(g, 0.0, R, tol)
    return log_sphere_volume(n - 1) + shell.value


def log_kernel_I(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """log of the weighted ball integral of exp(-lambda (d - R)) over B(R)."""
    return _log_kernel_I_cached(p.n, p.lam, p.R, tol.rel, tol.abs, tol.max_depth)


def kernel_I(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    return math.exp(log_kernel_I(p, tol))


def _log_diff(log_big: float, log_small: float) -> float:
    """log(exp(log_big) - exp(log_small)) for log_big > log_small.

    The expm1 form is exact for small gaps, the log1p form never
    overflows for large ones.
    """
    gap = log_big - log_small
    if gap < 1.0:
        return log_small + math.log(math.expm1(gap))
    return log_big + math.log1p(-math.exp(-gap))


def _log_parts(p: KernelParams, tol: Tolerance) -> tuple[float, float, float]:
    """(log I, log V(R), log(I - V(R))); raises on a degenerate gap."""
    log_i = log_kernel_I(p, tol)
    log_v = log_v_hyp(p.n, p.R, tol)
    gap = log_i - log_v
    if gap <= _DEGENERACY_FLOOR:
        raise DegenerateKernelError(
            f"lambda*R too small at {p}: log I - log V = {gap:.3e} is below "
            f"float resolution of the kernel mass"
        )
    return log_i, log_v, _log_diff(log_i, log_v)


def log_kernel_mass(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    log_i, _, log_diff = _log_parts(p, tol)
    return -p.lam * p.R + log_diff


def kernel_mass(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Total kernel weight exp(-lambda R) * (I - V(R)); always positive."""
    return math.exp(log_kernel_mass(p, tol))


def deriv_bound(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Upper bound lambda * I / (I - V(R)) for the normalized kernel's
    center-derivative norm, computed from log quantities so the
    near-cancelling denominator never forms in linear space."""
    log_i, _, log_diff = _log_parts(p, tol)
    return p.lam * math.exp(log_i - log_diff)


def lambda_min(n: int, R: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Smallest decay rate for which the 2*lambda bound applies:
    (2/R) * log(2 V(R) / V(R/2))."""
    check_dim(n)
    if not R > 0.0:
        raise ValueError(f"R must be > 0, got {R}")
    return (2.0 / R) * (math.log(2.0) + log_v_hyp(n, R, tol) - log_v_hyp(n, R / 2.0, tol))


def f_of_R(n: int, R: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """The radius-dependent derivative budget (4/R) log(2 V(R)/V(R/2)),
    definitionally twice lambda_min."""
    return 2.0 * lambda_min(n, R, tol)


def _exp_or_inf(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def chain_check(p: KernelParams, tol: Tolerance = DEFAULT_TOLERANCE) -> ChainReport:
    """Evaluate and record every inequality in the derivative-bound chain.

    (i)   I >= exp(lambda R / 2) V(R/2)
    (ii)  the half-ball surrogate denominator is positive, and then
          deriv_bound <= lambda A / (A - V(R)) with A = exp(lambda R/2) V(R/2)
    (iii) if lambda >= lambda_min: deriv_bound <= 2 lambda

    All comparisons run in log space; reported lhs/rhs are linear floats
    (inf if out of range).
    """
    log_i, log_v, log_diff = _log_parts(p, tol)
    log_v_half = log_v_hyp(p.n, p.R / 2.0, tol)
    log_a = 0.5 * p.lam * p.R + log_v_half
    db = p.lam * math.exp(log_i - log_diff)
    lmin = lambda_min(p.n, p.R, tol)

    entries = []
    entries.append(ChainEntry(
        name="weighted_integral_dominates_halfball",
        lhs=_exp_or_inf(log_i),
        rhs=_exp_or_inf(log_a),
        relation=">=",
        holds=log_i >= log_a,
    ))
    denom_positive = log_a > log_v
    entries.append(ChainEntry(
        name="halfball_surrogate_denominator_positive",
        lhs=_exp_or_inf(log_a),
        rhs=_exp_or_inf(log_v),
        relation=">=",
        holds=denom_positive,
    ))
    if denom_positive:
        surrogate = p.lam * math.exp(log_a - _log_diff(log_a, log_v))
        entries.append(ChainEntry(
            name="deriv_bound_within_halfball_surrogate",
            lhs=db,
            rhs=surrogate,
            relation="<=",
            holds=db <= surrogate * (1.0 + 1e-12),
        ))

    two_lambda_ok: Optional[bool] = None
    if p.lam >= lmin:
        two_lambda_ok = db <= 2.0 * p.lam * (1.0 + 1e-9)
        entries.append(ChainEntry(
            name="deriv_bound_within_two_lambda",
            lhs=db,
            rhs=2.0 * p.lam,
            relation="<=",
            holds=two_lambda_ok,
        ))

    return ChainReport(
        params=p,
        I=_exp_or_inf(log_i),
        ball_vol=_exp_or_inf(log_v),
        mass=_exp_or_inf(-p.lam * p.R + log_diff),
        deriv_bound=db,
        lambda_min=lmin,
        two_lambda_ok=two_lambda_ok,
        chain_inequalities=entries,
    )


def tv_distance(p: KernelParams, y: HPoint, y2: HPoint,
                tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Total variation distance between the normalized kernels centered at
    y and y2.

    Rotational symmetry about the axis through the centers reduces the
    integral to geodesic polar coordinates (r, angle) about their midpoint,
    with radial cap R + d/2; the n = 3 case carries an extra 2 pi sin(psi)
    rotation factor.  Disjoint supports (d >= 2R) give exactly 2.
    Absolute accuracy around 1e-8, well inside the 1e-6 contract.
    """
    if p.n not in (2, 3):
        raise UnsupportedDimError(f"tv_distance supports n in {{2, 3}}, got n={p.n}")
    d = hdistance(y, y2)
    if d >= 2.0 * p.R:
        return 2.0
    if d == 0.0:
        return 0.0

    lam, R = p.lam, p.R
    mass = kernel_mass(p, tol)
    e_edge = math.exp(-lam * R)
    s = 0.5 * d
    cosh_s, sinh_s = math.cosh(s), math.sinh(s)

    def density_gap(r: float, phi: float) -> float:
        # |k_y - k_y2| at polar coordinates (r, phi) about the midpoint;
        # phi is the angle from the axis pointing at y.
        ch = cosh_s * math.cosh(r)
        sh = sinh_s * math.sinh(r)
        c = math.cos(phi)
        d1 = math.acosh(max(ch - sh * c, 1.0))
        d2 = math.acosh(max(ch + sh * c, 1.0))
        k1 = max(math.exp(-lam * d1) - e_edge, 0.0) if d1 < R else 0.0
        k2 = max(math.exp(-lam * d2) - e_edge, 0.0) if d2 < R else 0.0
        return abs(k1 - k2) / mass

    r_max = R + s
    if p.n == 2:
        def ring(r: float) -> float:
            if r == 0.0:
                return 0.0
            inner = integrate_adaptive(lambda phi: density_gap(r, phi),
                                       0.0, math.pi, _TV_INNER_TOL)
            return 2.0 * math.sinh(r) * inner.value
    else:
        def ring(r: float) -> float:
            if r == 0.0:
                return 0.0
            inner = integrate_adaptive(lambda phi: density_gap(r, phi) * math.sin(phi),
                                       0.0, math.pi, _TV_INNER_TOL)
            return 2.0 * math.pi * math.sinh(r) ** 2 * inner.value

    outer = integrate_adaptive(ring, 0.0, r_max, _TV_OUTER_TOL)
    return outer.value


class FdCheck(NamedTuple):
    fd_norm_rate: float
    bound: float
    holds: bool


def fd_derivative_check(p: KernelParams, h: float,
                        tol: Tolerance = DEFAULT_TOLERANCE) -> FdCheck:
    """Finite-difference certification of the derivative-norm bound.

    Centers the kernel at the model-space origin and at distance h along a
    coordinate geodesic, measures the TV distance per unit step, and checks
    it against deriv_bound with 5% slack (the bound is an inequality; the
    slack absorbs finite-step and quadrature error).
    """
    if not 0.0 < h <= 1e-2:
        raise ValueError(f"step must lie in (0, 1e-2], got {h}")
    y = origin(p.n)
    direction = np.zeros(p.n + 1)
    direction[1] = 1.0
    y2 = geodesic_point(y, direction, h)
    rate = tv_distance(p, y, y2, tol) / h
    bound = deriv_bound(p, tol)
    holds = rate <= bound * 1.05 + _TV_QUAD_SLACK / h
    return FdCheck(fd_norm_rate=rate, bound=bound, holds=holds)
