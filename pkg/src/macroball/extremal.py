"""Certified one-dimensional suprema and infima on rays [a, inf).

The caller supplies the limit of f at infinity and a certified tail
envelope: tail_bound(R) must dominate sup of f over [R, inf) (resp. be
dominated by the inf) and converge to the limit.  A grid walk then covers
[a, R_cut], where R_cut is the first grid point at which the envelope can
no longer beat the best value seen; golden-section refinement sharpens the
best bracket.  Extrema attained only in the limit are reported with an
at-infinity marker instead of a finite argument.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

from .errors import TailNeverDominatesError

DEFAULT_MAX_RAY_CUT = 1e4

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of a certified ray extremum search.

    `arg` is None exactly when `at_infinity` is set: the extremum equals the
    limit at infinity and is not attained at any finite radius scanned.
    """

    kind: str  # "sup" or "inf"
    value: float
    arg: float | None
    at_infinity: bool
    window_used: tuple[float, float]
    tail_margin: float
    grid_points: int


def _golden_max(f: Callable[[float], float], lo: float, hi: float,
                xtol: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; returns (arg, value)."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
    arg = x1 if f1 >= f2 else x2
    return arg, max(f1, f2)


def sup_on_ray(
    f: Callable[[float], float],
    a: float,
    limit: float,
    tail_bound: Callable[[float], float],
    tol: float,
    *,
    h0: float | None = None,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> ExtremalResult:
    """Supremum of f over [a, inf) to within tol.

    Preconditions: f continuous, f(R) -> limit as R -> inf, and
    tail_bound(R) >= sup of f over [R, inf) with tail_bound -> limit.
    Raises TailNeverDominatesError if no cut point at or below max_ray_cut
    satisfies tail_bound(R) <= best_so_far + tol.
    """
    h = h0 if h0 is not None else 0.01 * (1.0 + a)
    if h <= 0.0:
        raise ValueError("grid step must be positive")

    rs = [a]
    vals = [f(a)]
    best = vals[0]
    k = 0
    while tail_bound(rs[-1]) > best + tol:
        k += 1
        r = a + k * h
        if r > max_ray_cut:
            raise TailNeverDominatesError(
                f"tail bound never fell below best+tol before R={max_ray_cut}"
            )
        rs.append(r)
        vals.append(f(r))
        if vals[-1] > best:
            best = vals[-1]
    r_cut = rs[-1]

    # Refine around the best grid point.  The bracket spans the neighbours;
    # an extremum at the window edge is a legitimate outcome.
    i_best = max(range(len(vals)), key=lambda i: vals[i])
    lo = rs[max(i_best - 1, 0)]
    hi = rs[min(i_best + 1, len(rs) - 1)]
    refined_arg, refined_val = rs[i_best], vals[i_best]
    if hi > lo:
        g_arg, g_val = _golden_max(f, lo, hi, xtol=1e-10 * (1.0 + abs(rs[i_best])))
        if g_val > refined_val:
            refined_arg, refined_val = g_arg, g_val

    if refined_val < limit:
        # Nothing on the grid beats the limit; the supremum is the limit
        # itself, approached at infinity (tail_bound(r_cut) <= best + tol
        # caps the tail from above).
        value: float = limit
        arg: float | None = None
        at_inf = True
    else:
        value = refined_val
        at_inf = False
        # Smallest argument achieving the extremum within tol wins.
        arg = refined_arg
        for r, v in zip(rs, vals):
            if v >= value - tol and r < arg:
                arg = r
                break

    tail_margin = (best + tol) - tail_bound(r_cut)
    return ExtremalResult(
        kind="sup",
        value=value,
        arg=arg,
        at_infinity=at_inf,
        window_used=(a, r_cut),
        tail_margin=max(tail_margin, 0.0),
        grid_points=len(rs),
    )


def inf_on_ray(
    f: Callable[[float], float],
    a: float,
    limit: float,
    tail_lower_bound: Callable[[float], float],
    tol: float,
    *,
    h0: float | None = None,
    max_ray_cut: float = DEFAULT_MAX_RAY_CUT,
) -> ExtremalResult:
    """Infimum of f over [a, inf); mirror of sup_on_ray under negation.

    tail_lower_bound(R) must sit below the inf of f over [R, inf) and
    converge to the limit.
    """
    res = sup_on_ray(
        lambda r: -f(r),
        a,
        -limit,
        lambda r: -tail_lower_bound(r),
        tol,
        h0=h0,
        max_ray_cut=max_ray_cut,
    )
    return ExtremalResult(
        kind="inf",
        value=-res.value,
        arg=res.arg,
        at_infinity=res.at_infinity,
        window_used=res.window_used,
        tail_margin=res.tail_margin,
        grid_points=res.grid_points,
    )
