"""Optimal personalised signal of a single voter.

The voter maximises :func:`~.signal_model.value_gain` subject to
``binary_cost(x, y) <= bandwidth``.  The optimum exhausts the bandwidth, so
the search runs along the R-biased branch of the level curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import attention_costs as ac
from .attention_costs import AttentionCost
from .errors import DomainError
from .signal_model import BinarySignal, mirror, value_gain

SCAN_POINTS = 2001
GOLDEN_TOL = 1e-7
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class VoterProblem:
    v: float
    bandwidth: float
    cost: AttentionCost

    def __post_init__(self):
        if not -1.0 < self.v < 1.0:
            raise DomainError(f"preference parameter must lie in (-1, 1), got {self.v!r}")
        ac._check_bandwidth(self.cost, self.bandwidth)


@dataclass(frozen=True)
class SignalSolution:
    """Optimal signal plus diagnostics.

    ``multiplier`` is the shadow price of bandwidth.  ``corner`` marks the
    most biased element of the level curve (``x = 1`` for ``v > 0``).
    ``degenerate`` marks a candidate the voter would not obey; it should
    never occur for a positive bandwidth.
    """

    signal: BinarySignal
    multiplier: float
    value: float
    corner: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class FocResiduals:
    r1: float
    r2: float
    multiplier: float
    corner: bool = False


def _curve_terms(cost, x, y):
    hx, hy = cost.h(x), cost.h(y)
    s = x + y
    with np.errstate(invalid="ignore"):
        a = hy - hx + cost.dh(x) * s
        b = hx - hy + cost.dh(y) * s
    return a, b


def _slope_sign(cost, v, bandwidth, x):
    """Sign-carrying derivative of the value along the level curve at ``x``.

    Equals ``(y + v) B - (x - v) A`` which is positive exactly where moving
    further along the curve towards ``x = 1`` raises the value.
    """
    if np.ndim(x) == 0:
        y = ac.level_curve_y_unchecked(cost, float(x), bandwidth)
    else:
        y = ac._level_curve_y(cost, np.asarray(x, dtype=float), bandwidth)
    a, b = _curve_terms(cost, x, y)
    with np.errstate(invalid="ignore"):
        g = (y + v) * b - (x - v) * a
    return np.where(np.isnan(g), -np.inf, g)


def _values(cost, v, bandwidth, xs):
    ys = ac._level_curve_y(cost, xs, bandwidth)
    return ys / (xs + ys) * np.maximum(xs - v, 0.0), ys


def _golden_max(f, a, b, tol=GOLDEN_TOL):
    """Shrink ``[a, b]`` around the maximiser of a unimodal ``f``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return a, b


def _refine(cost, v, bandwidth, lo, hi):
    """Locate the maximiser on ``[lo, hi]`` to near machine precision."""

    def value(x):
        y = ac.level_curve_y_unchecked(cost, x, bandwidth)
        return y / (x + y) * max(x - v, 0.0)

    def slope(x):
        return float(_slope_sign(cost, v, bandwidth, x))

    a, b = _golden_max(value, lo, hi)
    # widen by a few golden tolerances so the first-order condition changes sign inside
    a, b = max(lo, a - 4 * GOLDEN_TOL), min(hi, b + 4 * GOLDEN_TOL)
    ga, gb = slope(a), slope(b)
    if ga <= 0.0:
        return a
    if gb >= 0.0:
        return b
    return brentq(slope, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def _multiplier(cost, sig, v, corner):
    if corner:
        _, b = _curve_terms(cost, sig.x, sig.y)
        return float((sig.x - v) / b)
    return float(1.0 / (cost.dh(sig.x) + cost.dh(sig.y)))


def _solve_nonnegative(cost, v, bandwidth, scan_points):
    x_min = float(ac.inverse_on_positive(cost, bandwidth))
    if v == 0.0:
        # centrist: the neutral point of the level curve
        sig = BinarySignal(x_min, x_min)
        return SignalSolution(sig, _multiplier(cost, sig, v, False), value_gain(sig, v))

    lo = max(v, x_min)
    xs = np.linspace(lo, 1.0, scan_points)
    vals, _ = _values(cost, v, bandwidth, xs)
    i = int(np.argmax(vals))
    x = _refine(cost, v, bandwidth, xs[max(i - 1, 0)], xs[min(i + 1, scan_points - 1)])
    corner = bool(x >= 1.0)
    if corner:
        x = 1.0
    y = ac.level_curve_y_unchecked(cost, x, bandwidth)
    sig = BinarySignal(x, y)
    val = value_gain(sig, v)
    if not x > v or val <= 0.0:
        return SignalSolution(sig, float("nan"), 0.0, corner, degenerate=True)
    return SignalSolution(sig, _multiplier(cost, sig, v, corner), val, corner)


def solve_optimal_signal(p: VoterProblem, scan_points: int = SCAN_POINTS) -> SignalSolution:
    """Optimal binary signal for the voter described by ``p``.

    Scans the level curve, refines the best bracket with golden-section
    search and finishes with a root of the first-order condition.  Voters with
    ``v < 0`` are solved as their mirror image.
    """
    sol = _solve_nonnegative(p.cost, abs(p.v), p.bandwidth, scan_points)
    if p.v >= 0:
        return sol
    sig = mirror(sol.signal)
    return SignalSolution(sig, sol.multiplier, value_gain(sig, p.v), sol.corner, sol.degenerate)


def solve_quadratic_closed_form(v: float, bandwidth: float) -> BinarySignal:
    """Closed form for ``h(mu) = mu**2`` and ``v >= 0``.

    The interior conditions reduce to ``x - y = 2v`` on the curve ``xy = I``.
    """
    if not 0.0 <= v < 1.0:
        raise DomainError(f"closed form needs 0 <= v < 1, got {v!r}")
    if not 0.0 < bandwidth < 1.0:
        raise DomainError(f"closed form needs 0 < I < 1, got {bandwidth!r}")
    x = min(1.0, v + math.sqrt(v * v + bandwidth))
    return BinarySignal(x, bandwidth / x)


def brute_force_oracle(p: VoterProblem, grid_n: int = 100_000) -> BinarySignal:
    """Exhaustive grid search over the whole R-biased branch of the level curve."""
    if grid_n < 1000:
        raise DomainError("oracle grid must have at least 1000 points")
    v = abs(p.v)
    x_min = float(ac.inverse_on_positive(p.cost, p.bandwidth))
    xs = np.linspace(x_min, 1.0, grid_n)
    vals, ys = _values(p.cost, v, p.bandwidth, xs)
    i = int(np.argmax(vals))
    sig = BinarySignal(xs[i], float(ys[i]))
    return sig if p.v >= 0 else mirror(sig)


def foc_residuals(sig: BinarySignal, v: float, cost: AttentionCost) -> FocResiduals:
    """Residuals of the interior first-order conditions of the relaxed problem.

    The multiplier is backed out from the summed conditions,
    ``h'(x) + h'(y) = 1 / lambda``.  At ``x = 1`` the conditions do not
    apply; a corner-flagged result with NaN residuals is returned.
    """
    x, y = sig.x, sig.y
    if x >= 1.0:
        return FocResiduals(float("nan"), float("nan"), _multiplier(cost, sig, v, True), True)
    lam = float(1.0 / (cost.dh(x) + cost.dh(y)))
    a, b = _curve_terms(cost, x, y)
    return FocResiduals(float((y + v) - lam * a), float((x - v) - lam * b), lam)
