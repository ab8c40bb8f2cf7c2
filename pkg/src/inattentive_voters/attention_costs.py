"""Posterior-separable attention costs.

An attention cost is a strictly convex, symmetric function ``h`` on [-1, 1]
with ``h(0) = 0``.  A binary signal with posterior means ``-x`` and ``y``
costs ``I(x, y) = [y h(x) + x h(y)] / (x + y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import xlogy

from .errors import (
    DegenerateSignalError,
    DomainError,
    InfeasibleBandwidthError,
    InfeasiblePointError,
    ModelError,
    UnsupportedCostError,
)

LN2 = math.log(2.0)

BISECT_TOL = 1e-10
BISECT_MAXITER = 200
VALIDATION_POINTS = 1001

# Slack used when checking that a user point sits inside [-1, 1].
_EDGE = 1e-12


def _as_float(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


@dataclass(frozen=True)
class AttentionCost:
    """A cost function ``h`` together with its derivatives.

    ``dh`` is only required on the open interval (-1, 1); ``d2h`` is optional
    and needed only by :func:`check_dlambda_condition`.  Prefer the factory
    functions :func:`quadratic`, :func:`binary_entropy` and :func:`custom`.
    """

    kind: str
    h: Callable = field(repr=False)
    dh: Callable = field(repr=False)
    d2h: Optional[Callable] = field(default=None, repr=False)
    units: str = "nats"

    @property
    def h_max(self) -> float:
        """Cost of full revelation, ``h(1)``."""
        return float(self.h(1.0))


def _quadratic_h(mu):
    return np.square(mu)


def _quadratic_dh(mu):
    return 2.0 * np.asarray(mu, dtype=float)


def _quadratic_d2h(mu):
    return np.full_like(np.asarray(mu, dtype=float), 2.0)


def quadratic() -> AttentionCost:
    """Variance-reduction cost ``h(mu) = mu**2``."""
    return AttentionCost("quadratic", _quadratic_h, _quadratic_dh, _quadratic_d2h)


def _entropy_parts(scale):
    def h(mu):
        mu = np.asarray(mu, dtype=float)
        p = (1.0 + mu) / 2.0
        # ln2 - H(p) = p ln p + (1-p) ln(1-p) + ln 2; xlogy handles p in {0, 1}
        return (xlogy(p, p) + xlogy(1.0 - p, 1.0 - p) + LN2) / scale

    def dh(mu):
        with np.errstate(divide="ignore"):
            return np.arctanh(np.asarray(mu, dtype=float)) / scale

    def d2h(mu):
        mu = np.asarray(mu, dtype=float)
        with np.errstate(divide="ignore"):
            return 1.0 / ((1.0 - mu * mu) * scale)

    return h, dh, d2h


def binary_entropy(units: str = "nats") -> AttentionCost:
    """Shannon cost ``h(mu) = ln 2 - H((1 + mu) / 2)``.

    ``H`` is the binary entropy, so ``h`` is the entropy reduction of the
    binary state and ``h(0) = 0``.  ``units="bits"`` divides by ln 2.
    """
    if units not in ("nats", "bits"):
        raise DomainError(f"units must be 'nats' or 'bits', got {units!r}")
    h, dh, d2h = _entropy_parts(1.0 if units == "nats" else LN2)
    return AttentionCost("binary-entropy", h, dh, d2h, units=units)


def custom(h: Callable, dh: Callable, d2h: Optional[Callable] = None,
           n_check: int = VALIDATION_POINTS) -> AttentionCost:
    """Wrap a user-supplied cost after checking it on an ``n_check`` grid.

    Raises :class:`ModelError` if ``h(0) != 0``, ``h`` is asymmetric,
    not strictly increasing on [0, 1], or not strictly convex.
    """
    grid = np.linspace(-1.0, 1.0, n_check)
    vals = np.asarray(h(grid), dtype=float)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if abs(float(h(0.0))) > 1e-12 * scale:
        raise ModelError("user cost must satisfy h(0) = 0")
    if np.any(vals < 0):
        raise ModelError("user cost must be nonnegative")
    if not np.allclose(vals, vals[::-1], rtol=0, atol=1e-12 * scale):
        raise ModelError("user cost must be symmetric around zero")
    pos = vals[grid >= 0]
    if np.any(np.diff(pos) <= 0):
        raise ModelError("user cost must be strictly increasing on [0, 1]")
    # midpoint convexity on consecutive triples of the grid
    mid = vals[1:-1]
    chord = 0.5 * (vals[:-2] + vals[2:])
    if np.any(mid >= chord):
        raise ModelError("user cost must be strictly convex on [-1, 1]")
    return AttentionCost("user-supplied", h, dh, d2h)


def cost_from_name(name: str, units: str = "nats") -> AttentionCost:
    """Look up a built-in cost by its CLI name."""
    if name == "quadratic":
        return quadratic()
    if name in ("entropy", "binary-entropy"):
        return binary_entropy(units)
    raise DomainError(f"unknown cost {name!r}; expected 'quadratic' or 'entropy'")


def evaluate(cost: AttentionCost, mu):
    """Return ``h(mu)`` for ``mu`` in [-1, 1]."""
    arr = np.asarray(mu, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(np.abs(arr) > 1.0 + _EDGE):
        raise DomainError(f"posterior mean must lie in [-1, 1], got {mu!r}")
    return _as_float(cost.h(np.clip(arr, -1.0, 1.0)))


def _bisect_increasing(f, target, lo, hi, tol=BISECT_TOL, maxiter=BISECT_MAXITER):
    """Vectorised bisection for ``f(t) = target`` with ``f`` increasing in ``t``.

    Iterates until the bracket is narrower than ``tol * 1e-5`` (so the
    returned point is far inside the tolerance) or ``maxiter`` is hit.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    lo, hi, target = np.broadcast_arrays(lo, hi, np.asarray(target, dtype=float))
    lo, hi = lo.copy(), hi.copy()
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        above = f(mid) >= target
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.all(hi - lo <= tol * 1e-5):
            break
    return 0.5 * (lo + hi)


def _check_bandwidth(cost: AttentionCost, bandwidth: float) -> None:
    if not np.isfinite(bandwidth) or bandwidth <= 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth!r}")
    if bandwidth >= cost.h_max:
        raise InfeasibleBandwidthError(
            f"bandwidth {bandwidth!r} must be below h(1) = {cost.h_max!r}")


def inverse_on_positive(cost: AttentionCost, c):
    """Return the unique ``mu >= 0`` with ``h(mu) = c``."""
    arr = np.asarray(c, dtype=float)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise DomainError(f"cost level must be nonnegative, got {c!r}")
    if np.any(arr > cost.h_max * (1 + 1e-14)):
        raise InfeasibleBandwidthError(
            f"cost level {c!r} exceeds h(1) = {cost.h_max!r}")
    if cost.kind == "quadratic":
        return _as_float(np.sqrt(arr))
    mu = _bisect_increasing(cost.h, arr, 0.0, 1.0)
    return _as_float(np.where(arr >= cost.h_max, 1.0, mu))


def binary_cost(cost: AttentionCost, x, y):
    """Attention cost of the binary signal with posterior means ``(-x, y)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(x > 1) or np.any(y < 0) or np.any(y > 1):
        raise DomainError("posterior-mean magnitudes must lie in [0, 1]")
    s = x + y
    if np.any(s <= 0):
        raise DegenerateSignalError("x = y = 0 does not define a signal")
    return _as_float((y * cost.h(x) + x * cost.h(y)) / s)


def _level_curve_y(cost: AttentionCost, x, bandwidth):
    """Unchecked, vectorised core of :func:`level_curve_y`."""
    x = np.asarray(x, dtype=float)
    hx = cost.h(x)

    def cost_at(y):
        return (y * hx + x * cost.h(y)) / (x + y)

    return _bisect_increasing(cost_at, bandwidth, 0.0, 1.0)


def level_curve_y_unchecked(cost: AttentionCost, x: float, bandwidth: float) -> float:
    """Scalar level-curve point without argument validation (hot path)."""
    hx = float(cost.h(x))

    def excess(y):
        return (y * hx + x * float(cost.h(y))) / (x + y) - bandwidth

    if excess(1.0) <= 0.0:
        return 1.0
    return brentq(excess, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                  maxiter=BISECT_MAXITER)


def level_curve_y(cost: AttentionCost, x: float, bandwidth: float) -> float:
    """R-biased branch of the level curve: ``y <= x`` with ``I(x, y) = bandwidth``.

    Defined for ``x`` in ``[h^-1(bandwidth), 1]``; ``I`` is strictly
    increasing in ``y``, so the root is found by bisection on [0, 1].
    """
    _check_bandwidth(cost, bandwidth)
    x_min = inverse_on_positive(cost, bandwidth)
    if not (x_min - 1e-10 <= x <= 1.0):
        raise InfeasiblePointError(
            f"x = {x!r} outside [{x_min:.10g}, 1]: no signal on this level curve")
    x = min(max(x, x_min), 1.0)
    return level_curve_y_unchecked(cost, x, bandwidth)


def check_dlambda_condition(cost: AttentionCost, x: float, y: float) -> bool:
    """Curvature condition under which disagreement falls as bandwidth grows.

    Only meaningful for R-biased interior points ``0 < y < x < 1``.
    """
    if cost.d2h is None:
        raise UnsupportedCostError(f"{cost.kind} cost has no second derivative")
    if not (0.0 < y < x < 1.0):
        raise DomainError(f"condition requires 0 < y < x < 1, got x={x!r}, y={y!r}")
    hx, hy = float(cost.h(x)), float(cost.h(y))
    dhx, dhy = float(cost.dh(x)), float(cost.dh(y))
    s = x + y
    lhs = y * (2 * x * y * y - x + y) / (-x * (2 * x * x * y - y + x))
    rhs = ((hx - hy + dhy * s) / (hy - hx + dhx * s)) * (
        float(cost.d2h(x)) / float(cost.d2h(y)))
    return bool(lhs < rhs)
