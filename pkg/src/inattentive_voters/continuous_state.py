"""Single voter, continuum of performance states, Shannon attention cost.

The state ``omega`` lives on [-1, 1] and is discretised on a uniform grid
with trapezoid quadrature.  The voter (utility ``omega - v`` from the
incumbent) picks ``m(omega)``, the probability of being told to vote R,
subject to a mutual-information budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import expit, logit, xlogy

from .errors import DomainError

GRID_POINTS = 2001
LAMBDA_BRACKET = (1e-6, 10.0)
CAPACITY_TOL = 1e-9
DAMPING = 0.5
FIXED_POINT_TOL = 1e-10
FIXED_POINT_MAXITER = 10_000
_Q_FLOOR = 1e-300


def binary_entropy_nats(p):
    p = np.asarray(p, dtype=float)
    return -(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p))


@dataclass(frozen=True)
class ContinuousModel:
    """Effort-conditional densities of the performance state on a grid."""

    grid: np.ndarray
    p1: np.ndarray
    p0: np.ndarray
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 1 or g.size < 3 or not np.allclose(np.diff(g), g[1] - g[0]):
            raise DomainError("grid must be uniform with at least 3 points")
        if abs(g[0] + 1.0) > 1e-12 or abs(g[-1] - 1.0) > 1e-12:
            raise DomainError("grid must span [-1, 1]")
        for name in ("p1", "p0"):
            d = np.asarray(getattr(self, name), dtype=float)
            if d.shape != g.shape or np.any(d < 0):
                raise DomainError(f"{name} must be a nonnegative density on the grid")
            if abs(trapezoid(d, g) - 1.0) > 1e-9:
                raise DomainError(f"{name} does not integrate to one")

    @property
    def pbar(self) -> np.ndarray:
        """State density when a high-ability incumbent works hard."""
        return self.alpha * self.p1 + (1.0 - self.alpha) * self.p0

    @classmethod
    def from_functions(cls, p1: Callable, p0: Callable, alpha: float,
                       n: int = GRID_POINTS) -> "ContinuousModel":
        grid = np.linspace(-1.0, 1.0, n)
        return cls(grid, np.asarray(p1(grid), dtype=float),
                   np.asarray(p0(grid), dtype=float), alpha)


def linear_model(n: int = GRID_POINTS) -> ContinuousModel:
    """``p1 = (1 + w) / 2``, ``p0 = (1 - w) / 2``, ``alpha = 1/2``; uniform ``pbar``."""
    return ContinuousModel.from_functions(lambda w: (1 + w) / 2, lambda w: (1 - w) / 2, 0.5, n)


@dataclass(frozen=True)
class ContinuousSolution:
    m: np.ndarray
    q: float
    lam: float
    capacity_used: float
    P: float
    objective: float
    unconstrained: bool = False


def mutual_information(m, model: ContinuousModel) -> float:
    """Mutual information (nats) between the state and the recommendation."""
    m = np.asarray(m, dtype=float)
    if np.any(m < 0) or np.any(m > 1):
        raise DomainError("recommendation probabilities must lie in [0, 1]")
    pbar = model.pbar
    q = trapezoid(m * pbar, model.grid)
    mi = binary_entropy_nats(q) - trapezoid(pbar * binary_entropy_nats(m), model.grid)
    return float(max(mi, 0.0))


def incentive_power(m, model: ContinuousModel) -> float:
    return float(trapezoid(np.asarray(m) * (model.p1 - model.p0), model.grid))


def expected_gain(m, v: float, model: ContinuousModel) -> float:
    """Expressive-voting gain of an obeyed policy ``m``."""
    return float(trapezoid(np.asarray(m) * (model.grid - v) * model.pbar, model.grid))


def cutoff_policy(v: float, model: ContinuousModel) -> np.ndarray:
    """Full-information behaviour: vote R exactly when ``omega > v``."""
    return (model.grid > v).astype(float)


def _logit_policy(v, lam, q, grid):
    return expit((grid - v) / lam + logit(q))


def _fixed_point(v, lam, model, q0):
    """Alternate policy and R-share updates at a fixed shadow price ``lam``."""
    grid, pbar = model.grid, model.pbar
    q = q0
    for _ in range(FIXED_POINT_MAXITER):
        m = _logit_policy(v, lam, q, grid)
        q_new = (1.0 - DAMPING) * q + DAMPING * trapezoid(m * pbar, grid)
        q_new = min(max(q_new, _Q_FLOOR), 1.0 - 1e-16)
        if abs(q_new - q) <= FIXED_POINT_TOL:
            q = q_new
            break
        q = q_new
    return _logit_policy(v, lam, q, grid), q


def _solution(v, lam, m, q, model, unconstrained=False):
    return ContinuousSolution(
        m=m, q=float(q), lam=float(lam),
        capacity_used=mutual_information(m, model),
        P=incentive_power(m, model),
        objective=expected_gain(m, v, model),
        unconstrained=unconstrained,
    )


def solve_single_voter(v: float, capacity: float, model: ContinuousModel,
                       units: str = "nats") -> ContinuousSolution:
    """Optimal recommendation policy under a mutual-information budget.

    For a shadow price ``lam`` the optimum is the logit rule
    ``m = q e^{(w - v)/lam} / (q e^{(w - v)/lam} + 1 - q)`` with ``q`` the
    resulting share of R recommendations.  ``lam`` is bisected (in logs)
    until the budget binds.  If even full information fits the budget, the
    cutoff rule is returned with ``unconstrained=True``.
    """
    if not 0.0 < v < 1.0:
        raise DomainError(f"v must lie in (0, 1), got {v!r}")
    if units not in ("nats", "bits"):
        raise DomainError(f"units must be 'nats' or 'bits', got {units!r}")
    if not capacity > 0:
        raise DomainError(f"capacity must be positive, got {capacity!r}")
    cap = capacity * math.log(2.0) if units == "bits" else capacity

    full = cutoff_policy(v, model)
    if mutual_information(full, model) <= cap:
        q = trapezoid(full * model.pbar, model.grid)
        return _solution(v, 0.0, full, q, model, unconstrained=True)

    lo, hi = math.log(LAMBDA_BRACKET[0]), math.log(LAMBDA_BRACKET[1])
    q = 0.5
    best = None
    for _ in range(200):
        lam = math.exp(0.5 * (lo + hi))
        m, q = _fixed_point(v, lam, model, q)
        mi = mutual_information(m, model)
        # keep the feasible iterate closest to the budget
        if mi <= cap:
            best = (lam, m, q)
            hi = math.log(lam)
        else:
            lo = math.log(lam)
        if abs(mi - cap) <= CAPACITY_TOL or hi - lo < 1e-15:
            break
    if best is None:
        lam = math.exp(hi)
        m, q = _fixed_point(v, lam, model, q)
        best = (lam, m, q)
    lam, m, q = best
    return _solution(v, lam, m, q, model)
