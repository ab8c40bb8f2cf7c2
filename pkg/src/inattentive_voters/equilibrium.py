"""From individual signals to electoral accountability and selection.

Three voters: a centrist (mass ``f0``, preference 0) and two mirror-image
extremes with preference ``+-v1``.  The incumbent's re-election chances in
the good and bad state differ by the societal incentive power ``xi``;
high effort is sustainable iff ``xi`` reaches the effort threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from . import attention_costs as ac
from . import signal_model as sm
from .attention_costs import AttentionCost
from .errors import DomainError, InvalidPrimitivesError
from .signal_model import BinarySignal
from .signal_solver import VoterProblem, solve_optimal_signal

PRIMITIVE_TOL = 1e-9

CENTRIST_ONLY = "centrist-only"
ALL_PIVOTAL = "all-pivotal"


@dataclass(frozen=True)
class ModelPrimitives:
    """Ability, effort and performance parameters.

    ``p1_good`` / ``p0_good`` are the probabilities of the good performance
    state under high / low effort.  Construction checks the mean-zero
    ability prior, the two likelihood-ratio equations and ``pbar(1) = 1/2``.
    """

    alpha: float
    h_ability: float
    l_ability: float
    p1_good: float
    p0_good: float
    effort_cost: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InvalidPrimitivesError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not (self.h_ability > 1.0 and self.l_ability < -1.0):
            raise InvalidPrimitivesError(
                "abilities must satisfy h > 1 > -1 > l, got "
                f"h={self.h_ability!r}, l={self.l_ability!r}")
        for name in ("p1_good", "p0_good"):
            p = getattr(self, name)
            if not 0.0 < p < 1.0:
                raise InvalidPrimitivesError(f"{name} must lie in (0, 1), got {p!r}")
        if self.effort_cost is not None and not self.effort_cost > 0:
            raise InvalidPrimitivesError(f"effort cost must be positive, got {self.effort_cost!r}")
        bad = {k: r for k, r in primitive_residuals(self).items() if abs(r) > PRIMITIVE_TOL}
        if bad:
            raise InvalidPrimitivesError(f"inconsistent primitives, residuals {bad}")


def _likelihood_ratios(alpha, h, l):
    good = (1 - alpha) * (abs(l) + 1) / (alpha * (h - 1))
    bad = (1 - alpha) * (abs(l) - 1) / (alpha * (h + 1))
    return good, bad


def primitive_residuals(prim: ModelPrimitives) -> dict[str, float]:
    """Residuals of the four consistency equations (all zero when valid)."""
    a, h, l = prim.alpha, prim.h_ability, prim.l_ability
    p1, p0 = prim.p1_good, prim.p0_good
    r_good, r_bad = _likelihood_ratios(a, h, l)
    return {
        "mean_zero_ability": a * h + (1 - a) * l,
        "likelihood_good": p1 / p0 - r_good,
        "likelihood_bad": (1 - p1) / (1 - p0) - r_bad,
        "pbar_good": a * p1 + (1 - a) * p0 - 0.5,
    }


def derive_performance_pmf(alpha: float, h_ability: float,
                           effort_cost: Optional[float] = None) -> ModelPrimitives:
    """Fill in ``l`` and the performance p.m.f. from ``alpha`` and ``h``.

    ``l`` follows from the mean-zero prior; ``p1_good / p0_good`` from the
    good-state likelihood ratio; the level from ``pbar(1) = 1/2``.  The
    bad-state ratio is then implied and checked rather than imposed.
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidPrimitivesError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not h_ability > 1.0:
        raise InvalidPrimitivesError(f"high ability must exceed 1, got {h_ability!r}")
    l_ability = -alpha * h_ability / (1 - alpha)
    if not l_ability < -1.0:
        raise InvalidPrimitivesError(
            f"implied low ability {l_ability!r} must be below -1")
    r_good, _ = _likelihood_ratios(alpha, h_ability, l_ability)
    p0 = 0.5 / (alpha * r_good + 1 - alpha)
    p1 = r_good * p0
    if not p1 < 1.0:
        raise InvalidPrimitivesError(
            f"implied p1(1) = {p1!r} is not a probability")
    return ModelPrimitives(alpha, h_ability, l_ability, p1, p0, effort_cost)


def effort_threshold(prim: ModelPrimitives) -> float:
    """``c_hat = c / (p1(1) - p0(1))``."""
    if prim.effort_cost is None:
        raise InvalidPrimitivesError("effort cost is not set")
    gap = prim.p1_good - prim.p0_good
    if not gap > 0:
        raise InvalidPrimitivesError("high effort must raise the chance of good performance")
    return prim.effort_cost / gap


@dataclass(frozen=True)
class Electorate:
    """Symmetric three-voter electorate; extremes have mass ``(1 - f0) / 2``."""

    f0: float
    v1: float
    I0: float
    I1: float
    cost: AttentionCost

    def __post_init__(self):
        if not 0.0 < self.f0 < 1.0:
            raise DomainError(f"centrist mass must lie in (0, 1), got {self.f0!r}")
        if not 0.0 <= self.v1 < 1.0:
            raise DomainError(f"v1 must lie in [0, 1), got {self.v1!r}")
        ac._check_bandwidth(self.cost, self.I0)
        ac._check_bandwidth(self.cost, self.I1)


@dataclass(frozen=True)
class EquilibriumReport:
    xi: float
    P0: float
    P1: float
    D: float
    pivotal_regime: str
    centrist_signal: Optional[BinarySignal] = None
    right_signal: Optional[BinarySignal] = None
    c_hat: Optional[float] = None
    sustainable: Optional[bool] = None
    selection: Optional[float] = None


def combine(P1: float, D: float, P0: float, f0: float) -> tuple[float, str]:
    """Societal incentive power from its components; ties at 1/2 go to the centrist."""
    if f0 >= 0.5:
        return P0, CENTRIST_ONLY
    return P1 + D * P0, ALL_PIVOTAL


def solve_signals(e: Electorate) -> tuple[BinarySignal, BinarySignal]:
    """Optimal signals of the centrist and the right-wing voter."""
    centre = solve_optimal_signal(VoterProblem(0.0, e.I0, e.cost)).signal
    right = solve_optimal_signal(VoterProblem(e.v1, e.I1, e.cost)).signal
    return centre, right


def societal_incentive_power(e: Electorate) -> EquilibriumReport:
    centre, right = solve_signals(e)
    P0 = sm.incentive_power(centre)
    P1 = sm.incentive_power(right)
    D = sm.disagreement(right)
    xi, regime = combine(P1, D, P0, e.f0)
    return EquilibriumReport(xi, P0, P1, D, regime, centre, right)


def assess(xi: float, c_hat: float) -> tuple[bool, float]:
    """Sustainability and selection; an indifferent incumbent works hard."""
    sustainable = xi >= c_hat
    return sustainable, (xi / 2.0 if sustainable else 0.0)


def accountability(e: Electorate, prim: ModelPrimitives) -> EquilibriumReport:
    report = societal_incentive_power(e)
    c_hat = effort_threshold(prim)
    sustainable, selection = assess(report.xi, c_hat)
    return replace(report, c_hat=c_hat, sustainable=sustainable, selection=selection)


def benchmark_full_information(prim: ModelPrimitives) -> EquilibriumReport:
    """Unlimited attention: every voter sees the state and ``xi = 1``."""
    c_hat = effort_threshold(prim)
    sustainable, selection = assess(1.0, c_hat)
    return EquilibriumReport(1.0, 1.0, 1.0, 0.0, "full-information",
                             c_hat=c_hat, sustainable=sustainable, selection=selection)


def polarization_delta(P1: float, D: float, P0: float) -> float:
    """Change in ``xi`` when the centrist loses its majority: ``P1 - (1 - D) P0``."""
    for name, val in (("P1", P1), ("D", D), ("P0", P0)):
        if not (0.0 <= val <= 1.0) or math.isnan(val):
            raise DomainError(f"{name} must lie in [0, 1], got {val!r}")
    return P1 - (1.0 - D) * P0
