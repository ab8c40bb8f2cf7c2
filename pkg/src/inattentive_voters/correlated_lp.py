"""Correlating the three voters' recommendations.

Profiles are written as three letters (left-wing, centrist, right-wing).
Index ``i`` in 1..8 labels the profiles as below; ``a_i`` are probabilities
in the good state and ``b_i`` in the bad state.  Holding each voter's
marginal fixed, any joint distribution leaves voters' own payoffs
unchanged, so the designer may pick the one that maximises ``xi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import signal_model as sm
from .equilibrium import Electorate, solve_signals
from .errors import DomainError, LPInfeasibleError
from .simplex import LPResult, linprog_max, max_over_vertices

# index i -> profile; letter positions are (voter -1, voter 0, voter 1)
PROFILES = ("RRR", "RLR", "LRR", "RRL", "LLR", "LRL", "RLL", "LLL")

# 1-based profile indices in each consistency row: voter 1, voter 0, voter -1.
CONSISTENCY_ROWS = ((1, 2, 3, 5), (1, 3, 4, 6), (1, 2, 4, 7))

# Majority-R profiles: the incumbent is re-elected.
WINNING = (1, 2, 3, 4)

# Reference values for the quadratic, I = 0.1, v1 = 0.24 electorate.  The
# reference joint distribution does not satisfy the consistency rows for
# those marginals, so the LP value is the authoritative optimum.
REPORTED_CORRELATED_XI = 0.908
REPORTED_INDEPENDENT_XI = 0.457
DISCREPANCY_NOTE = (
    "reference correlated optimum 0.908 comes with a joint distribution that "
    "violates the consistency rows; xi_correlated is the LP optimum under them")


@dataclass(frozen=True)
class MarginalConstraints:
    """Probability each voter is told to vote R, by state."""

    right_good: float
    centre_good: float
    left_good: float
    right_bad: float
    centre_bad: float
    left_bad: float

    def __post_init__(self):
        for name, val in self.__dict__.items():
            if not 0.0 <= val <= 1.0:
                raise LPInfeasibleError(f"marginal {name} = {val!r} is not a probability")

    @property
    def good(self) -> tuple[float, float, float]:
        """Good-state marginals ordered as the consistency rows."""
        return self.right_good, self.centre_good, self.left_good

    @property
    def bad(self) -> tuple[float, float, float]:
        return self.right_bad, self.centre_bad, self.left_bad


@dataclass(frozen=True)
class JointRecommendationDistribution:
    """``a[i - 1]`` and ``b[i - 1]`` are the probabilities of profile ``i``."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        for name in ("a", "b"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (8,):
                raise DomainError(f"{name} must hold 8 probabilities")
            if np.any(arr < -1e-12) or abs(arr.sum() - 1.0) > 1e-9:
                raise DomainError(f"{name} is not a probability distribution")
            object.__setattr__(self, name, tuple(float(v) for v in arr))

    def by_profile(self) -> dict[str, tuple[float, float]]:
        return {p: (self.a[i], self.b[i]) for i, p in enumerate(PROFILES)}

    @property
    def xi(self) -> float:
        return joint_xi(self)


@dataclass(frozen=True)
class CorrelatedSolution:
    joint: JointRecommendationDistribution
    xi: float
    good_block: LPResult
    bad_block: LPResult

    @property
    def duality_gap(self) -> float:
        return self.good_block.duality_gap + self.bad_block.duality_gap


def joint_xi(joint: JointRecommendationDistribution) -> float:
    """Re-election probability in the good minus the bad state."""
    idx = [i - 1 for i in WINNING]
    return float(sum(joint.a[i] for i in idx) - sum(joint.b[i] for i in idx))


def marginals_from_electorate(e: Electorate) -> MarginalConstraints:
    """Marginals implied by the three optimal signals.

    The left-wing voter mirrors the right-wing one, so its R rates are
    ``1 - a_1^-`` (good state) and ``1 - a_1^+`` (bad state).
    """
    centre, right = solve_signals(e)
    r_plus, r_minus = sm.recommendation_rates(right)
    c_plus, c_minus = sm.recommendation_rates(centre)
    return MarginalConstraints(r_plus, c_plus, 1.0 - r_minus,
                               r_minus, c_minus, 1.0 - r_plus)


def _profile_prob(profile: str, left: float, centre: float, right: float) -> float:
    p = 1.0
    for letter, q in zip(profile, (left, centre, right)):
        p *= q if letter == "R" else 1.0 - q
    return p


def independent_joint(m: MarginalConstraints) -> tuple[JointRecommendationDistribution, float]:
    """Conditionally independent joint distribution and its ``xi``."""
    a = [_profile_prob(p, m.left_good, m.centre_good, m.right_good) for p in PROFILES]
    b = [_profile_prob(p, m.left_bad, m.centre_bad, m.right_bad) for p in PROFILES]
    joint = JointRecommendationDistribution(tuple(a), tuple(b))
    return joint, joint_xi(joint)


def block_constraints(marginals: Sequence[float],
                      rows: Sequence[Sequence[int]] = CONSISTENCY_ROWS):
    """Equality system for one state: total mass one plus three consistency rows."""
    A = [np.ones(8)]
    for row in rows:
        line = np.zeros(8)
        line[[i - 1 for i in row]] = 1.0
        A.append(line)
    return np.array(A), np.array([1.0, *marginals])


def _objective(sign: float) -> np.ndarray:
    c = np.zeros(8)
    c[[i - 1 for i in WINNING]] = sign
    return c


def maximize_correlated_xi(m: MarginalConstraints,
                           rows: Sequence[Sequence[int]] = CONSISTENCY_ROWS
                           ) -> CorrelatedSolution:
    """Best joint distribution with the given marginals.

    Nothing couples the two states, so the LP splits into maximising the
    good-state win probability and minimising the bad-state one.
    Raises :class:`LPInfeasibleError` when the marginals cannot be met.
    """
    A, b_good = block_constraints(m.good, rows)
    _, b_bad = block_constraints(m.bad, rows)
    good = linprog_max(_objective(1.0), A, b_good)
    bad = linprog_max(_objective(-1.0), A, b_bad)
    joint = JointRecommendationDistribution(tuple(good.x), tuple(bad.x))
    return CorrelatedSolution(joint, good.objective + bad.objective, good, bad)


def maximize_correlated_xi_joint(m: MarginalConstraints) -> tuple[np.ndarray, float]:
    """The undivided 16-variable LP, kept to check that splitting loses nothing."""
    A, b_good = block_constraints(m.good)
    _, b_bad = block_constraints(m.bad)
    Z = np.zeros_like(A)
    big_A = np.block([[A, Z], [Z, A]])
    big_b = np.concatenate([b_good, b_bad])
    c = np.concatenate([_objective(1.0), _objective(-1.0)])
    res = linprog_max(c, big_A, big_b)
    return res.x, res.objective


def vertex_oracle(m: MarginalConstraints) -> float:
    """``xi*`` by enumerating every basic feasible solution of each block."""
    A, b_good = block_constraints(m.good)
    _, b_bad = block_constraints(m.bad)
    best_good, _ = max_over_vertices(_objective(1.0), A, b_good)
    best_bad, _ = max_over_vertices(_objective(-1.0), A, b_bad)
    return best_good + best_bad

