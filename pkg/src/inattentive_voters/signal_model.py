"""Binary signals and the closed-form statistics attached to them.

A binary signal is identified by ``(x, y) = (|mu_L|, mu_R)``, the magnitudes
of the posterior means after an L and an R recommendation.  Bayes
plausibility pins down the realisation probabilities, so nothing is lost.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSignalError, DomainError


@dataclass(frozen=True)
class BinarySignal:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise DomainError(f"signal components must lie in [0, 1], got ({x}, {y})")
        if x + y <= 0.0:
            raise DegenerateSignalError("x = y = 0 does not define a signal")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def bias_ratio(self) -> float:
        """``x / y``; above one means R-biased."""
        return self.x / self.y if self.y > 0 else float("inf")


@dataclass(frozen=True)
class SignalStatistics:
    a_plus: float
    a_minus: float
    incentive_power: float
    value: float


def outcome_probabilities(sig: BinarySignal) -> tuple[float, float]:
    """``(pi_L, pi_R)``, the probabilities of the two recommendations."""
    s = sig.x + sig.y
    return sig.y / s, sig.x / s


def recommendation_rates(sig: BinarySignal) -> tuple[float, float]:
    """Probabilities of recommending R in the good and in the bad state."""
    s = sig.x + sig.y
    return sig.x * (1.0 + sig.y) / s, sig.x * (1.0 - sig.y) / s


def incentive_power(sig: BinarySignal) -> float:
    """``P = 2xy / (x + y)``: how much more often R is recommended when good."""
    return 2.0 * sig.x * sig.y / (sig.x + sig.y)


def disagreement(right_sig: BinarySignal) -> float:
    """Probability the two extreme voters get conflicting recommendations.

    The left-wing voter's signal is the mirror of ``right_sig``.
    """
    x, y = right_sig.x, right_sig.y
    return 1.0 - 2.0 * x * y * (1.0 + x * y) / (x + y) ** 2


def value_gain(sig: BinarySignal, v: float) -> float:
    """Expected expressive-voting gain of consuming ``sig`` for preference ``v``.

    For ``v <= 0`` the voter defaults to L and gains when an R recommendation
    flips him; for ``v > 0`` the reverse.
    """
    if not -1.0 < v < 1.0:
        raise DomainError(f"preference parameter must lie in (-1, 1), got {v!r}")
    x, y = sig.x, sig.y
    if v <= 0:
        return x / (x + y) * max(v + y, 0.0)
    return y / (x + y) * max(x - v, 0.0)


def mirror(sig: BinarySignal) -> BinarySignal:
    """The signal a mirror-image voter would acquire: swap ``x`` and ``y``."""
    return BinarySignal(sig.y, sig.x)


def statistics(sig: BinarySignal, v: float) -> SignalStatistics:
    a_plus, a_minus = recommendation_rates(sig)
    return SignalStatistics(a_plus, a_minus, incentive_power(sig), value_gain(sig, v))
