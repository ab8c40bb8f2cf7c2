"""Electoral accountability with rationally inattentive voters.

Optimal attention-constrained signals, the societal incentive power they
generate, and two extensions: correlated recommendations (a small LP) and a
continuum of performance states under a mutual-information budget.
"""

from .attention_costs import AttentionCost, binary_entropy, custom, quadratic
from .equilibrium import (
    Electorate,
    EquilibriumReport,
    ModelPrimitives,
    accountability,
    benchmark_full_information,
    derive_performance_pmf,
    effort_threshold,
    polarization_delta,
    societal_incentive_power,
)
from .signal_model import BinarySignal
from .signal_solver import VoterProblem, solve_optimal_signal

__all__ = [
    "AttentionCost",
    "BinarySignal",
    "Electorate",
    "EquilibriumReport",
    "ModelPrimitives",
    "VoterProblem",
    "accountability",
    "benchmark_full_information",
    "binary_entropy",
    "custom",
    "derive_performance_pmf",
    "effort_threshold",
    "polarization_delta",
    "quadratic",
    "societal_incentive_power",
    "solve_optimal_signal",
]

__version__ = "0.1.0"
