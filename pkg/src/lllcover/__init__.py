"""Bounds and constructions for strength-3 and binary strength-4 covering arrays."""

from .arrays import (
    ArrayFormatError,
    CoveringArray,
    DeficiencyWitness,
    column_weights,
    coverage_deficiencies,
    parse_array,
    serialize_array,
    verify_covering,
)
from .asymptotics import (
    BoundCoefficient,
    CriticalPoint,
    GrowthRate,
    coefficient_t3,
    critical_a_t3,
    general_coefficient,
    growth_rate_t3,
    solve_outer_t4,
)
from .combinatorics import (
    ExactProbability,
    LLLInstance,
    lll_condition,
    min_rows_for_coverage,
    missing_word_prob_t3,
    missing_word_prob_t4_q2,
)
from .generator import generate_covering, monte_carlo_missing_prob, sample_equal_weight_array

__version__ = "0.1.0"
