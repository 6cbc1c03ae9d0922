"""Continued fractions, sample-size planning and discrepancy sums"""

from .constants import (
    KNOWN_TYPES,
    LEVY_CONSTANT,
    LEVY_EXPONENT,
    LITERATURE_TYPE_BOUNDS,
    NAMED_DECIMALS,
    IrrationalSpec,
    resolve_irrational,
)
from .contfrac import (
    Convergent,
    continued_fraction,
    convergents,
    iter_convergents,
    iter_partial_quotients,
)
from .diophantine import (
    ConvergentPlan,
    PlanPair,
    RatioDiagnostics,
    SlowConvergence,
    nearest_int_distance,
    nearest_small_rational,
    plan_sample_sizes,
    ratio_diagnostics,
    round_half_away,
    sin_condition_profile,
    sin_multiple,
    slow_convergence_check,
    type_sum,
)
from .discrepancy import (
    DEFAULT_ERDOS_TURAN_C,
    breakpoint_grid,
    chi_block,
    chi_discrepancy,
    erdos_turan_rhs,
    exponential_sum_bound,
)

__all__ = [
    # Constants
    "KNOWN_TYPES",
    "LEVY_CONSTANT",
    "LEVY_EXPONENT",
    "LITERATURE_TYPE_BOUNDS",
    "NAMED_DECIMALS",
    "IrrationalSpec",
    "resolve_irrational",
    # Continued fractions
    "Convergent",
    "continued_fraction",
    "convergents",
    "iter_convergents",
    "iter_partial_quotients",
    # Planning and ratio diagnostics
    "ConvergentPlan",
    "PlanPair",
    "RatioDiagnostics",
    "SlowConvergence",
    "nearest_int_distance",
    "nearest_small_rational",
    "plan_sample_sizes",
    "ratio_diagnostics",
    "round_half_away",
    "sin_condition_profile",
    "sin_multiple",
    "slow_convergence_check",
    "type_sum",
    # Discrepancy
    "DEFAULT_ERDOS_TURAN_C",
    "breakpoint_grid",
    "chi_block",
    "chi_discrepancy",
    "erdos_turan_rhs",
    "exponential_sum_bound",
]
