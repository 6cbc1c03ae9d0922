"""
latticeedge: Edgeworth expansions for sums of independent lattice sample means
"""

__version__ = "0.1.0"
__author__ = "latticeedge developers"

from .errors import (
    ConvergentOverflowError,
    InvalidModelError,
    LatticeEdgeError,
    OracleInfeasibleError,
    PrecisionExhaustedError,
    UndefinedBoundError,
)
from .lattice import (
    DiscreteCdf,
    LatticeLaw,
    MeanSumModel,
    Population,
    PopulationMoments,
    bernoulli,
    exact_cdf_standardized,
    exact_sum_distribution,
    make_lattice_law,
    moments,
    weighted_sum_model,
)
from .numtheory import (
    ConvergentPlan,
    IrrationalSpec,
    RatioDiagnostics,
    chi_discrepancy,
    continued_fraction,
    convergents,
    erdos_turan_rhs,
    nearest_int_distance,
    plan_sample_sizes,
    ratio_diagnostics,
    sin_condition_profile,
    type_sum,
)
from .edgeworth import (
    BlockingConfig,
    ExpansionBreakdown,
    ExpansionSettings,
    full_expansion,
    k_blocked,
    k_direct,
    lattice_coefficients,
    one_sample_expansion,
    psi,
    skewness_beta,
    smooth_expansion,
)
from .bootstrap import (
    BootstrapQuantile,
    CoverageResult,
    SampleSet,
    bootstrap_quantile,
    coverage_experiment,
    percentile_interval,
    plugin_expansion,
    resample_sum,
)
from .simulate import (
    ExperimentConfig,
    SimTable,
    estimate_P,
    oscillation_amplitude,
    run_figure1,
    run_figure2,
    z_alpha,
)
from .core import ExperimentRunner, RowTask, run_rows
from .storage import RunRecordStore

__all__ = [
    # Errors
    "ConvergentOverflowError",
    "InvalidModelError",
    "LatticeEdgeError",
    "OracleInfeasibleError",
    "PrecisionExhaustedError",
    "UndefinedBoundError",
    # Lattice laws and the exact oracle
    "DiscreteCdf",
    "LatticeLaw",
    "MeanSumModel",
    "Population",
    "PopulationMoments",
    "bernoulli",
    "exact_cdf_standardized",
    "exact_sum_distribution",
    "make_lattice_law",
    "moments",
    "weighted_sum_model",
    # Number theory
    "ConvergentPlan",
    "IrrationalSpec",
    "RatioDiagnostics",
    "chi_discrepancy",
    "continued_fraction",
    "convergents",
    "erdos_turan_rhs",
    "nearest_int_distance",
    "plan_sample_sizes",
    "ratio_diagnostics",
    "sin_condition_profile",
    "type_sum",
    # Expansions
    "BlockingConfig",
    "ExpansionBreakdown",
    "ExpansionSettings",
    "full_expansion",
    "k_blocked",
    "k_direct",
    "lattice_coefficients",
    "one_sample_expansion",
    "psi",
    "skewness_beta",
    "smooth_expansion",
    # Bootstrap
    "BootstrapQuantile",
    "CoverageResult",
    "SampleSet",
    "bootstrap_quantile",
    "coverage_experiment",
    "percentile_interval",
    "plugin_expansion",
    "resample_sum",
    # Experiments
    "ExperimentConfig",
    "SimTable",
    "estimate_P",
    "oscillation_amplitude",
    "run_figure1",
    "run_figure2",
    "z_alpha",
    # Execution and run records
    "ExperimentRunner",
    "RowTask",
    "run_rows",
    "RunRecordStore",
]
