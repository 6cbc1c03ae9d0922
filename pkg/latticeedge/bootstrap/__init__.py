"""Bootstrap of the sum of sample means: resampling, plug-in expansions, coverage"""

from .coverage import (
    CONVENTIONS,
    COVERAGE_COLUMNS,
    Convention,
    CoverageResult,
    CoverageRow,
    coverage_experiment,
    coverage_row,
    nominal_coverage,
)
from .plugin import (
    PluginMoments,
    SampleMoments,
    empirical_model,
    plugin_expansion,
    plugin_moments,
)
from .resampling import (
    BootstrapQuantile,
    PercentileInterval,
    bootstrap_quantile,
    bootstrap_quantiles,
    inf_quantile,
    percentile_interval,
    resample_differences,
    resample_sum,
)
from .samples import PopulationSample, SampleSet

__all__ = [
    # Samples
    "PopulationSample",
    "SampleSet",
    # Resampling
    "BootstrapQuantile",
    "PercentileInterval",
    "bootstrap_quantile",
    "bootstrap_quantiles",
    "inf_quantile",
    "percentile_interval",
    "resample_differences",
    "resample_sum",
    # Plug-in
    "PluginMoments",
    "SampleMoments",
    "empirical_model",
    "plugin_expansion",
    "plugin_moments",
    # Coverage
    "CONVENTIONS",
    "COVERAGE_COLUMNS",
    "Convention",
    "CoverageResult",
    "CoverageRow",
    "coverage_experiment",
    "coverage_row",
    "nominal_coverage",
]
