"""Monte Carlo estimation and the P(x) / coverage experiment grids"""

from .config import (
    EXPANSION_METHODS,
    ExperimentConfig,
    Method,
    N2Rule,
    NRange,
    design_pairs,
    n2_for,
)
from .estimate import (
    MC_BLOCK,
    estimate_P,
    estimate_P_grid,
    simulate_sums,
    z_alpha,
)
from .figures import (
    SIM_COLUMNS,
    SimRow,
    SimTable,
    detrended_spread,
    oscillation_amplitude,
    run_figure1,
    run_figure2,
)

__all__ = [
    # Configuration
    "EXPANSION_METHODS",
    "ExperimentConfig",
    "Method",
    "N2Rule",
    "NRange",
    "design_pairs",
    "n2_for",
    # Estimation
    "MC_BLOCK",
    "estimate_P",
    "estimate_P_grid",
    "simulate_sums",
    "z_alpha",
    # Grids
    "SIM_COLUMNS",
    "SimRow",
    "SimTable",
    "detrended_spread",
    "oscillation_amplitude",
    "run_figure1",
    "run_figure2",
]
