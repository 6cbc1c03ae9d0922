"""Edgeworth expansion terms for sums of lattice sample means"""

from .coefficients import (
    LatticeAnchor,
    LatticeCoefficients,
    lattice_coefficients,
    lattice_phase,
    lattice_step,
    rho_12,
    skewness_beta,
    xi_jn,
    xi_n,
)
from .expansion import (
    VARIANTS,
    ExpansionBreakdown,
    ExpansionSettings,
    Variant,
    component_lattice_term,
    expansion_grid,
    full_expansion,
    one_sample_expansion,
    smooth_expansion,
)
from .kterm import (
    BlockingConfig,
    gaussian_pair_derivative,
    gaussian_pair_derivatives,
    k_blocked,
    k_direct,
    nu_window,
)
from .sawtooth import fractional_phase, lattice_psi, psi, snap_to_integer

__all__ = [
    # Sawtooth
    "fractional_phase",
    "lattice_psi",
    "psi",
    "snap_to_integer",
    # Coefficients
    "LatticeAnchor",
    "LatticeCoefficients",
    "lattice_coefficients",
    "lattice_phase",
    "lattice_step",
    "rho_12",
    "skewness_beta",
    "xi_jn",
    "xi_n",
    # K_n
    "BlockingConfig",
    "gaussian_pair_derivative",
    "gaussian_pair_derivatives",
    "k_blocked",
    "k_direct",
    "nu_window",
    # Expansions
    "VARIANTS",
    "ExpansionBreakdown",
    "ExpansionSettings",
    "Variant",
    "component_lattice_term",
    "expansion_grid",
    "full_expansion",
    "one_sample_expansion",
    "smooth_expansion",
]
