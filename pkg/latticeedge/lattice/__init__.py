"""Lattice laws, the sum-of-means model and the exact oracle"""

from .law import (
    LatticeLaw,
    PopulationMoments,
    bernoulli,
    make_lattice_law,
    moments,
    reflect_law,
    scale_law,
)
from .model import MeanSumModel, ModelFile, Population, weighted_sum_model
from .oracle import (
    DiscreteCdf,
    exact_cdf_standardized,
    exact_sum_distribution,
    oracle_atom_count,
)

__all__ = [
    "LatticeLaw",
    "PopulationMoments",
    "bernoulli",
    "make_lattice_law",
    "moments",
    "reflect_law",
    "scale_law",
    "MeanSumModel",
    "ModelFile",
    "Population",
    "weighted_sum_model",
    "DiscreteCdf",
    "exact_cdf_standardized",
    "exact_sum_distribution",
    "oracle_atom_count",
]
