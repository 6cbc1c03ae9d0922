"""Skewness and the two-sample lattice coefficients"""

import math
from dataclasses import dataclass
from typing import Literal

from ..errors import InvalidModelError
from ..lattice import MeanSumModel, Population
from .sawtooth import fractional_phase

LatticeAnchor = Literal["centered", "literal"]

UNIT_TOLERANCE = 1e-12


def skewness_beta(model: MeanSumModel) -> float:
    """beta = n^(1/2) sum_j mu3_j / n_j**2 / (sum_j sigma_j**2 / n_j)**(3/2)"""
    third = math.fsum(
        m.mu3 / p.n**2 for m, p in zip(model.moments, model.populations)
    )
    return math.sqrt(model.n) * third / model.variance**1.5


def lattice_phase(population: Population, anchor: LatticeAnchor = "centered") -> float:
    """Fractional lattice phase of a population's standardized mean.

    ``centered`` uses n_j (x_j - mu_j) / e_j, where the atoms of the
    standardized mean actually sit; ``literal`` uses n_j x_j / e_j.
    """
    law = population.law
    if anchor == "centered":
        y = population.n * (law.offset - population.moments.mean) / law.span
    elif anchor == "literal":
        y = population.n * law.offset / law.span
    else:
        raise InvalidModelError(f"unknown lattice anchor '{anchor}'")
    return fractional_phase(y)


def lattice_step(population: Population) -> float:
    """Atom spacing of the standardized mean: e_j / (sigma_j n_j^(1/2))"""
    return population.law.span / (population.moments.sigma * math.sqrt(population.n))


def xi_jn(population: Population, anchor: LatticeAnchor = "centered") -> float:
    return lattice_step(population) * lattice_phase(population, anchor)


@dataclass(frozen=True)
class LatticeCoefficients:
    c1: float
    c2: float
    c3: float
    c4: float
    gamma: float
    xi1n: float
    xi2n: float

    def __post_init__(self):
        if abs(self.c1**2 + self.c2**2 - 1.0) > UNIT_TOLERANCE:
            raise InvalidModelError("c1**2 + c2**2 must equal 1")


def _require_two(model: MeanSumModel) -> None:
    if model.k != 2:
        raise InvalidModelError(f"two populations required, got {model.k}")


def lattice_coefficients(
    model: MeanSumModel, anchor: LatticeAnchor = "centered"
) -> LatticeCoefficients:
    _require_two(model)
    p1, p2 = model.populations
    m1, m2 = model.moments
    e1, e2 = p1.law.span, p2.law.span
    n1, n2 = p1.n, p2.n
    v1, v2 = m1.variance / n1, m2.variance / n2
    return LatticeCoefficients(
        c1=math.sqrt(v1 / (v1 + v2)),
        c2=math.sqrt(v2 / (v1 + v2)),
        c3=e2 * n1 / (m1.sigma * n2),
        c4=(e1 / m2.sigma) * math.sqrt(n1 / n2),
        gamma=(e1 / m1.sigma) * (e2 / m2.sigma),
        xi1n=xi_jn(p1, anchor),
        xi2n=xi_jn(p2, anchor),
    )


def xi_n(model: MeanSumModel, x: float, anchor: LatticeAnchor = "centered") -> float:
    """{x - (c1 xi_1n + c2 xi_2n)} sigma_1 n_1^(1/2) / (c1 e1)"""
    coef = lattice_coefficients(model, anchor)
    p1 = model.populations[0]
    scale = p1.moments.sigma * math.sqrt(p1.n) / (coef.c1 * p1.law.span)
    return (x - (coef.c1 * coef.xi1n + coef.c2 * coef.xi2n)) * scale


def rho_12(model: MeanSumModel) -> float:
    """e2 n1 / (e1 n2)"""
    _require_two(model)
    return model.ratio(0, 1)
