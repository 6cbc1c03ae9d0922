"""One-term Edgeworth expansions with lattice corrections"""

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Literal, Optional, Sequence

from scipy.special import ndtr
from scipy.stats import norm

from ..config import tail_eps as default_tail_eps
from ..errors import InvalidModelError
from ..lattice import LatticeLaw, MeanSumModel
from .coefficients import (
    LatticeAnchor,
    lattice_phase,
    lattice_step,
    skewness_beta,
)
from .kterm import BlockingConfig, k_blocked, k_direct
from .sawtooth import lattice_psi, psi

Variant = Literal["smooth", "one-sample", "two-sample-direct", "two-sample-blocked"]
VARIANTS = ("smooth", "one-sample", "two-sample-direct", "two-sample-blocked")

TOTAL_TOLERANCE = 1e-14
ROW_FIELDS = ("x", "normal", "skew", "lattice", "total", "variant")


@dataclass(frozen=True)
class ExpansionBreakdown:
    """Terms of an expansion of P{(S - ES)/sqrt(Var S) <= x}"""

    x: float
    normal: float
    skew: float
    lattice: float
    variant: str
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", self.normal + self.skew + self.lattice)
        if not 0.0 <= self.normal <= 1.0:
            raise InvalidModelError(f"normal term outside [0, 1]: {self.normal}")

    def to_row(self) -> Dict[str, object]:
        row = asdict(self)
        return {key: row[key] for key in ROW_FIELDS}


@dataclass(frozen=True)
class ExpansionSettings:
    lattice_anchor: LatticeAnchor = "centered"
    tail_eps: float = field(default_factory=default_tail_eps)
    blocking: Optional[BlockingConfig] = None

    def blocking_config(self) -> BlockingConfig:
        return self.blocking or BlockingConfig(tail_eps=self.tail_eps)


def _skew_term(beta: float, n: int, x: float) -> float:
    return beta * (1.0 - x * x) * float(norm.pdf(x)) / (6.0 * math.sqrt(n))


def smooth_expansion(model: MeanSumModel, x: float) -> ExpansionBreakdown:
    """Phi(x) + n^(-1/2) beta (1 - x**2) phi(x) / 6"""
    return ExpansionBreakdown(
        x=x,
        normal=float(ndtr(x)),
        skew=_skew_term(skewness_beta(model), model.n, x),
        lattice=0.0,
        variant="smooth",
    )


def one_sample_expansion(
    law: LatticeLaw,
    n: int,
    x: float,
    anchor: LatticeAnchor = "centered",
) -> ExpansionBreakdown:
    """Expansion of the standardized mean of n draws from one lattice law.

    The discontinuous term is
    n^(-1/2) (e0/sigma) psi{(x - xi_n) sigma n^(1/2) / e0} phi(x)
    with xi_n = (e0 / (sigma n^(1/2))) {1/2 - psi(phase)}.
    """
    model = MeanSumModel.of([law], [n])
    population = model.populations[0]
    sigma = population.moments.sigma
    e0 = law.span
    step = lattice_step(population)
    xi = step * (0.5 - psi(lattice_phase(population, anchor)))
    lattice = (
        (e0 / sigma) * lattice_psi((x - xi) / step) * float(norm.pdf(x)) / math.sqrt(n)
    )
    return ExpansionBreakdown(
        x=x,
        normal=float(ndtr(x)),
        skew=_skew_term(skewness_beta(model), n, x),
        lattice=lattice,
        variant="one-sample",
    )


def component_lattice_term(
    model: MeanSumModel, j: int, x: float, anchor: LatticeAnchor = "centered"
) -> float:
    """D_j(x) = (e_j / sigma_j) psi{(x - xi_jn) sigma_j n_j^(1/2) / e_j} phi(x)"""
    population = model.populations[j]
    step = lattice_step(population)
    xi = step * lattice_phase(population, anchor)
    return (
        (population.law.span / population.moments.sigma)
        * lattice_psi((x - xi) / step)
        * float(norm.pdf(x))
    )


def full_expansion(
    model: MeanSumModel,
    x: float,
    variant: Variant = "two-sample-direct",
    settings: Optional[ExpansionSettings] = None,
) -> ExpansionBreakdown:
    """Normal + skew + lattice terms for the chosen variant"""
    settings = settings or ExpansionSettings()
    if variant == "smooth":
        return smooth_expansion(model, x)
    if variant == "one-sample":
        if model.k != 1:
            raise InvalidModelError("one-sample variant needs exactly one population")
        population = model.populations[0]
        return one_sample_expansion(
            population.law, population.n, x, settings.lattice_anchor
        )
    if variant not in ("two-sample-direct", "two-sample-blocked"):
        raise InvalidModelError(f"unknown variant '{variant}'")
    if model.k != 2:
        raise InvalidModelError(f"variant '{variant}' needs exactly two populations")

    smooth = smooth_expansion(model, x)
    n1, n2 = model.sizes
    if variant == "two-sample-direct":
        k = k_direct(model, x, settings.tail_eps, settings.lattice_anchor)
    else:
        k = k_blocked(model, x, settings.blocking_config(), settings.lattice_anchor)
    return ExpansionBreakdown(
        x=x,
        normal=smooth.normal,
        skew=smooth.skew,
        lattice=k / math.sqrt(n1 * n2),
        variant=variant,
    )


def expansion_grid(
    model: MeanSumModel,
    xs: Sequence[float],
    variant: Variant = "two-sample-direct",
    settings: Optional[ExpansionSettings] = None,
) -> List[ExpansionBreakdown]:
    return [full_expansion(model, float(x), variant, settings) for x in xs]
