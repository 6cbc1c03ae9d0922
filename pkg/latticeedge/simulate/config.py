"""Experiment configuration for the P(x) and coverage grids"""

import json
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..bootstrap import Convention
from ..edgeworth import ExpansionSettings, LatticeAnchor
from ..errors import InvalidModelError
from ..lattice import MeanSumModel
from ..lattice.model import BernoulliConvention, LawSpec, _first_error
from ..numtheory import (
    IrrationalSpec,
    plan_sample_sizes,
    resolve_irrational,
    round_half_away,
)
from ..rng import MAX_SEED

N2Rule = Literal["nearest-int", "convergent", "offset-power"]
Method = Literal["mc", "oracle", "smooth", "two-sample-direct", "two-sample-blocked"]
EXPANSION_METHODS = ("smooth", "two-sample-direct", "two-sample-blocked")


class NRange(BaseModel):
    """Inclusive range start, start + step, ..., <= end"""

    model_config = ConfigDict(extra="forbid")

    start: int = Field(ge=1)
    end: int = Field(ge=1)
    step: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _nonempty(self) -> "NRange":
        if self.end < self.start:
            raise ValueError(f"empty n1 range: end {self.end} < start {self.start}")
        return self

    def values(self) -> List[int]:
        return list(range(self.start, self.end + 1, self.step))


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    populations: List[LawSpec] = Field(min_length=2, max_length=2)
    bernoulli_convention: BernoulliConvention = "literal"
    rho0: Union[int, float, str] = "sqrt2"
    n1_range: NRange
    n2_rule: N2Rule = "nearest-int"
    kappa: Optional[float] = None
    alphas: List[float] = Field(
        default_factory=lambda: [0.95, 0.85, 0.75], min_length=1
    )
    reps: int = Field(default=100_000, ge=1)
    B: int = Field(default=999, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, le=MAX_SEED)
    method: Method = "oracle"
    convention: Convention = "literal"
    parametric: bool = False
    lattice_anchor: LatticeAnchor = "centered"
    oracle_budget: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_rule(self) -> "ExperimentConfig":
        if self.n2_rule == "offset-power":
            if self.kappa is None or not 0.0 < self.kappa < 1.0:
                raise ValueError("offset-power rule needs kappa in (0, 1)")
        for alpha in self.alphas:
            if not 0.0 < alpha < 1.0:
                raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise InvalidModelError(_first_error(e, "experiment config")) from e

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise InvalidModelError(f"malformed JSON in {path}: {e}") from e
        except OSError as e:
            raise InvalidModelError(f"cannot read {path}: {e}") from e
        return cls.from_dict(data)

    def with_seed(self, seed: Optional[int]) -> "ExperimentConfig":
        """Copy with the seed replaced when one is given"""
        if seed is None:
            return self
        return ExperimentConfig.from_dict({**self.model_dump(), "seed": seed})

    def require_seed(self) -> int:
        if self.seed is None:
            raise InvalidModelError(
                "randomized experiments need an explicit seed (config or --seed)"
            )
        return self.seed

    @property
    def target(self) -> IrrationalSpec:
        return resolve_irrational(self.rho0)

    def template(self) -> MeanSumModel:
        """Model with the configured laws and placeholder sizes (1, 1)"""
        laws = [p.to_law(self.bernoulli_convention) for p in self.populations]
        return MeanSumModel.of(laws, [1] * len(laws))

    def expansion_settings(self) -> ExpansionSettings:
        return ExpansionSettings(lattice_anchor=self.lattice_anchor)


def n2_for(
    n1: int,
    rule: N2Rule,
    rho0: Union[str, float, IrrationalSpec] = "sqrt2",
    kappa: Optional[float] = None,
) -> int:
    """Second sample size paired with n1.

    nearest-int: [rho0 n1]; offset-power: n1 + [n1^kappa]; convergent: the
    denominator q of the convergent p/q of rho0 with p = n1.
    """
    if rule == "nearest-int":
        n2 = round_half_away(resolve_irrational(rho0).fraction * n1)
    elif rule == "offset-power":
        if kappa is None or not 0.0 < kappa < 1.0:
            raise InvalidModelError("offset-power rule needs kappa in (0, 1)")
        n2 = n1 + round_half_away(n1**kappa)
    elif rule == "convergent":
        plan = plan_sample_sizes(resolve_irrational(rho0), max(n1, 2))
        matches = [pair.n2 for pair in plan.pairs if pair.n1 == n1]
        if not matches:
            raise InvalidModelError(f"{n1} is not a convergent numerator of rho0")
        n2 = matches[0]
    else:
        raise InvalidModelError(f"unknown n2 rule '{rule}'")
    if n2 < 1:
        raise InvalidModelError(f"rule '{rule}' gives n2={n2} for n1={n1}")
    return int(n2)


def design_pairs(config: ExperimentConfig) -> List[Tuple[int, int]]:
    """(n1, n2) rows of the experiment, in n1 order.

    The convergent rule keeps only the convergent numerators inside the n1
    range; the other rules pair every n1 of the range.
    """
    n1_values = config.n1_range.values()
    if config.n2_rule == "convergent":
        plan = plan_sample_sizes(config.target, config.n1_range.end)
        wanted = set(n1_values)
        pairs = [(p.n1, p.n2) for p in plan.pairs if p.n1 in wanted]
        if not pairs:
            raise InvalidModelError("no convergent numerator falls inside the n1 range")
        return pairs
    return [
        (n1, n2_for(n1, config.n2_rule, config.target, config.kappa))
        for n1 in n1_values
    ]
