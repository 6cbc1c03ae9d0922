"""Sum-of-means model and its JSON description"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import (
    Annotated,
    Any,
    Dict,
    List,
    Literal,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import InvalidModelError
from .law import (
    LatticeLaw,
    PopulationMoments,
    bernoulli,
    make_lattice_law,
    moments,
    scale_law,
)

BernoulliConvention = Literal["literal", "success-prob"]


@dataclass(frozen=True)
class Population:
    """One population law together with its sample size"""

    law: LatticeLaw
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidModelError(
                f"sample size must be an integer >= 1, got {self.n}"
            )

    @property
    def moments(self) -> PopulationMoments:
        return moments(self.law)


@dataclass(frozen=True)
class MeanSumModel:
    """S = sum of the sample means of k independent lattice populations.

    Instances are immutable and hashable, so oracle results can be cached
    per model.
    """

    populations: Tuple[Population, ...]

    def __post_init__(self):
        if len(self.populations) < 1:
            raise InvalidModelError("a model needs at least one population")
        if not self.variance > 0:
            raise InvalidModelError("Var S must be positive")

    @classmethod
    def of(
        cls, laws: Sequence[LatticeLaw], sizes: Sequence[int]
    ) -> "MeanSumModel":
        if len(laws) != len(sizes):
            raise InvalidModelError("one sample size per law is required")
        return cls(tuple(Population(law, int(n)) for law, n in zip(laws, sizes)))

    @property
    def k(self) -> int:
        return len(self.populations)

    @property
    def laws(self) -> Tuple[LatticeLaw, ...]:
        return tuple(p.law for p in self.populations)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(p.n for p in self.populations)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def moments(self) -> Tuple[PopulationMoments, ...]:
        return tuple(p.moments for p in self.populations)

    @property
    def mean(self) -> float:
        return math.fsum(m.mean for m in self.moments)

    @property
    def variance(self) -> float:
        return math.fsum(
            m.variance / p.n for m, p in zip(self.moments, self.populations)
        )

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def ratio(self, j1: int = 0, j2: int = 1) -> float:
        """rho_{j1 j2} = e_{j2} n_{j1} / (e_{j1} n_{j2})"""
        p1, p2 = self.populations[j1], self.populations[j2]
        return (p2.law.span * p1.n) / (p1.law.span * p2.n)

    def with_sizes(self, sizes: Sequence[int]) -> "MeanSumModel":
        return MeanSumModel.of(self.laws, sizes)

    @classmethod
    def from_dict(
        cls,
        data: Dict[str, Any],
        convention: Optional[BernoulliConvention] = None,
    ) -> "MeanSumModel":
        try:
            parsed = ModelFile.model_validate(data)
        except ValidationError as e:
            raise InvalidModelError(_first_error(e)) from e
        return parsed.to_model(convention)

    @classmethod
    def from_file(
        cls,
        path: Union[str, Path],
        convention: Optional[BernoulliConvention] = None,
    ) -> "MeanSumModel":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise InvalidModelError(f"malformed model file '{path}': {e}") from e
        except OSError as e:
            raise InvalidModelError(f"cannot read model file '{path}': {e}") from e
        return cls.from_dict(data, convention)


def weighted_sum_model(
    laws: Sequence[LatticeLaw],
    sizes: Sequence[int],
    weights: Sequence[float],
) -> MeanSumModel:
    """Model of sum_j w_j * Xbar_j.

    Weights 1 - n_j/N give the finite-population weighted sum of proportions.
    """
    if not len(laws) == len(sizes) == len(weights):
        raise InvalidModelError("laws, sizes and weights differ in length")
    scaled = [scale_law(law, w) for law, w in zip(laws, weights)]
    return MeanSumModel.of(scaled, sizes)


def _first_error(error: ValidationError, subject: str = "model description") -> str:
    first = error.errors()[0]
    where = ".".join(str(part) for part in first.get("loc", ()))
    return f"invalid {subject} at '{where}': {first.get('msg')}"


# ---------------------------------------------------------------------------
# JSON schema


class BernoulliSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["bernoulli"]
    p: float

    def to_law(self, convention: BernoulliConvention = "literal") -> LatticeLaw:
        return bernoulli(self.p, success_prob=convention == "success-prob")


class LatticeSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["lattice"]
    offset: float = 0.0
    span: float = 1.0
    pmf: Dict[int, float]

    def to_law(self, convention: BernoulliConvention = "literal") -> LatticeLaw:
        return make_lattice_law(self.offset, self.span, self.pmf)


class BernoulliPopulation(BernoulliSpec):
    n: int = Field(ge=1)


class LatticePopulation(LatticeSpec):
    n: int = Field(ge=1)


LawSpec = Annotated[Union[BernoulliSpec, LatticeSpec], Field(discriminator="kind")]
PopulationSpec = Annotated[
    Union[BernoulliPopulation, LatticePopulation], Field(discriminator="kind")
]


class ModelFile(BaseModel):
    """Schema of a model description file"""

    model_config = ConfigDict(extra="forbid")

    populations: List[PopulationSpec] = Field(min_length=1)
    bernoulli_convention: BernoulliConvention = "literal"

    def to_model(
        self, convention: Optional[BernoulliConvention] = None
    ) -> MeanSumModel:
        use = convention or self.bernoulli_convention
        return MeanSumModel.of(
            [entry.to_law(use) for entry in self.populations],
            [entry.n for entry in self.populations],
        )
