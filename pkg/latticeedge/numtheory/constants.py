"""Named irrationals stored as fixed high-precision decimal strings"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Union

import mpmath

from ..errors import InvalidModelError

NAMED_DECIMALS: Dict[str, str] = {
    "sqrt2": "1.41421356237309504880168872420969807856967187537694807317667973799",
    "sqrt3": "1.73205080756887729352744634150587236694280525381038062805580697945",
    "sqrt5": "2.23606797749978969640917366873127623544061835961152572427089724541",
    "e": "2.71828182845904523536028747135266249775724709369995957496696762772",
    "pi": "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899",
    "pi_over_2": "1.570796326794896619231321691639751442098584699687552910487472296153908203143",
    "golden": "1.61803398874989484820458683436563811772030917980576286213544862270526046281890",
    "log2": "0.693147180559945309417232121458176568075500134360255254120680009493393621969694715605863",
}

# Published upper bounds on the irrationality type; metadata only.
LITERATURE_TYPE_BOUNDS: Dict[str, float] = {
    "pi": 6.61,
    "pi_over_2": 6.61,
    "pi_squared": 4.45,
    "log2": 2.58,
}

# Algebraic irrationals and e are of type 1.
KNOWN_TYPES: Dict[str, float] = {
    "sqrt2": 1.0,
    "sqrt3": 1.0,
    "sqrt5": 1.0,
    "golden": 1.0,
    "e": 1.0,
}

# Growth rate of convergent denominators for almost every real:
# q_k ** (1/k) -> LEVY_CONSTANT, log q_k / k -> LEVY_EXPONENT.
LEVY_EXPONENT = math.pi**2 / (12 * math.log(2))
LEVY_CONSTANT = math.exp(LEVY_EXPONENT)


@dataclass(frozen=True)
class IrrationalSpec:
    """A target ratio given as a decimal string.

    ``exact`` marks a value known exactly (an integer, a user rational or a
    decimal string typed by the user); otherwise the value is trusted only up
    to its last retained digit.
    """

    name: str
    decimal_value: str
    claimed_type: Optional[float] = None
    literature_type_bound: Optional[float] = None
    exact: bool = False

    def __post_init__(self):
        try:
            Fraction(self.decimal_value)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidModelError(
                f"cannot parse decimal value for '{self.name}': {self.decimal_value!r}"
            ) from e
        if self.claimed_type is not None and self.claimed_type < 1:
            raise InvalidModelError(f"type must be >= 1, got {self.claimed_type}")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.decimal_value)

    @property
    def value(self) -> float:
        return float(self.fraction)

    @property
    def decimals(self) -> int:
        """Digits retained after the decimal point"""
        mantissa = self.decimal_value.strip().lower().split("e")[0]
        _, _, tail = mantissa.partition(".")
        exponent = 0
        if "e" in self.decimal_value.lower():
            exponent = int(self.decimal_value.lower().split("e")[1])
        return max(0, len(tail) - exponent)

    @property
    def uncertainty(self) -> Fraction:
        if self.exact:
            return Fraction(0)
        return Fraction(1, 10**self.decimals)

    def mpf(self) -> mpmath.mpf:
        """The value as an mpmath float at the current working precision"""
        if "/" in self.decimal_value:
            f = self.fraction
            return mpmath.mpf(f.numerator) / f.denominator
        return mpmath.mpf(self.decimal_value)

    @property
    def working_dps(self) -> int:
        return len(self.decimal_value) + 10

    @classmethod
    def named(cls, name: str) -> "IrrationalSpec":
        if name not in NAMED_DECIMALS:
            raise InvalidModelError(
                f"unknown constant '{name}'; known: {', '.join(sorted(NAMED_DECIMALS))}"
            )
        return cls(
            name=name,
            decimal_value=NAMED_DECIMALS[name],
            claimed_type=KNOWN_TYPES.get(name),
            literature_type_bound=LITERATURE_TYPE_BOUNDS.get(name),
        )

    @classmethod
    def custom(
        cls,
        value: Union[str, float, int, Fraction],
        name: str = "custom",
        exact: Optional[bool] = None,
        claimed_type: Optional[float] = None,
    ) -> "IrrationalSpec":
        if isinstance(value, Fraction):
            if exact is False:
                raise InvalidModelError("a Fraction value is always exact")
            # Stored through its exact decimal-free form
            return cls(
                name=name,
                decimal_value=f"{value.numerator}/{value.denominator}",
                claimed_type=claimed_type,
                exact=True,
            )
        if isinstance(value, float):
            # A float carries only its repr digits
            text = repr(value)
            trusted = _is_integer_text(text)
        else:
            text = str(value).strip()
            trusted = True
        return cls(
            name=name,
            decimal_value=text,
            claimed_type=claimed_type,
            exact=trusted if exact is None else exact,
        )


def _is_integer_text(text: str) -> bool:
    try:
        return Fraction(text).denominator == 1 and "e" not in text.lower()
    except (ValueError, ZeroDivisionError):
        return False


def resolve_irrational(value: Union[str, float, int, IrrationalSpec]) -> IrrationalSpec:
    """A named constant, or a custom value for anything numeric"""
    if isinstance(value, IrrationalSpec):
        return value
    if isinstance(value, str) and value in NAMED_DECIMALS:
        return IrrationalSpec.named(value)
    return IrrationalSpec.custom(value)
