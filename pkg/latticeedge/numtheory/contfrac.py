"""Certified continued fractions and convergents"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

from ..errors import ConvergentOverflowError, InvalidModelError, PrecisionExhaustedError
from .constants import IrrationalSpec

MAX_CONVERGENT = 2**127


@dataclass(frozen=True)
class Convergent:
    """p/q with a certified bound on |p/q - rho0| no larger than 1/q**2"""

    p: int
    q: int
    error_bound: float

    def __post_init__(self):
        if self.q < 1:
            raise InvalidModelError(f"denominator must be positive, got {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidModelError(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def value(self) -> float:
        return self.p / self.q


def iter_partial_quotients(value: IrrationalSpec) -> Iterator[int]:
    """Yield partial quotients while the decimal value certifies them.

    Each quotient is extracted from both ends of the interval
    [v - 10**-D, v + 10**-D]; it is emitted only when the two agree.
    Exact values stop when the expansion terminates.
    """
    lo = value.fraction - value.uncertainty
    hi = value.fraction + value.uncertainty
    depth = 0
    while True:
        a = math.floor(lo)
        if math.floor(hi) != a:
            raise PrecisionExhaustedError(depth, value.name)
        yield a
        depth += 1
        rest_lo, rest_hi = lo - a, hi - a
        if value.exact and rest_lo == 0:
            return
        if rest_lo <= 0:
            raise PrecisionExhaustedError(depth, value.name)
        lo, hi = 1 / rest_hi, 1 / rest_lo


def continued_fraction(value: IrrationalSpec, depth: int) -> List[int]:
    """First `depth` certified partial quotients [a0; a1, ...]"""
    if depth < 1:
        raise InvalidModelError(f"depth must be positive, got {depth}")
    quotients = []
    for a in iter_partial_quotients(value):
        quotients.append(a)
        if len(quotients) == depth:
            break
    return quotients


def convergents(
    cf: Sequence[int], value: Optional[IrrationalSpec] = None
) -> List[Convergent]:
    """Convergents of a quotient list by the three-term recurrence.

    With `value` each convergent is checked against |p/q - rho0| <= 1/q**2
    using the decimal value and its uncertainty; without it the finite
    continued fraction itself is the target.
    """
    if len(cf) == 0:
        raise InvalidModelError("at least one partial quotient is required")
    pairs = []
    p_prev, p = 1, int(cf[0])
    q_prev, q = 0, 1
    pairs.append((p, q))
    for a in cf[1:]:
        if a < 1:
            raise InvalidModelError(f"partial quotients after a0 must be >= 1, got {a}")
        p_prev, p = p, int(a) * p + p_prev
        q_prev, q = q, int(a) * q + q_prev
        if abs(p) > MAX_CONVERGENT or q > MAX_CONVERGENT:
            raise ConvergentOverflowError(
                f"convergent {p}/{q} exceeds 128-bit integers"
            )
        pairs.append((p, q))

    if value is None:
        target, slack = Fraction(pairs[-1][0], pairs[-1][1]), Fraction(0)
    else:
        target, slack = value.fraction, value.uncertainty

    out = []
    for p, q in pairs:
        bound = abs(Fraction(p, q) - target) + slack
        if bound > Fraction(1, q * q):
            raise InvalidModelError(f"{p}/{q} violates |p/q - rho0| <= 1/q**2")
        out.append(Convergent(p, q, float(bound)))
    return out


def iter_convergents(value: IrrationalSpec) -> Iterator[Convergent]:
    """Certified convergents of a value, in order, as long as precision lasts"""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for depth, a in enumerate(iter_partial_quotients(value)):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if abs(p) > MAX_CONVERGENT or q > MAX_CONVERGENT:
            raise ConvergentOverflowError(
                f"convergent {p}/{q} exceeds 128-bit integers"
            )
        bound = abs(Fraction(p, q) - value.fraction) + value.uncertainty
        if bound > Fraction(1, q * q):
            raise PrecisionExhaustedError(depth, value.name)
        yield Convergent(p, q, float(bound))
