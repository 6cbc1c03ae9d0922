"""Nearest-integer distances, sample-size plans and ratio diagnostics"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal, Optional, Tuple, Union

import mpmath

from ..errors import InvalidModelError
from .constants import IrrationalSpec, resolve_irrational
from .contfrac import Convergent, iter_convergents

PlanMode = Literal["convergent", "nearest-int"]

SIN_SNAP = 1e-12


def nearest_int_distance(x: float) -> float:
    """<x>, the distance from x to the nearest integer"""
    if not math.isfinite(x):
        raise InvalidModelError(f"finite value required, got {x}")
    f = x - math.floor(x)
    return min(f, 1 - f)


def round_half_away(x: Union[float, Fraction]) -> int:
    """[x], the nearest integer with halves rounded away from zero"""
    if x >= 0:
        return math.floor(x + Fraction(1, 2))
    return -math.floor(-x + Fraction(1, 2))


def sin_multiple(ell: int, rho: float) -> float:
    """|sin(ell rho pi)| with near-integer multiples snapped to exact zero"""
    d = nearest_int_distance(ell * rho)
    if d < SIN_SNAP * ell:
        return 0.0
    return math.sin(math.pi * d)


@dataclass(frozen=True)
class PlanPair:
    n1: int
    n2: int
    abs_error: float
    bound_q2: float


@dataclass(frozen=True)
class ConvergentPlan:
    """Sample-size pairs (n1, n2) whose ratio tracks an irrational target"""

    rho0: IrrationalSpec
    n_max: int
    mode: str
    pairs: Tuple[PlanPair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def sizes(self) -> List[Tuple[int, int]]:
        return [(pair.n1, pair.n2) for pair in self.pairs]


def plan_sample_sizes(
    rho0: Union[str, IrrationalSpec], n_max: int, mode: PlanMode = "convergent"
) -> ConvergentPlan:
    """Choose (n1, n2) pairs for a target ratio rho0.

    ``convergent`` keeps the coprime pairs with n1/n2 a convergent of rho0 and
    both sizes in [2, n_max]; ``nearest-int`` pairs n1 = 2..n_max with
    n2 = [rho0 * n1].
    """
    spec = resolve_irrational(rho0)
    if n_max < 2:
        raise InvalidModelError(f"n_max must be >= 2, got {n_max}")

    pairs: List[PlanPair] = []
    if mode == "convergent":
        for conv in iter_convergents(spec):
            if conv.p > n_max or conv.q > n_max:
                break
            if conv.p < 2 or conv.q < 2:
                continue
            pairs.append(
                PlanPair(conv.p, conv.q, conv.error_bound, 1.0 / conv.q**2)
            )
    elif mode == "nearest-int":
        target = spec.fraction
        for n1 in range(2, n_max + 1):
            n2 = round_half_away(target * n1)
            if n2 < 1:
                continue
            pairs.append(
                PlanPair(
                    n1,
                    n2,
                    float(abs(Fraction(n2, n1) - target)),
                    1.0 / n1**2,
                )
            )
    else:
        raise InvalidModelError(f"unknown plan mode '{mode}'")

    return ConvergentPlan(rho0=spec, n_max=n_max, mode=mode, pairs=tuple(pairs))


@dataclass(frozen=True)
class RatioDiagnostics:
    """How far a sampling ratio is from small-denominator rationals"""

    rho: float
    nearest_rational: Optional[Convergent]
    sin_profile: Tuple[Tuple[int, float], ...]
    epsilon: float
    n: int

    @property
    def minimum(self) -> float:
        return min(value for _, value in self.sin_profile)

    @property
    def condition_fails(self) -> bool:
        return any(value == 0.0 for _, value in self.sin_profile)


def nearest_small_rational(rho: float, max_denominator: int) -> Convergent:
    """Last convergent of rho with denominator at most max_denominator"""
    best = None
    for conv in iter_convergents(IrrationalSpec.custom(Fraction(rho))):
        if conv.q > max_denominator:
            break
        best = conv
    assert best is not None
    return best


def sin_condition_profile(rho: float, n: int, L: int) -> RatioDiagnostics:
    """sqrt(n) |sin(ell rho pi)| for ell = 1..L"""
    if not rho > 0:
        raise InvalidModelError(f"rho must be positive, got {rho}")
    if L < 1:
        raise InvalidModelError(f"L must be >= 1, got {L}")
    root_n = math.sqrt(n)
    profile = tuple((ell, root_n * sin_multiple(ell, rho)) for ell in range(1, L + 1))
    nearest = nearest_small_rational(rho, L)
    return RatioDiagnostics(
        rho=rho,
        nearest_rational=nearest,
        sin_profile=profile,
        epsilon=rho - nearest.value,
        n=n,
    )


def ratio_diagnostics(
    e1: float,
    e2: float,
    n1: int,
    n2: int,
    L: int = 10,
    target: Optional[Union[str, float, IrrationalSpec]] = None,
) -> RatioDiagnostics:
    """Diagnostics of rho_12 = e2 n1 / (e1 n2) for a two-sample design.

    Without a target, epsilon is measured from the nearest rational with
    denominator at most L; with one, from the target itself.
    """
    if e1 <= 0 or e2 <= 0 or n1 < 1 or n2 < 1:
        raise InvalidModelError("spans and sample sizes must be positive")
    rho = e2 * n1 / (e1 * n2)
    diagnostics = sin_condition_profile(rho, n1 + n2, L)
    if target is None:
        return diagnostics
    spec = resolve_irrational(target)
    return RatioDiagnostics(
        rho=rho,
        nearest_rational=diagnostics.nearest_rational,
        sin_profile=diagnostics.sin_profile,
        epsilon=rho - spec.value,
        n=n1 + n2,
    )


@dataclass(frozen=True)
class SlowConvergence:
    scaled_epsilon: float
    predicted_profile: Tuple[Tuple[int, float], ...]


def slow_convergence_check(epsilon: float, n: int, L: int = 4) -> SlowConvergence:
    """sqrt(n)|eps| and the small-eps shape of |sin(ell (1 + eps) pi)|.

    For rho = 1 + eps with eps -> 0, |sin(ell rho pi)| behaves like
    ell pi |eps| for even ell and like 1 for odd ell; the oscillation
    condition survives when sqrt(n)|eps| grows without bound.
    """
    predicted = tuple(
        (ell, ell * math.pi * abs(epsilon) if ell % 2 == 0 else 1.0)
        for ell in range(1, L + 1)
    )
    return SlowConvergence(math.sqrt(n) * abs(epsilon), predicted)


def type_sum(rho0: Union[str, IrrationalSpec], m: int) -> float:
    """sum_{ell=1}^m 1/(ell <ell rho0>) at the precision of the decimal value"""
    spec = resolve_irrational(rho0)
    if m < 1:
        raise InvalidModelError(f"m must be >= 1, got {m}")
    with mpmath.workdps(spec.working_dps):
        v = spec.mpf()
        total = mpmath.mpf(0)
        for ell in range(1, m + 1):
            x = ell * v
            d = abs(x - mpmath.nint(x))
            if d == 0:
                raise InvalidModelError(f"<{ell} rho0> vanishes; rho0 is rational")
            total += 1 / (ell * d)
        return float(total)
