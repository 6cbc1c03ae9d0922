import math
from fractions import Fraction

import numpy as np
import pytest

from latticeedge.edgeworth.sawtooth import psi
from latticeedge.errors import (
    ConvergentOverflowError,
    InvalidModelError,
    PrecisionExhaustedError,
    UndefinedBoundError,
)
from latticeedge.numtheory import (
    LEVY_EXPONENT,
    IrrationalSpec,
    breakpoint_grid,
    chi_block,
    chi_discrepancy,
    continued_fraction,
    convergents,
    erdos_turan_rhs,
    exponential_sum_bound,
    iter_convergents,
    nearest_int_distance,
    plan_sample_sizes,
    ratio_diagnostics,
    resolve_irrational,
    round_half_away,
    sin_condition_profile,
    slow_convergence_check,
    type_sum,
)


def test_sqrt2_continued_fraction():
    assert continued_fraction(IrrationalSpec.named("sqrt2"), 5) == [1, 2, 2, 2, 2]


def test_golden_and_e_continued_fractions():
    assert continued_fraction(IrrationalSpec.named("golden"), 6) == [1] * 6
    assert continued_fraction(IrrationalSpec.named("e"), 8) == [2, 1, 2, 1, 1, 4, 1, 1]


def test_convergents_of_sqrt2():
    spec = IrrationalSpec.named("sqrt2")
    pairs = [(c.p, c.q) for c in convergents([1, 2, 2, 2, 2], spec)]
    assert pairs == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]


def test_convergents_reject_bad_quotients():
    with pytest.raises(InvalidModelError):
        convergents([])
    with pytest.raises(InvalidModelError):
        convergents([1, 0, 2])


def test_convergents_detect_overflow():
    with pytest.raises(ConvergentOverflowError):
        convergents([1, 10**20, 10**20])


def test_precision_exhaustion_is_reported():
    coarse = IrrationalSpec.custom(0.1)
    with pytest.raises(PrecisionExhaustedError):
        continued_fraction(coarse, 3)


def test_exact_integer_terminates():
    assert continued_fraction(IrrationalSpec.custom(2), 5) == [2]


def test_resolve_irrational():
    assert resolve_irrational("sqrt2").name == "sqrt2"
    custom = resolve_irrational(1.25)
    assert custom.name == "custom"
    assert custom.value == pytest.approx(1.25)
    with pytest.raises(InvalidModelError):
        IrrationalSpec.named("tau")


def test_plan_convergent_sqrt2():
    plan = plan_sample_sizes("sqrt2", 100, "convergent")
    assert plan.sizes() == [(3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]
    assert len(plan) == 5


@pytest.mark.parametrize("name", ["sqrt2", "sqrt3", "sqrt5", "e", "golden"])
def test_plan_convergent_pairs_are_certified(name):
    spec = IrrationalSpec.named(name)
    plan = plan_sample_sizes(spec, 10_000, "convergent")
    assert len(plan) > 0
    for pair in plan.pairs:
        assert math.gcd(pair.n1, pair.n2) == 1
        assert 2 <= pair.n1 <= 10_000 and 2 <= pair.n2 <= 10_000
        assert abs(Fraction(pair.n1, pair.n2) - spec.fraction) <= Fraction(
            1, pair.n2**2
        )


def test_plan_nearest_int():
    plan = plan_sample_sizes("sqrt2", 5, "nearest-int")
    assert plan.sizes() == [(2, 3), (3, 4), (4, 6), (5, 7)]
    assert plan.pairs[0].bound_q2 == pytest.approx(0.25)


def test_plan_rejects_bad_arguments():
    with pytest.raises(InvalidModelError):
        plan_sample_sizes("sqrt2", 1)
    with pytest.raises(InvalidModelError):
        plan_sample_sizes("sqrt2", 10, "fastest")


def test_convergent_denominators_grow_geometrically():
    qs = []
    for conv in iter_convergents(IrrationalSpec.named("pi")):
        qs.append(conv.q)
        if len(qs) == 12:
            break
    ratios = [b / a for a, b in zip(qs[1:], qs[2:])]
    assert all(1.0 <= r <= 400.0 for r in ratios)
    assert LEVY_EXPONENT == pytest.approx(1.18656911, abs=1e-8)


def test_nearest_int_distance_is_periodic():
    for x in (0.3, -2.7, 5.5, 0.0):
        assert nearest_int_distance(x) == pytest.approx(nearest_int_distance(x + 1))
    assert nearest_int_distance(0.75) == pytest.approx(0.25)


def test_dirichlet_property_of_convergents():
    rho0 = math.sqrt(2)
    for conv in convergents([1, 2, 2, 2, 2, 2, 2]):
        assert nearest_int_distance(conv.q * rho0) < 1 / conv.q


def test_round_half_away():
    assert round_half_away(2.5) == 3
    assert round_half_away(-2.5) == -3
    assert round_half_away(2.4) == 2
    assert round_half_away(Fraction(7, 2)) == 4


def test_type_sum_sqrt2_first_term():
    assert type_sum("sqrt2", 1) == pytest.approx(1 + math.sqrt(2), rel=1e-12)


def test_type_sum_rejects_rational():
    with pytest.raises(InvalidModelError):
        type_sum(IrrationalSpec.custom("1.5"), 2)


def test_type_sum_grows_with_m():
    assert type_sum("golden", 50) > type_sum("golden", 10) > 0


def test_ratio_diagnostics_equal_sizes_fail():
    diag = ratio_diagnostics(1.0, 1.0, 20, 20)
    assert diag.rho == pytest.approx(1.0)
    assert diag.condition_fails
    assert diag.epsilon == pytest.approx(0.0)
    assert diag.n == 40


def test_ratio_diagnostics_nearest_rational():
    diag = ratio_diagnostics(1.0, 1.0, 20, 28, L=6)
    assert not diag.condition_fails
    assert (diag.nearest_rational.p, diag.nearest_rational.q) == (2, 3)
    assert diag.epsilon == pytest.approx(5 / 7 - 2 / 3)

    # 7 * 5/7 is an integer
    assert ratio_diagnostics(1.0, 1.0, 20, 28, L=10).condition_fails


def test_ratio_diagnostics_against_target():
    diag = ratio_diagnostics(1.0, 1.0, 99, 70, target="sqrt2")
    assert abs(diag.epsilon) <= 1 / 70**2
    assert diag.minimum > 0


def test_slow_convergence_check():
    eps = 0.01
    check = slow_convergence_check(eps, 10_000, L=4)
    assert check.scaled_epsilon == pytest.approx(1.0)
    profile = dict(check.predicted_profile)
    assert profile[1] == 1.0
    assert profile[2] == pytest.approx(2 * math.pi * eps)

    small = 1e-4
    actual = abs(math.sin(2 * (1 + small) * math.pi))
    predicted = dict(slow_convergence_check(small, 1).predicted_profile)[2]
    assert actual == pytest.approx(predicted, rel=1e-6)


def test_chi_single_term():
    assert chi_discrepancy(1, [1.0], 0.5, z_grid=[0.25]) == pytest.approx(0.25)


def test_chi_matches_direct_sum():
    N, tau, q = 50, math.sqrt(2), [1.0, -0.5]
    z_grid = np.linspace(0.0005, 0.9995, 37)
    i = np.arange(1, N + 1)
    weights = q[0] + q[1] * i / N
    direct = max(abs(float(np.sum(weights * psi(z - tau * i)))) for z in z_grid)

    assert chi_discrepancy(N, q, tau, z_grid=z_grid) == pytest.approx(direct, abs=1e-9)


def test_breakpoint_grid_lies_in_unit_interval():
    grid = breakpoint_grid(30, math.sqrt(3))
    assert grid.min() >= 0.0 and grid.max() < 1.0
    assert np.all(np.diff(grid) > 0)


def test_chi_block_matches_psi_sum():
    z, tau = 0.3, math.sqrt(5)
    expected = sum(psi(z - tau * nu) for nu in range(4, 14))
    assert chi_block(z, tau, 4, 10) == pytest.approx(expected, abs=1e-12)


def test_erdos_turan_bounds_chi():
    N, m, tau = 200, 10, math.sqrt(2)
    assert chi_discrepancy(N, [1.0], tau) <= erdos_turan_rhs(N, m, tau)


def test_erdos_turan_single_term():
    tau = math.sqrt(2)
    expected = 3.0 * (100 + 1 / abs(math.sin(math.pi * tau)))
    assert erdos_turan_rhs(100, 1, tau) == pytest.approx(expected)


def test_erdos_turan_undefined_for_rational_tau():
    with pytest.raises(UndefinedBoundError):
        erdos_turan_rhs(100, 2, 0.5)


def test_exponential_sum_bound_is_dominated():
    direct, majorant = exponential_sum_bound(40, math.sqrt(2), 8)
    assert 0 < direct <= majorant


def test_sin_condition_profile_for_a_rational_ratio():
    diag = sin_condition_profile(1.5, 16, 4)
    profile = dict(diag.sin_profile)
    assert profile[1] == pytest.approx(4.0)
    assert profile[2] == 0.0
    assert diag.condition_fails
    assert (diag.nearest_rational.p, diag.nearest_rational.q) == (3, 2)
    with pytest.raises(InvalidModelError):
        sin_condition_profile(1.5, 16, 0)


def test_sawtooth_and_distance_identities_on_random_points():
    xs = np.random.default_rng(20240607).uniform(-50.0, 50.0, 10_000)
    values = psi(xs)
    np.testing.assert_allclose(psi(xs + 1.0), values, rtol=0.0, atol=1e-9)
    assert np.all(np.abs(values) <= 0.5)
    for x in xs.tolist():
        d = nearest_int_distance(x)
        assert nearest_int_distance(x + 1.0) == pytest.approx(d, abs=1e-9)
        assert nearest_int_distance(-x) == pytest.approx(d, abs=1e-9)


@pytest.mark.parametrize("N", [10, 100, 1000])
def test_chi_of_an_integer_rotation_is_half_the_length(N):
    assert chi_discrepancy(N, [1.0], 1.0) == pytest.approx(N / 2, abs=1e-9)


def test_chi_with_linear_weights():
    assert chi_discrepancy(10, [0.0, 1.0], 1.0) == pytest.approx(2.75, abs=1e-12)


@pytest.mark.slow
def test_chi_per_term_decreases_for_sqrt2():
    tau = math.sqrt(2)
    per_term = [chi_discrepancy(N, [1.0], tau) / N for N in (100, 1000, 10_000)]
    assert per_term[0] >= per_term[1] >= per_term[2]


def test_erdos_turan_bounds_chi_at_the_recommended_cutoff():
    N, tau = 1000, math.sqrt(2)
    m = math.floor(math.sqrt(N))
    assert m == 31
    assert chi_discrepancy(N, [1.0], tau) <= erdos_turan_rhs(N, m, tau, C=3.0)


def test_type_sum_golden_ratio_values():
    golden = (1 + math.sqrt(5)) / 2
    assert type_sum("golden", 1) == pytest.approx(golden**2, rel=1e-9)
    assert type_sum("golden", 3) == pytest.approx(7.02, abs=0.01)


@pytest.mark.slow
def test_type_sum_golden_grows_almost_linearly():
    sums = [type_sum("golden", m) for m in (100, 1000, 10_000)]
    slopes = [math.log10(b / a) for a, b in zip(sums, sums[1:])]
    assert all(slope <= 1.3 for slope in slopes)


def test_terminating_decimal_is_exact():
    spec = IrrationalSpec.custom("1.5")
    assert continued_fraction(spec, 5) == [1, 2]
    assert plan_sample_sizes(spec, 10, "convergent").sizes() == [(3, 2)]
    with pytest.raises(PrecisionExhaustedError):
        continued_fraction(IrrationalSpec.custom(0.1), 30)
