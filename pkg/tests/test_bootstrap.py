import math

import numpy as np
import pytest

from latticeedge.bootstrap import (
    COVERAGE_COLUMNS,
    SampleSet,
    bootstrap_quantile,
    bootstrap_quantiles,
    coverage_experiment,
    coverage_row,
    empirical_model,
    inf_quantile,
    nominal_coverage,
    percentile_interval,
    plugin_expansion,
    plugin_moments,
    resample_differences,
    resample_sum,
)
from latticeedge.edgeworth import full_expansion
from latticeedge.errors import InvalidModelError
from latticeedge.lattice import MeanSumModel, bernoulli, exact_cdf_standardized
from latticeedge.rng import block_sizes, check_seed, substream


def mirrored_data():
    return SampleSet.from_values([[0] * 8 + [1] * 12, [0] * 12 + [1] * 8])


def test_substreams_are_reproducible_and_distinct():
    a = substream(7, 0, 1).random(5)
    b = substream(7, 0, 1).random(5)
    c = substream(7, 0, 2).random(5)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_check_seed_bounds():
    assert check_seed(2**64 - 1) == 2**64 - 1
    for bad in (-1, 2**64, 1.5, True):
        with pytest.raises(InvalidModelError):
            check_seed(bad)


def test_block_sizes():
    assert list(block_sizes(25, 10)) == [10, 10, 5]
    assert list(block_sizes(20, 10)) == [10, 10]


def test_from_values_infers_lattice():
    data = SampleSet.from_values([[0.5, 1.5, 2.5, 0.5], [0.0, 0.25, 0.75]])
    first, second = data.samples
    assert (first.offset, first.span) == (0.5, 1.0)
    assert first.indices.tolist() == [0, 1, 2, 0]
    assert second.span == pytest.approx(0.25)
    assert second.indices.tolist() == [0, 1, 3]
    assert data.sizes == (4, 3)
    assert data.statistic == pytest.approx(1.25 + 1 / 3)


def test_from_values_rejects_off_lattice_data():
    with pytest.raises(InvalidModelError, match="lattice"):
        SampleSet.from_values([[0.0, 1.0, 1.5]], lattices=[(0.0, 1.0)])
    with pytest.raises(InvalidModelError):
        SampleSet.from_values([[]])


def test_draw_matches_model_sizes():
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [15, 25])
    data = SampleSet.draw(model, substream(1, 0))
    assert data.sizes == (15, 25)
    for sample in data.samples:
        assert set(sample.indices.tolist()) <= {0, 1}


def test_inf_quantile_order_statistics():
    values = np.arange(10, 0, -1, dtype=float)
    assert inf_quantile(values, 0.5) == 5.0
    assert inf_quantile(values, 0.3) == 3.0
    assert inf_quantile(values, 0.95) == 10.0
    assert inf_quantile(values, 0.01) == 1.0
    with pytest.raises(InvalidModelError):
        inf_quantile(values, 1.0)


def test_degenerate_sample_has_no_spread():
    data = SampleSet.from_values([[2.0] * 6])
    diffs = resample_differences(data, 50, substream(3, 0))
    np.testing.assert_array_equal(diffs, np.zeros(50))
    assert resample_sum(data, substream(3, 1)) == pytest.approx(2.0)


def test_differences_ignore_a_constant_shift():
    base = SampleSet.from_values([[0, 1, 1, 0, 1, 1], [0, 0, 1]])
    shifted = SampleSet.from_values([[10, 11, 11, 10, 11, 11], [5, 5, 6]])
    np.testing.assert_array_equal(
        resample_differences(base, 200, substream(11, 0)),
        resample_differences(shifted, 200, substream(11, 0)),
    )


def test_resampled_moments_match_plugin_moments():
    data = mirrored_data()
    B = 20_000
    diffs = resample_differences(data, B, substream(5, 0))
    moments = plugin_moments(data)

    assert moments.variance == pytest.approx(2 * 0.24 / 20)
    assert abs(diffs.mean()) < 4 * math.sqrt(moments.variance / B)
    assert diffs.var() == pytest.approx(moments.variance, rel=0.05)


def test_parametric_resampling():
    data = mirrored_data()
    diffs = resample_differences(data, 20_000, substream(5, 1), parametric=True)
    assert diffs.var() == pytest.approx(plugin_moments(data).variance, rel=0.05)

    three_point = SampleSet.from_values([[0, 1, 2, 1]])
    with pytest.raises(InvalidModelError, match="two-point"):
        resample_differences(three_point, 10, substream(5, 2), parametric=True)


def test_plugin_moments_of_a_bernoulli_sample():
    moments = plugin_moments(SampleSet.from_values([[0] * 8 + [1] * 12]))
    single = moments.populations[0]
    assert single.mean == pytest.approx(0.6)
    assert single.variance == pytest.approx(0.24)
    assert single.mu3 == pytest.approx(-0.048)
    assert moments.third == pytest.approx(-0.048 / 400)


def test_empirical_model_reproduces_the_population_model():
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [20, 20])
    assert empirical_model(mirrored_data()) == model

    for x in (-1.0, 0.0, 0.8):
        assert plugin_expansion(mirrored_data(), x).total == pytest.approx(
            full_expansion(model, x).total
        )


def test_empirical_model_rejects_degenerate_samples():
    data = SampleSet.from_values([[1.0] * 5, [0, 1, 1]])
    with pytest.raises(InvalidModelError, match="single distinct value"):
        empirical_model(data)


def test_bootstrap_law_matches_exact_plugin_law():
    data = mirrored_data()
    B = 20_000
    diffs = resample_differences(data, B, substream(9, 0))
    sd = math.sqrt(plugin_moments(data).variance)
    reference = empirical_model(data)
    for atoms in (-2.5, 0.5, 1.5):
        x = (atoms / 20) / sd
        p = float(np.mean(diffs <= x * sd))
        exact = exact_cdf_standardized(reference, x)
        assert abs(p - exact) <= 4 * math.sqrt(exact * (1 - exact) / B)


def test_quantiles_share_one_resample_set():
    data = mirrored_data()
    qs = bootstrap_quantiles(data, [0.1, 0.5, 0.9], 999, substream(2, 0))
    assert [q.alpha for q in qs] == [0.1, 0.5, 0.9]
    assert qs[0].s_hat <= qs[1].s_hat <= qs[2].s_hat
    assert all(q.B == 999 for q in qs)


def test_single_quantile_matches_the_batch():
    data = mirrored_data()
    single = bootstrap_quantile(data, 0.5, 499, substream(4, 0))
    batch = bootstrap_quantiles(data, [0.5], 499, substream(4, 0))[0]
    assert single == batch


def test_percentile_interval_upper_end():
    data = mirrored_data()
    interval = percentile_interval(data, 0.9, 999, substream(2, 1))
    assert interval.upper == pytest.approx(data.statistic - interval.s_hat)
    assert interval.contains(interval.upper)
    assert not interval.contains(interval.upper + 1.0)


def test_nominal_coverage_conventions():
    assert nominal_coverage(0.95, "literal") == pytest.approx(0.05)
    assert nominal_coverage(0.95, "complement") == pytest.approx(0.95)
    with pytest.raises(InvalidModelError):
        nominal_coverage(0.95, "mirror")


def test_coverage_row_is_deterministic():
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [10, 14])
    first = coverage_row(model, 0.9, reps=40, B=99, seed=7)
    second = coverage_row(model, 0.9, reps=40, B=99, seed=7)
    assert first == second
    assert first.stderr == pytest.approx(
        math.sqrt(first.coverage * (1 - first.coverage) / 40)
    )


def test_coverage_result_frame_and_single_population():
    model = MeanSumModel.of([bernoulli(0.4)], [12])
    result = coverage_experiment(model, 0.5, reps=20, B=49, seed=3)
    frame = result.to_frame()
    assert list(frame.columns) == list(COVERAGE_COLUMNS)
    assert frame.loc[0, "n2"] == 0
    assert result.rows[0].nominal == pytest.approx(0.5)


def test_median_interval_covers_about_half_the_time():
    model = MeanSumModel.of([bernoulli(0.5), bernoulli(0.5)], [40, 57])
    reps = 2000
    row = coverage_row(model, 0.5, reps=reps, B=199, seed=2024)
    assert abs(row.coverage - 0.5) <= 4 * math.sqrt(0.25 / reps)


@pytest.mark.slow
@pytest.mark.parametrize("convention", ["literal", "complement"])
def test_coverage_close_to_nominal(convention):
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [40, 57])
    row = coverage_row(
        model, 0.95, reps=2000, B=999, seed=99, convention=convention
    )
    assert abs(row.coverage - row.nominal) <= 0.03
