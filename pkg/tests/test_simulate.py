import math

import pytest

from latticeedge.edgeworth import full_expansion
from latticeedge.errors import InvalidModelError
from latticeedge.lattice import MeanSumModel, bernoulli, exact_cdf_standardized
from latticeedge.simulate import (
    ExperimentConfig,
    design_pairs,
    detrended_spread,
    estimate_P,
    estimate_P_grid,
    n2_for,
    oscillation_amplitude,
    run_figure1,
    run_figure2,
    z_alpha,
)
from latticeedge.storage import RunRecordStore


def make_config(**overrides):
    data = {
        "populations": [
            {"kind": "bernoulli", "p": 0.4},
            {"kind": "bernoulli", "p": 0.6},
        ],
        "n1_range": {"start": 10, "end": 17},
        "alphas": [0.95, 0.75],
    }
    data.update(overrides)
    return ExperimentConfig.from_dict(data)


def test_config_defaults():
    config = make_config()
    assert config.n1_range.values() == list(range(10, 18))
    assert config.method == "oracle"
    assert config.reps == 100_000
    assert config.B == 999
    assert config.seed is None
    assert config.target.name == "sqrt2"
    assert config.template().sizes == (1, 1)


@pytest.mark.parametrize(
    "overrides",
    [
        {"n1_range": {"start": 10, "end": 5}},
        {"n2_rule": "offset-power"},
        {"n2_rule": "offset-power", "kappa": 1.5},
        {"alphas": [0.5, 1.0]},
        {"populations": [{"kind": "bernoulli", "p": 0.4}]},
        {"colour": "blue"},
    ],
)
def test_config_rejects_invalid_settings(overrides):
    with pytest.raises(InvalidModelError, match="experiment config"):
        make_config(**overrides)


def test_config_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{broken", encoding="utf-8")
    with pytest.raises(InvalidModelError, match="malformed"):
        ExperimentConfig.from_file(path)


def test_seed_handling():
    config = make_config()
    with pytest.raises(InvalidModelError, match="seed"):
        config.require_seed()
    assert config.with_seed(5).require_seed() == 5
    assert config.with_seed(None) is config


def test_n2_rules():
    assert n2_for(10, "nearest-int", "sqrt2") == 14
    assert n2_for(16, "offset-power", kappa=0.5) == 20
    assert n2_for(7, "convergent", "sqrt2") == 5
    with pytest.raises(InvalidModelError):
        n2_for(8, "convergent", "sqrt2")
    with pytest.raises(InvalidModelError):
        n2_for(8, "offset-power")


def test_design_pairs_for_convergents():
    config = make_config(n2_rule="convergent", n1_range={"start": 1, "end": 100})
    assert design_pairs(config) == [(3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]

    narrow = make_config(n2_rule="convergent", n1_range={"start": 50, "end": 60})
    with pytest.raises(InvalidModelError):
        design_pairs(narrow)


def test_z_alpha():
    assert z_alpha(0.95) == pytest.approx(1.6448536269514722)
    with pytest.raises(InvalidModelError):
        z_alpha(0.0)


def test_estimate_is_reproducible():
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [20, 20])
    first = estimate_P_grid(model, [-1.0, 0.0, 1.0], reps=2500, seed=3, block=1000)
    second = estimate_P_grid(model, [-1.0, 0.0, 1.0], reps=2500, seed=3, block=1000)
    assert first == second
    assert [p for p, _ in first] == sorted(p for p, _ in first)
    assert estimate_P(model, math.inf, 10, 3) == (1.0, 0.0)
    assert estimate_P(model, -math.inf, 10, 3) == (0.0, 0.0)


def test_monte_carlo_agrees_with_oracle():
    model = MeanSumModel.of([bernoulli(0.4), bernoulli(0.6)], [20, 20])
    x = z_alpha(0.95)
    reps = 100_000
    estimate, stderr = estimate_P(model, x, reps, seed=20240101)
    exact = exact_cdf_standardized(model, x)
    assert abs(estimate - exact) <= 4 * math.sqrt(exact * (1 - exact) / reps)
    assert stderr == pytest.approx(math.sqrt(estimate * (1 - estimate) / reps))


def test_figure1_oracle_grid():
    config = make_config()
    table = run_figure1(config, max_workers=2)

    assert len(table) == 8 * 2
    assert all(row.status == "ok" for row in table.rows)
    first = table.rows[0]
    model = config.template().with_sizes((first.n1, first.n2))
    assert first.estimate == exact_cdf_standardized(model, z_alpha(0.95))
    frame = table.to_frame()
    assert frame["seed"].isna().all()
    assert list(frame["n1"][:4]) == [10, 10, 11, 11]


def test_figure1_marks_infeasible_rows():
    table = run_figure1(make_config(oracle_budget=10))
    assert all(row.status == "infeasible" for row in table.rows)
    assert all(math.isnan(row.estimate) for row in table.rows)


def test_figure1_expansion_method():
    config = make_config(method="two-sample-direct")
    table = run_figure1(config)
    row = table.at_alpha(0.75)[0]
    model = config.template().with_sizes((row.n1, row.n2))
    expected = full_expansion(model, z_alpha(0.75), "two-sample-direct").total
    assert row.estimate == pytest.approx(expected)


def test_figure1_monte_carlo_needs_a_seed():
    with pytest.raises(InvalidModelError):
        run_figure1(make_config(method="mc", reps=100))


def test_figure1_monte_carlo_ignores_worker_count():
    config = make_config(method="mc", reps=2000, seed=11)
    serial = run_figure1(config, max_workers=1).to_frame()
    parallel = run_figure1(config, max_workers=4).to_frame()
    assert serial.equals(parallel)
    assert (serial["seed"] == 11).all()


def test_figure2_coverage_grid():
    config = make_config(
        n1_range={"start": 10, "end": 11}, alphas=[0.9], reps=20, B=49, seed=5
    )
    result = run_figure2(config, max_workers=2)
    assert [(r.n1, r.n2) for r in result.rows] == [(10, 14), (11, 16)]
    assert all(0.0 <= r.coverage <= 1.0 for r in result.rows)
    again = run_figure2(config, max_workers=1)
    assert result == again


def test_detrended_spread_needs_enough_rows():
    with pytest.raises(InvalidModelError):
        detrended_spread([10, 11, 12], [0.1, 0.2, 0.3])
    n1 = list(range(10, 30))
    trend = [0.9 + 0.3 / math.sqrt(n) for n in n1]
    assert detrended_spread(n1, trend) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.slow
def test_equal_sizes_oscillate_more_than_irrational_ratio():
    equal = run_figure1(
        make_config(rho0=1, n1_range={"start": 10, "end": 80}, alphas=[0.95])
    )
    irrational = run_figure1(
        make_config(n1_range={"start": 10, "end": 80}, alphas=[0.95])
    )
    assert oscillation_amplitude(equal, 0.95) > 1.5 * oscillation_amplitude(
        irrational, 0.95
    )


@pytest.mark.slow
def test_smaller_offset_power_oscillates_more():
    def amplitude(kappa):
        table = run_figure1(
            make_config(
                n2_rule="offset-power",
                kappa=kappa,
                n1_range={"start": 10, "end": 80},
                alphas=[0.95],
            )
        )
        return oscillation_amplitude(table, 0.95)

    assert amplitude(0.2) > amplitude(0.6)


def test_config_from_file_rejects_undecodable_bytes(tmp_path):
    path = tmp_path / "config.json"
    path.write_bytes(b"\xff\xfe\x00{")
    with pytest.raises(InvalidModelError, match="malformed"):
        ExperimentConfig.from_file(path)


def test_config_from_file_reports_unreadable_path(tmp_path):
    with pytest.raises(InvalidModelError, match="cannot read"):
        ExperimentConfig.from_file(tmp_path)


def test_figure_rows_are_tagged_in_the_run_record(tmp_path):
    store = RunRecordStore(tmp_path)
    store.init_run("tagged", "simulate pvals", {})
    run_figure1(
        make_config(n1_range={"start": 10, "end": 11}), store=store, run_id="tagged"
    )
    for name in ("n1_10_n2_14", "n1_11_n2_16"):
        row = store.get_row("tagged", name)
        assert row["tags"] == ["oracle", "pvals"]
        assert row["description"] == "P(x) at alphas [0.95, 0.75]"
