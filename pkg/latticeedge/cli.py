"""Command-line interface: latticeedge <subcommand> ..."""

import logging
import math
import sys
import uuid
from dataclasses import replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import click
import pandas as pd
from pydantic import ValidationError

from .bootstrap import CoverageResult
from .edgeworth import VARIANTS, BlockingConfig, ExpansionSettings, expansion_grid
from .errors import InvalidModelError, LatticeEdgeError, OracleInfeasibleError
from .lattice import MeanSumModel, exact_sum_distribution
from .numtheory import (
    chi_discrepancy,
    erdos_turan_rhs,
    plan_sample_sizes,
    ratio_diagnostics,
    resolve_irrational,
    slow_convergence_check,
    type_sum,
)
from .output import make_frame, write_csv
from .simulate import ExperimentConfig, SimTable, run_figure1, run_figure2
from .storage import RunRecordStore

logger = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
GRID_SLACK = 1e-9
BREAKDOWN_COLUMNS = ("x", "normal", "skew", "lattice", "total", "variant")

T = TypeVar("T")


class LatticeEdgeGroup(click.Group):
    """Maps library errors onto exit codes with a one-line diagnostic"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except OracleInfeasibleError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_INFEASIBLE)
        except (LatticeEdgeError, ValidationError) as e:
            message = str(e).splitlines()[0] if str(e) else type(e).__name__
            click.echo(f"error: {message}", err=True)
            ctx.exit(EXIT_INVALID)


def parse_grid(text: str) -> List[float]:
    """'a:b:step' -> a, a + step, ..., up to b inclusive"""
    try:
        a, b, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise InvalidModelError(f"x grid must look like a:b:step, got '{text}'")
    if not step > 0 or b < a:
        raise InvalidModelError(f"x grid needs step > 0 and b >= a, got '{text}'")
    count = int(math.floor((b - a) / step + GRID_SLACK)) + 1
    return [a + k * step for k in range(count)]


def collect_points(grid: Optional[str], points: Sequence[float]) -> List[float]:
    xs = list(points)
    if grid:
        xs = parse_grid(grid) + xs
    if not xs:
        raise InvalidModelError("give --x-grid or at least one --x")
    return xs


def parse_poly(text: str) -> List[float]:
    try:
        return [float(c) for c in text.split(",")]
    except ValueError:
        raise InvalidModelError(f"coefficients must be comma-separated: '{text}'")


def emit(frame: pd.DataFrame, out: Optional[str]) -> None:
    text = write_csv(frame, out)
    if out is None:
        click.echo(text, nl=False)


def load_model(path: str, success_prob: bool) -> MeanSumModel:
    return MeanSumModel.from_file(path, "success-prob" if success_prob else None)


def load_config(path: str, seed: Optional[int]) -> ExperimentConfig:
    return ExperimentConfig.from_file(path).with_seed(seed)


def recorded(
    command: str,
    config: ExperimentConfig,
    record_dir: Optional[str],
    out: Optional[str],
    body: Callable[[Optional[RunRecordStore], Optional[str]], T],
) -> T:
    """Run `body`, keeping a JSON run record when a record directory is given"""
    if record_dir is None:
        return body(None, None)
    store = RunRecordStore(record_dir)
    run_id = f"{command.replace(' ', '_')}_{uuid.uuid4().hex[:8]}"
    store.init_run(run_id, command, config.model_dump(mode="json"), config.seed)
    logger.debug("run record %s under %s", run_id, store.runs_dir)
    try:
        result = body(store, run_id)
    except Exception:
        store.set_run_status(run_id, "failed")
        raise
    store.set_output(run_id, out)
    store.set_run_status(run_id, "success")
    return result


model_option = click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Model JSON file with a 'populations' list.",
)
success_prob_option = click.option(
    "--success-prob",
    is_flag=True,
    help="Read Bernoulli parameters as P(X=1) instead of P(X=0).",
)
out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the CSV here instead of stdout.",
)
config_option = click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config JSON file.",
)
seed_option = click.option(
    "--seed",
    type=click.IntRange(0, 2**64 - 1),
    default=None,
    help="Seed overriding the config seed.",
)
workers_option = click.option(
    "--workers",
    type=click.IntRange(0),
    default=None,
    help="Concurrent rows (overrides LE_THREADS; 0 = auto).",
)
record_option = click.option(
    "--record-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Keep a JSON run record under DIR/runs.",
)
x_grid_option = click.option(
    "--x-grid", default=None, help="Points a:b:step, inclusive."
)
x_option = click.option(
    "--x", "points", type=float, multiple=True, help="Extra point; repeatable."
)


@click.group(cls=LatticeEdgeGroup)
@click.option("--verbose", is_flag=True, help="Debug logging on stderr.")
def cli(verbose: bool) -> None:
    """Edgeworth expansions, exact laws and experiments for sums of lattice means."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command("eval")
@model_option
@x_grid_option
@x_option
@click.option(
    "--variant",
    type=click.Choice(VARIANTS),
    default="two-sample-direct",
    show_default=True,
)
@click.option(
    "--alpha",
    type=float,
    default=0.4,
    show_default=True,
    help="Block exponent for the blocked variant.",
)
@click.option(
    "--r0",
    type=int,
    default=8,
    show_default=True,
    help="Taylor order for the blocked variant.",
)
@click.option(
    "--tail-eps",
    type=float,
    default=None,
    help="Series truncation threshold (default LE_TAIL_EPS or 1e-14).",
)
@click.option(
    "--anchor",
    type=click.Choice(["centered", "literal"]),
    default="centered",
    show_default=True,
    help="Lattice phase anchor.",
)
@success_prob_option
@out_option
def eval_command(
    model_path, x_grid, points, variant, alpha, r0, tail_eps, anchor, success_prob, out
):
    """Expansion breakdown (normal, skew, lattice, total) over x."""
    model = load_model(model_path, success_prob)
    settings = ExpansionSettings(lattice_anchor=anchor)
    if tail_eps is not None:
        settings = replace(settings, tail_eps=tail_eps)
    if variant == "two-sample-blocked":
        blocking = BlockingConfig(alpha=alpha, r0=r0, tail_eps=settings.tail_eps)
        settings = replace(settings, blocking=blocking)
    rows = expansion_grid(model, collect_points(x_grid, points), variant, settings)
    emit(make_frame((row.to_row() for row in rows), BREAKDOWN_COLUMNS), out)


@cli.command("oracle")
@model_option
@x_grid_option
@x_option
@click.option(
    "--budget",
    type=click.IntRange(1),
    default=None,
    help="Atom budget (default LE_ORACLE_BUDGET or 10**7).",
)
@success_prob_option
@out_option
def oracle_command(model_path, x_grid, points, budget, success_prob, out):
    """Exact P{(S - ES)/sqrt(Var S) <= x} by convolution."""
    model = load_model(model_path, success_prob)
    xs = collect_points(x_grid, points)
    dist = exact_sum_distribution(model, budget)
    records = [{"x": x, "cdf": dist.cdf(model.mean + x * model.sd)} for x in xs]
    emit(make_frame(records, ("x", "cdf")), out)


@cli.command("plan")
@click.option(
    "--rho0", required=True, help="Named constant (sqrt2, e, golden, ...) or a number."
)
@click.option("--n-max", type=int, required=True, help="Largest sample size.")
@click.option(
    "--mode",
    type=click.Choice(["convergent", "nearest-int"]),
    default="convergent",
    show_default=True,
)
@out_option
def plan_command(rho0, n_max, mode, out):
    """Sample-size pairs whose ratio tracks rho0."""
    plan = plan_sample_sizes(resolve_irrational(rho0), n_max, mode)
    records = [
        {"n1": p.n1, "n2": p.n2, "abs_error": p.abs_error, "bound_q2": p.bound_q2}
        for p in plan.pairs
    ]
    emit(make_frame(records, ("n1", "n2", "abs_error", "bound_q2")), out)


@cli.command("diagnose")
@click.option("--e1", type=float, required=True, help="Span of population 1.")
@click.option("--e2", type=float, required=True, help="Span of population 2.")
@click.option("--n1", type=int, required=True, help="Size of sample 1.")
@click.option("--n2", type=int, required=True, help="Size of sample 2.")
@click.option(
    "--L", "L", type=int, default=10, show_default=True, help="Largest multiple."
)
@click.option("--target", default=None, help="Measure epsilon from this ratio.")
@out_option
def diagnose_command(e1, e2, n1, n2, L, target, out):
    """Sin-condition profile of rho = e2 n1 / (e1 n2); summary on stderr."""
    diag = ratio_diagnostics(e1, e2, n1, n2, L, target)
    slow = slow_convergence_check(diag.epsilon, diag.n)
    nearest = diag.nearest_rational
    click.echo(f"rho = {diag.rho:.17g}", err=True)
    if nearest is not None:
        click.echo(f"nearest rational = {nearest.p}/{nearest.q}", err=True)
    click.echo(f"epsilon = {diag.epsilon:.17g}", err=True)
    click.echo(f"sqrt(n)|epsilon| = {slow.scaled_epsilon:.6g}", err=True)
    click.echo(f"min scaled sin = {diag.minimum:.6g}", err=True)
    click.echo(f"condition fails: {'yes' if diag.condition_fails else 'no'}", err=True)
    records = [{"ell": ell, "scaled_sin": value} for ell, value in diag.sin_profile]
    emit(make_frame(records, ("ell", "scaled_sin")), out)


@cli.command("chi")
@click.option("--n", "N", type=click.IntRange(1), required=True, help="Length N.")
@click.option("--tau", required=True, help="Named constant or a number.")
@click.option(
    "--poly", default="1", show_default=True, help="Coefficients c0,c1,... of q."
)
@click.option(
    "--m",
    type=click.IntRange(1),
    default=None,
    help="Also evaluate the Erdos-Turan bound with this m.",
)
@click.option("--C", "C", type=float, default=3.0, show_default=True)
@out_option
def chi_command(N, tau, poly, m, C, out):
    """Discrepancy max_z |sum q(i/N) psi(z - tau i)|."""
    tau_value = resolve_irrational(tau).value
    record: Dict[str, object] = {
        "n": N,
        "tau": tau_value,
        "chi": chi_discrepancy(N, parse_poly(poly), tau_value),
    }
    columns: Tuple[str, ...] = ("n", "tau", "chi")
    if m is not None:
        record.update(m=m, erdos_turan_rhs=erdos_turan_rhs(N, m, tau_value, C))
        columns += ("m", "erdos_turan_rhs")
    emit(make_frame([record], columns), out)


@cli.command("typesum")
@click.option("--rho0", required=True, help="Named constant or a number.")
@click.option("--m", type=click.IntRange(1), required=True, help="Number of terms.")
@out_option
def typesum_command(rho0, m, out):
    """sum_{l<=m} 1/(l <l rho0>) at the stored precision of rho0."""
    spec = resolve_irrational(rho0)
    record = {"rho0": spec.name, "m": m, "type_sum": type_sum(spec, m)}
    emit(make_frame([record], ("rho0", "m", "type_sum")), out)


@cli.group("simulate", cls=LatticeEdgeGroup)
def simulate_group() -> None:
    """Experiment grids driven by a JSON config."""


@simulate_group.command("pvals")
@config_option
@out_option
@seed_option
@workers_option
@record_option
def pvals_command(config_path, out, seed, workers, record_dir):
    """P(x) at x = Phi^-1(alpha) for every n1 of the range."""
    config = load_config(config_path, seed)

    def body(store, run_id) -> SimTable:
        return run_figure1(config, workers, store=store, run_id=run_id)

    table = recorded("simulate pvals", config, record_dir, out, body)
    emit(table.to_frame(), out)


@simulate_group.command("coverage")
@config_option
@out_option
@seed_option
@workers_option
@record_option
def coverage_command(config_path, out, seed, workers, record_dir):
    """Coverage of the one-sided percentile interval for every n1 of the range."""
    config = load_config(config_path, seed)
    config.require_seed()

    def body(store, run_id) -> CoverageResult:
        return run_figure2(config, workers, store=store, run_id=run_id)

    result = recorded("simulate coverage", config, record_dir, out, body)
    emit(result.to_frame(), out)


def main() -> None:
    cli(prog_name="latticeedge")


if __name__ == "__main__":
    main()
