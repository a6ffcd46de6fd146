"""Main entry point: check instance files, reproduce the discrimination example, fuzz the bounds"""

import logging
import sys
import time
from typing import Optional, Sequence

import click
from pydantic import ValidationError

from core.config import app_config
from core.errors import BoundsToolkitError
from core.log import setup_logging
from models.entropy import ConjugatePair
from models.fuzz import FuzzSettings
from services.bounds import check_instance
from services.fuzz import run_fuzz, run_seeded_trial
from services.instance_io import build_instance, load_instance
from services.render import render_bound_report, render_example, render_fuzz
from services.scenarios import dump_discrimination_instance, discrimination_example_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2


class SpanParam(click.ParamType):
    """Integer range written as LO..HI (or a single value)"""

    name = "LO..HI"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            lo, _, hi = str(value).partition("..")
            span = (int(lo), int(hi or lo))
        except ValueError:
            self.fail(f"{value!r} is not a range like 2..6", param, ctx)
        if span[0] < 1 or span[1] < span[0]:
            self.fail(f"{value!r} is not a valid range", param, ctx)
        return span


def _input_error(e: Exception) -> int:
    click.echo(f"{type(e).__name__}: {e}", err=True)
    return EXIT_INPUT


@click.group()
def cli() -> None:
    """Renyi-entropy uncertainty bounds for generalized measurements."""
    setup_logging()


@cli.command("check")
@click.argument("instance_path", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
@click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None,
              help="POVM completeness tolerance")
def check(instance_path: str, as_json: bool, tol: Optional[float]) -> int:
    """Check every applicable bound on the instance in INSTANCE_PATH."""
    try:
        loaded = build_instance(load_instance(instance_path), tol)
        names = list(loaded.povms)
        m = loaded.povms[names[0]]
        n = loaded.povms[names[1]] if len(names) > 1 else None
        report = check_instance(
            m,
            n,
            loaded.state,
            pair=loaded.pair,
            extra_orders=loaded.orders,
            names=(names[0], names[1] if n is not None else "N"),
        )
    except BoundsToolkitError as e:
        return _input_error(e)

    click.echo(report.model_dump_json(indent=2) if as_json else render_bound_report(report))
    return EXIT_OK if report.ok else EXIT_VIOLATION


@cli.command("paper-example")
@click.option("--pair", "pair_values", type=float, nargs=2, default=None,
              help="conjugate orders ALPHA BETA (default 2 2/3)")
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
@click.option("--write-instance", type=click.Path(dir_okay=False), default=None,
              help="also write the example as an instance file")
def discrimination_example(pair_values, as_json: bool, write_instance: Optional[str]) -> int:
    """Reproduce every number of the two-state discrimination example."""
    try:
        pair = ConjugatePair(alpha=pair_values[0], beta=pair_values[1]) if pair_values else None
    except ValidationError as e:
        return _input_error(e)

    example = discrimination_example_report(pair)
    if write_instance:
        dump_discrimination_instance(write_instance, pair)

    click.echo(example.model_dump_json(indent=2) if as_json else render_example(example))
    return EXIT_OK if example.ok else EXIT_VIOLATION


# Синоним команды примера
cli.add_command(discrimination_example, "discrimination-example")


@cli.command("fuzz")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True)
@click.option("--trials", type=int, required=True)
@click.option("--dims", type=SpanParam(), required=True)
@click.option("--outcomes", type=SpanParam(), default="2..5", show_default=True)
@click.option("--rank-one", is_flag=True, help="rank-one POVMs only; asserts norm saturation")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="worker threads")
@click.option("--replay", type=click.IntRange(0, 2**64 - 1), default=None,
              help="rerun the single trial with this trial seed")
@click.option("--json", "as_json", is_flag=True, help="machine-readable summary")
def fuzz(seed, trials, dims, outcomes, rank_one, jobs, replay, as_json) -> int:
    """Check all bounds on TRIALS random instances."""
    try:
        settings = FuzzSettings(
            seed=seed,
            trials=trials,
            dims=dims,
            outcomes=outcomes,
            rank_one=rank_one,
            jobs=jobs or app_config.FUZZ_JOBS,
        )
    except ValidationError as e:
        return _input_error(e)

    if replay is not None:
        result = run_seeded_trial(settings, replay)
        click.echo(result.model_dump_json(indent=2))
        return EXIT_VIOLATION if result.failed else EXIT_OK

    started = time.perf_counter()
    summary = run_fuzz(settings)
    logger.info(f"Fuzz finished in {time.perf_counter() - started:.2f}s")

    click.echo(summary.model_dump_json(indent=2) if as_json else render_fuzz(summary))
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map its outcome onto exit codes 0 / 1 / 2"""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None,
                      prog_name="bounds", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
