"""
compare command
Hausdorff distance between two algorithms' approximations of the same attractor
"""

from pathlib import Path
from typing import Optional

import structlog
import typer

from gifs.cli.errors import EXIT_THRESHOLD_EXCEEDED, handle_errors
from gifs.models.enums import Algorithm
from gifs.services.comparison import compare_runs
from gifs.services.pipeline import apply_overrides, generate_cloud, load_config

logger = structlog.get_logger()


@handle_errors
def compare(
    config: Path = typer.Option(..., "--config", "-c", help="GIFS definition file (JSON)"),
    algorithm: Algorithm = typer.Option(..., "--algorithm", "-a", help="First algorithm"),
    against: Algorithm = typer.Option(..., "--against", "-b", help="Second algorithm"),
    threshold: Optional[float] = typer.Option(None, "--threshold", "-t", help="Fail (exit 2) above this distance"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Depth or level of the first algorithm"),
    against_depth: Optional[int] = typer.Option(None, "--against-depth", help="Depth or level of the second algorithm"),
    points: Optional[int] = typer.Option(None, "--points", help="Chaos game points per chain"),
    burn_in: Optional[int] = typer.Option(None, "--burn-in", help="Chaos game points discarded per chain"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Symbol stream seed"),
    decimate: Optional[float] = typer.Option(None, "--decimate", help="Grid resolution for deterministic runs"),
    strict: bool = typer.Option(False, "--strict", help="Fail when the system is not contractive"),
):
    """Compare two approximations and print the JSON report"""
    loaded = load_config(config, strict=strict)
    shared = dict(points=points, burn_in=burn_in, seed=seed, decimation=decimate)
    first_options = apply_overrides(loaded.options, algorithm=algorithm, depth=depth, **shared)
    second_options = apply_overrides(loaded.options, algorithm=against, depth=against_depth, **shared)

    report = compare_runs(
        generate_cloud(loaded.system, first_options),
        generate_cloud(loaded.system, second_options),
        threshold=threshold,
        first_label=algorithm.value,
        second_label=against.value,
    )
    typer.echo(report.model_dump_json(indent=2))
    logger.info(
        "Comparison complete",
        first=algorithm.value,
        second=against.value,
        distance=report.hausdorff_distance,
        passed=report.passed,
    )
    if not report.passed:
        raise typer.Exit(code=EXIT_THRESHOLD_EXCEEDED)
