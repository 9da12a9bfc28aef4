"""
bench command
"""

import time
from pathlib import Path
from typing import List, Optional

import typer

from gifs.cli.errors import handle_errors
from gifs.models.enums import Algorithm
from gifs.schemas.reports import BenchReport, BenchResult
from gifs.services.pipeline import apply_overrides, generate_cloud, load_config


@handle_errors
def bench(
    config: Path = typer.Option(..., "--config", "-c", help="GIFS definition file (JSON)"),
    algorithms: Optional[List[Algorithm]] = typer.Option(
        None, "--algorithm", "-a", help="Algorithm to time; repeat for several (default: the file's)"
    ),
    depth: Optional[int] = typer.Option(None, "--depth", help="Iterations or code-space level"),
    points: Optional[int] = typer.Option(None, "--points", help="Chaos game points per chain"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Symbol stream seed"),
    decimate: Optional[float] = typer.Option(None, "--decimate", help="Grid resolution for deterministic runs"),
):
    """Time each algorithm on a definition file"""
    loaded = load_config(config)
    results = []
    for algorithm in algorithms or [loaded.options.algorithm]:
        options = apply_overrides(
            loaded.options, algorithm=algorithm, depth=depth, points=points, seed=seed, decimation=decimate
        )
        started = time.perf_counter()
        cloud = generate_cloud(loaded.system, options)
        results.append(BenchResult(
            algorithm=algorithm.value,
            parameters=options.model_dump(
                mode="json", include={"depth", "points", "burn_in", "seed", "chains", "decimation"}
            ),
            points=len(cloud),
            elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
        ))

    report = BenchReport(config=str(config), results=results, total_count=len(results))
    typer.echo(report.model_dump_json(indent=2))
