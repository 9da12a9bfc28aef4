"""
validate command
Checks a definition file and reports the contractivity bound of every map
"""

from pathlib import Path

import structlog
import typer

from gifs.cli.errors import handle_errors
from gifs.schemas.reports import MapBoundResponse, ValidationResponse
from gifs.services.pipeline import load_config

logger = structlog.get_logger()


@handle_errors
def validate(
    config: Path = typer.Option(..., "--config", "-c", help="GIFS definition file (JSON)"),
    strict: bool = typer.Option(False, "--strict", help="Fail when the system is not contractive"),
):
    """Validate a definition file and print its contractivity report"""
    loaded = load_config(config, strict=strict)
    report = loaded.contractivity
    response = ValidationResponse(
        config=str(config),
        dimension=loaded.system.dimension,
        order=loaded.system.order,
        maps=loaded.system.n,
        c=report.c,
        passed=report.passed,
        strict=strict,
        bounds=[
            MapBoundResponse(index=b.index, bound=b.bound, is_affine=b.is_affine)
            for b in report.bounds
        ],
        unverified=report.unverified,
        warnings=report.warnings,
    )
    logger.info("Definition validated", config=str(config), c=report.c, passed=report.passed)
    typer.echo(response.model_dump_json(indent=2))
