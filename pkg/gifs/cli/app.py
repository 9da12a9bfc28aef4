"""
GIFS Command Line Application
Single entry point aggregating the validate, render, compare and bench commands
"""

from typing import Optional

import typer

from gifs.cli.commands import bench, compare, render, validate
from gifs.cli.errors import CommandGroup
from gifs.core.config import settings
from gifs.core.logging import configure_logging

app = typer.Typer(
    name="gifs",
    cls=CommandGroup,
    help="Compute and render attractors of generalized iterated function systems",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level (default: GIFS_LOG_LEVEL)"),
    json_logs: Optional[bool] = typer.Option(None, "--json-logs/--console-logs", help="Log format (default: GIFS_LOG_JSON)"),
):
    configure_logging(
        level=log_level or settings.LOG_LEVEL,
        json_output=settings.LOG_JSON if json_logs is None else json_logs,
    )


# Commands
app.command("validate")(validate.validate)
app.command("render")(render.render)
app.command("compare")(compare.compare)
app.command("bench")(bench.bench)
