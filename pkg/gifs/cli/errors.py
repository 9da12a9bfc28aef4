"""
Command error handling
Maps toolkit errors and command line usage errors to process exit codes
"""

import functools
import sys
from typing import Callable

import click
import structlog
import typer
from typer.core import TyperGroup

from gifs.core.exceptions import GifsError

logger = structlog.get_logger()

EXIT_SUCCESS = 0
EXIT_CONFIGURATION = 1
EXIT_THRESHOLD_EXCEEDED = 2
EXIT_BUDGET_EXCEEDED = 3


def handle_errors(command: Callable) -> Callable:
    """Log a GifsError and exit with its code instead of printing a traceback"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except GifsError as e:
            logger.error(
                "Command failed",
                command=command.__name__,
                error_type=type(e).__name__,
                error=e.message,
                exit_code=e.exit_code,
            )
            typer.echo(f"Error: {e.message}", err=True)
            raise typer.Exit(code=e.exit_code)
    return wrapper


class CommandGroup(TyperGroup):
    """
    Command group whose usage errors exit with EXIT_CONFIGURATION
    click would exit 2 on them, which is reserved for a failed comparison
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.exceptions.UsageError as e:
            e.show()
            exit_code = EXIT_CONFIGURATION
        except click.exceptions.ClickException as e:
            e.show()
            exit_code = e.exit_code
        except click.exceptions.Abort:
            typer.echo("Aborted!", err=True)
            exit_code = EXIT_CONFIGURATION
        else:
            exit_code = result if isinstance(result, int) else EXIT_SUCCESS

        if not standalone_mode:
            return exit_code
        sys.exit(exit_code)
