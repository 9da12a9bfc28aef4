"""
render command
Approximates the attractor with the selected algorithm and writes a PGM or PNG image
"""

from pathlib import Path
from typing import Optional

import structlog
import typer

from gifs.cli.errors import handle_errors
from gifs.models.enums import Algorithm, RasterMode
from gifs.services.pipeline import apply_overrides, load_config, render_image
from gifs.services.rendering import Viewport, write_image

logger = structlog.get_logger()


@handle_errors
def render(
    config: Path = typer.Option(..., "--config", "-c", help="GIFS definition file (JSON)"),
    out: Path = typer.Option(Path("attractor.pgm"), "--out", "-o", help="Output image (.pgm or .png)"),
    algorithm: Optional[Algorithm] = typer.Option(None, "--algorithm", "-a", help="Approximation algorithm"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Iterations or code-space level"),
    points: Optional[int] = typer.Option(None, "--points", help="Chaos game points per chain"),
    burn_in: Optional[int] = typer.Option(None, "--burn-in", help="Chaos game points discarded per chain"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Symbol stream seed"),
    chains: Optional[int] = typer.Option(None, "--chains", help="Independent chaos game chains"),
    width: Optional[int] = typer.Option(None, "--width", help="Image width in pixels"),
    height: Optional[int] = typer.Option(None, "--height", help="Image height in pixels"),
    viewport: Optional[str] = typer.Option(None, "--viewport", help="x0,x1,y0,y1 (default: fitted to the points)"),
    decimate: Optional[float] = typer.Option(None, "--decimate", help="Grid resolution for deterministic runs"),
    mode: Optional[RasterMode] = typer.Option(None, "--mode", help="density or binary pixels"),
    strict: bool = typer.Option(False, "--strict", help="Fail when the system is not contractive"),
):
    """Render the attractor of a GIFS to an image"""
    loaded = load_config(config, strict=strict)
    options = apply_overrides(
        loaded.options,
        algorithm=algorithm,
        depth=depth,
        points=points,
        burn_in=burn_in,
        seed=seed,
        chains=chains,
        width=width,
        height=height,
        viewport=list(Viewport.parse(viewport).as_tuple()) if viewport is not None else None,
        decimation=decimate,
        mode=mode,
    )

    image, box, cloud = render_image(loaded.system, options)
    write_image(image, out)
    logger.info(
        "Render complete",
        algorithm=options.algorithm.value,
        points=len(cloud),
        dropped=image.dropped,
        viewport=box.as_tuple(),
        out=str(out),
    )
    typer.echo(
        f"Wrote {image.width}x{image.height} image of {len(cloud)} points to {out}, "
        f"{image.dropped} outside the viewport"
    )
