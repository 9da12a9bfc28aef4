"""
GIFS Render Pipeline
Definition file loading, algorithm dispatch and image production shared by every command
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import structlog
from pydantic import ValidationError

from gifs.core.config import settings
from gifs.core.exceptions import ConfigurationError, GifsError, NonAffineSystemError
from gifs.models.enums import Algorithm
from gifs.models.system import GifsSystem, PointCloud, as_point
from gifs.schemas.config import GifsDefinition, RenderOptions
from gifs.services.affine import attractor_from_seed, attractor_shortcut, build_tables_full
from gifs.services.chaos_game import RngSpec, chaos_run
from gifs.services.deterministic import det_run, det_run_simplified
from gifs.services.rendering import RasterImage, Viewport, auto_viewport, rasterize
from gifs.services.validation import ContractivityReport, validate_contractive

logger = structlog.get_logger()


@dataclass
class RenderConfig:
    """A validated definition file with its built system and render options"""
    definition: GifsDefinition
    system: GifsSystem
    options: RenderOptions
    contractivity: ContractivityReport


def _validation_message(error: ValidationError) -> Tuple[str, Optional[str]]:
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or None
    message = first["msg"].removeprefix("Value error, ")
    return (f"{field}: {message}" if field else message), field


def parse_config(text: str, strict: bool = False) -> RenderConfig:
    """
    Validate a JSON definition and build its system
    A failed contractivity check is a warning, or an error under strict
    """
    try:
        definition = GifsDefinition.model_validate_json(text)
    except ValidationError as e:
        message, field = _validation_message(e)
        raise ConfigurationError(f"Invalid definition: {message}", field=field) from e

    try:
        system = definition.to_system()
    except GifsError as e:
        raise ConfigurationError(f"Invalid definition: {e.message}", details=e.details) from e
    except ValueError as e:
        raise ConfigurationError(f"Invalid definition: {e}") from e

    report = validate_contractive(system)
    if not report.passed:
        if strict:
            raise ConfigurationError(
                f"System is not contractive: c = {report.c:.6g} >= 1",
                field="maps",
                details={"c": report.c},
            )
        logger.warning("Definition accepted although not contractive", c=report.c)

    return RenderConfig(
        definition=definition,
        system=system,
        options=definition.render or RenderOptions(),
        contractivity=report,
    )


def load_config(path: Union[str, Path], strict: bool = False) -> RenderConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read definition file {path}: {e.strerror or e}", field="config") from e
    config = parse_config(text, strict=strict)
    logger.info(
        "Definition loaded",
        path=str(path),
        dimension=config.system.dimension,
        order=config.system.order,
        maps=config.system.n,
    )
    return config


def serialize_config(config: Union[RenderConfig, GifsDefinition]) -> str:
    definition = config.definition if isinstance(config, RenderConfig) else config
    return definition.model_dump_json(indent=2, exclude_none=True)


def generate_cloud(G: GifsSystem, options: RenderOptions, budget: Optional[int] = None) -> PointCloud:
    """Run the selected algorithm with the given options"""
    algorithm = options.algorithm
    if algorithm.needs_affine and not G.is_affine:
        raise NonAffineSystemError(f"Algorithm {algorithm.value} needs an affine system")
    x0 = as_point(options.x0, G.dimension) if options.x0 is not None else None

    if algorithm == Algorithm.DETERMINISTIC:
        seeds = (PointCloud.singleton(x0),) * G.order if x0 is not None else None
        return det_run(G, seeds, options.depth, options.decimation, budget=budget)

    if algorithm == Algorithm.DETERMINISTIC_SIMPLIFIED:
        seed = PointCloud.singleton(x0) if x0 is not None else None
        return det_run_simplified(G, seed, options.depth, options.decimation, budget=budget)

    if algorithm == Algorithm.CHAOS:
        return chaos_run(
            G,
            x0=x0,
            count=options.points,
            burn_in=options.burn_in,
            rng=RngSpec(seed=options.seed),
            chains=options.chains,
        )

    level = options.depth or settings.AFFINE_LEVEL
    if algorithm == Algorithm.AFFINE_SHORTCUT:
        if x0 is not None:
            return attractor_from_seed(G, level, x0, budget=budget)
        return attractor_shortcut(G, level, budget=budget)

    tables = build_tables_full(G, level, budget=budget).level(level)
    if x0 is None:
        return PointCloud(tables.B, G.dimension)
    return PointCloud(np.einsum("npab,b->na", tables.A, x0) + tables.B, G.dimension)


def render_image(
    G: GifsSystem,
    options: RenderOptions,
    budget: Optional[int] = None
) -> Tuple[RasterImage, Viewport, PointCloud]:
    """Generate the cloud and rasterize it into the configured or automatic viewport"""
    cloud = generate_cloud(G, options, budget=budget)
    viewport = Viewport.parse(options.viewport) if options.viewport is not None else auto_viewport(cloud)
    image = rasterize(cloud, viewport, options.width, options.height, mode=options.mode)
    return image, viewport, cloud


def apply_overrides(options: RenderOptions, **overrides) -> RenderOptions:
    """Command line values replace file values; None means not given"""
    updates = {key: value for key, value in overrides.items() if value is not None}
    try:
        return RenderOptions.model_validate({**options.model_dump(), **updates})
    except ValidationError as e:
        message, field = _validation_message(e)
        raise ConfigurationError(f"Invalid option {message}", field=field) from e
