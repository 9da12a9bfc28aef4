# GIFS Schemas Package

from .config import MapDefinition, RenderOptions, GifsDefinition
from .reports import (
    BoundingBox,
    CloudSummary,
    ComparisonReport,
    MapBoundResponse,
    ValidationResponse,
    BenchResult,
    BenchReport,
)

__all__ = [
    # Definition file schemas
    "MapDefinition",
    "RenderOptions",
    "GifsDefinition",

    # Report schemas
    "BoundingBox",
    "CloudSummary",
    "ComparisonReport",
    "MapBoundResponse",
    "ValidationResponse",
    "BenchResult",
    "BenchReport",
]
