"""
GIFS Models Package
Domain types for systems of maps, points and point clouds
"""

from .enums import Algorithm, RasterMode, ImageFormat
from .system import (
    Point,
    as_point,
    AffineMap,
    GenericMap,
    GifsMap,
    GifsSystem,
    PointCloud,
)

__all__ = [
    "Algorithm",
    "RasterMode",
    "ImageFormat",
    "Point",
    "as_point",
    "AffineMap",
    "GenericMap",
    "GifsMap",
    "GifsSystem",
    "PointCloud",
]
