"""
Enums shared by the services, schemas and command line
"""

from enum import Enum


class Algorithm(str, Enum):
    """Attractor approximation algorithms"""
    DETERMINISTIC = "deterministic"
    DETERMINISTIC_SIMPLIFIED = "deterministic-simplified"
    CHAOS = "chaos"
    AFFINE_SHORTCUT = "affine-shortcut"
    AFFINE_FULL = "affine-full"
    
    @property
    def needs_affine(self) -> bool:
        return self in (Algorithm.AFFINE_SHORTCUT, Algorithm.AFFINE_FULL)


class RasterMode(str, Enum):
    """Pixel value policy when binning points"""
    DENSITY = "density"
    BINARY = "binary"


class ImageFormat(str, Enum):
    """Supported image outputs"""
    PGM = "pgm"
    PNG = "png"
