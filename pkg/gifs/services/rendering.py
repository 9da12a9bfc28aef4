"""
GIFS Rendering Service
Viewports, rasterization of planar point clouds and image file output (binary PGM, PNG)
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import structlog
from PIL import Image

from gifs.core.config import settings
from gifs.core.exceptions import ConfigurationError, DimensionMismatchError, OutputError
from gifs.models.enums import ImageFormat, RasterMode
from gifs.models.system import PointCloud

logger = structlog.get_logger()


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned box [x0, x1] x [y0, y1]"""
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ConfigurationError(
                f"Viewport needs x1 > x0 and y1 > y0, got {self.as_tuple()}", field="viewport"
            )

    @classmethod
    def parse(cls, value: Union[str, Sequence[float]]) -> "Viewport":
        """From 'x0,x1,y0,y1' or a 4-element sequence"""
        parts = value.split(",") if isinstance(value, str) else list(value)
        if len(parts) != 4:
            raise ConfigurationError("Viewport needs four numbers x0,x1,y0,y1", field="viewport")
        try:
            x0, x1, y0, y1 = (float(part) for part in parts)
        except ValueError as e:
            raise ConfigurationError(f"Viewport values must be numbers: {value}", field="viewport") from e
        return cls(x0, x1, y0, y1)

    def as_tuple(self) -> tuple:
        return (self.x0, self.x1, self.y0, self.y1)

    def contains(self, points: np.ndarray) -> np.ndarray:
        return (
            (points[:, 0] >= self.x0) & (points[:, 0] <= self.x1)
            & (points[:, 1] >= self.y0) & (points[:, 1] <= self.y1)
        )


@dataclass(frozen=True, eq=False)
class RasterImage:
    """8-bit grayscale pixels of shape (height, width), top row first"""
    pixels: np.ndarray
    dropped: int = 0

    def __post_init__(self):
        if self.pixels.dtype != np.uint8 or self.pixels.ndim != 2:
            raise ValueError("Raster pixels must be a 2-D uint8 array")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def _require_plane(cloud: PointCloud) -> None:
    if cloud.dimension != 2:
        raise DimensionMismatchError(f"Rasterization needs planar points, got dimension {cloud.dimension}")


def auto_viewport(cloud: PointCloud, margin_fraction: Optional[float] = None) -> Viewport:
    """Bounding box widened by margin_fraction of its extent per side; zero-extent axes get a unit span"""
    _require_plane(cloud)
    margin_fraction = margin_fraction if margin_fraction is not None else settings.VIEWPORT_MARGIN
    low, high = cloud.bounding_box()
    bounds = []
    for axis in range(2):
        extent = high[axis] - low[axis]
        if extent == 0:
            bounds.append((low[axis] - 0.5, high[axis] + 0.5))
        else:
            bounds.append((low[axis] - margin_fraction * extent, high[axis] + margin_fraction * extent))
    (x0, x1), (y0, y1) = bounds
    return Viewport(float(x0), float(x1), float(y0), float(y1))


def rasterize(
    cloud: PointCloud,
    viewport: Viewport,
    width: int,
    height: int,
    mode: RasterMode = RasterMode.DENSITY,
    gamma: Optional[float] = None
) -> RasterImage:
    """
    Pixel of (x, y) is (floor((x - x0)/dx), floor((y1 - y)/dy)) clamped inward
    Density mode gamma-normalizes hit counts to 0..255, binary mode marks hit pixels 255
    """
    _require_plane(cloud)
    if width < 1 or height < 1:
        raise ConfigurationError(f"Image size must be positive, got {width}x{height}", field="width")
    gamma = gamma if gamma is not None else settings.DENSITY_GAMMA

    points = cloud.points
    inside = viewport.contains(points)
    dropped = int(len(points) - inside.sum())
    if dropped:
        logger.warning("Points outside viewport dropped", dropped=dropped, total=len(points))
    points = points[inside]

    dx = (viewport.x1 - viewport.x0) / width
    dy = (viewport.y1 - viewport.y0) / height
    columns = np.clip(np.floor((points[:, 0] - viewport.x0) / dx).astype(np.int64), 0, width - 1)
    rows = np.clip(np.floor((viewport.y1 - points[:, 1]) / dy).astype(np.int64), 0, height - 1)
    counts = np.bincount(rows * width + columns, minlength=width * height).reshape(height, width)

    if mode == RasterMode.BINARY:
        pixels = np.where(counts > 0, 255, 0).astype(np.uint8)
    elif counts.max() == 0:
        pixels = np.zeros((height, width), dtype=np.uint8)
    else:
        pixels = np.rint(255 * (counts / counts.max()) ** gamma).astype(np.uint8)
    return RasterImage(pixels=pixels, dropped=dropped)


def pgm_bytes(img: RasterImage) -> bytes:
    """Binary PGM: 'P5', width and height, maxval 255, then raw row-major bytes"""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def image_format_for(path: Union[str, Path]) -> ImageFormat:
    return ImageFormat.PNG if Path(path).suffix.lower() == ".png" else ImageFormat.PGM


def write_image(img: RasterImage, path: Union[str, Path], image_format: Optional[ImageFormat] = None) -> None:
    image_format = image_format or image_format_for(path)
    path = Path(path)
    try:
        if image_format == ImageFormat.PNG:
            Image.fromarray(img.pixels, mode="L").save(path, format="PNG")
        else:
            path.write_bytes(pgm_bytes(img))
    except OSError as e:
        raise OutputError(f"Could not write image ({e.strerror or e})", str(path)) from e
    logger.info("Image written", path=str(path), format=image_format.value, bytes=path.stat().st_size)


def read_image(path: Union[str, Path]) -> RasterImage:
    """Read a grayscale PGM or PNG back into memory"""
    try:
        with Image.open(path) as image:
            pixels = np.array(image.convert("L"), dtype=np.uint8)
    except OSError as e:
        raise OutputError(f"Could not read image ({e})", str(path)) from e
    return RasterImage(pixels=pixels)
