"""
GIFS domain types
Points, affine and generic maps of order m, systems of maps and finite point clouds
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from gifs.core.exceptions import (
    ArityError,
    DimensionMismatchError,
    EmptyCloudError,
    NonAffineSystemError,
)

# A point of R^d is a read-only float64 vector of shape (d,)
Point = np.ndarray

PROBABILITY_TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def as_point(coords: Sequence[float], dimension: Optional[int] = None) -> Point:
    """Validate coordinates and return them as a read-only point"""
    point = np.array(coords, dtype=float)
    if point.ndim != 1:
        raise DimensionMismatchError(f"Point must be a flat coordinate vector, got shape {point.shape}")
    if dimension is not None and point.shape[0] != dimension:
        raise DimensionMismatchError(
            f"Point has dimension {point.shape[0]}, expected {dimension}",
            {"expected": dimension, "actual": point.shape[0]},
        )
    if not np.all(np.isfinite(point)):
        raise ValueError("Point coordinates must be finite")
    return _frozen(point)


@dataclass(frozen=True, eq=False)
class AffineMap:
    """
    f(x_1, ..., x_m) = A_1 x_1 + ... + A_m x_m + b
    matrices has shape (m, d, d), translation has shape (d,)
    """
    matrices: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        matrices = np.array(self.matrices, dtype=float)
        translation = np.array(self.translation, dtype=float)

        if matrices.ndim != 3 or matrices.shape[0] < 1 or matrices.shape[1] != matrices.shape[2]:
            raise DimensionMismatchError(
                f"Affine map needs m >= 1 square matrices, got shape {matrices.shape}"
            )
        if translation.shape != (matrices.shape[1],):
            raise DimensionMismatchError(
                f"Translation has shape {translation.shape}, expected ({matrices.shape[1]},)"
            )
        if not (np.all(np.isfinite(matrices)) and np.all(np.isfinite(translation))):
            raise ValueError("Affine map coefficients must be finite")

        object.__setattr__(self, "matrices", _frozen(matrices))
        object.__setattr__(self, "translation", _frozen(translation))

    @property
    def order(self) -> int:
        return self.matrices.shape[0]

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]

    @cached_property
    def diagonal_matrix(self) -> np.ndarray:
        """A_1 + ... + A_m, the linear part of x -> f(x, ..., x)"""
        return _frozen(self.matrices.sum(axis=0))

    def evaluate(self, args: np.ndarray) -> Point:
        """args is an (m, d) array of already validated points"""
        return np.einsum("jab,jb->a", self.matrices, args) + self.translation

    @classmethod
    def zero(cls, order: int, translation: Sequence[float]) -> "AffineMap":
        """Constant map x -> translation"""
        d = len(translation)
        return cls(np.zeros((order, d, d)), np.asarray(translation, dtype=float))


@dataclass(frozen=True, eq=False)
class GenericMap:
    """Non-affine map given by a Python callable taking m points and returning one"""
    order: int
    dimension: int
    evaluator: Callable[..., Sequence[float]]
    name: str = "generic"

    def __post_init__(self):
        if self.order < 1 or self.dimension < 1:
            raise ValueError("Generic map needs order >= 1 and dimension >= 1")

    def evaluate(self, args: np.ndarray) -> Point:
        value = np.asarray(self.evaluator(*args), dtype=float)
        if value.shape != (self.dimension,):
            raise DimensionMismatchError(
                f"Map '{self.name}' returned shape {value.shape}, expected ({self.dimension},)"
            )
        return value


GifsMap = Union[AffineMap, GenericMap]


@dataclass(frozen=True, eq=False)
class GifsSystem:
    """Generalized iterated function system of order m on R^d"""
    dimension: int
    order: int
    maps: Tuple[GifsMap, ...]
    probabilities: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.order < 1:
            raise ArityError(f"System order must be at least 1, got {self.order}")
        if self.dimension < 1:
            raise DimensionMismatchError(f"System dimension must be at least 1, got {self.dimension}")
        if not self.maps:
            raise ValueError("A system needs at least one map")

        for index, f in enumerate(self.maps, start=1):
            if f.order != self.order:
                raise ArityError(f"Map {index} has order {f.order}, system order is {self.order}")
            if f.dimension != self.dimension:
                raise DimensionMismatchError(
                    f"Map {index} has dimension {f.dimension}, system dimension is {self.dimension}"
                )

        if self.probabilities is not None:
            probabilities = tuple(float(p) for p in self.probabilities)
            if len(probabilities) != len(self.maps):
                raise ValueError(
                    f"probabilities has {len(probabilities)} entries for {len(self.maps)} maps"
                )
            if any(p <= 0 for p in probabilities):
                raise ValueError("probabilities must all be positive")
            if abs(sum(probabilities) - 1.0) > PROBABILITY_TOLERANCE:
                raise ValueError(f"probabilities sum to {sum(probabilities)!r}, expected 1")
            object.__setattr__(self, "probabilities", probabilities)

    @property
    def n(self) -> int:
        return len(self.maps)

    @property
    def is_affine(self) -> bool:
        return all(isinstance(f, AffineMap) for f in self.maps)

    @cached_property
    def matrices(self) -> np.ndarray:
        """Stacked linear parts, shape (n, m, d, d); affine systems only"""
        return _frozen(np.stack([f.matrices for f in self.affine_maps()]))

    @cached_property
    def translations(self) -> np.ndarray:
        """Stacked translations, shape (n, d); affine systems only"""
        return _frozen(np.stack([f.translation for f in self.affine_maps()]))

    def affine_maps(self) -> Tuple[AffineMap, ...]:
        if not self.is_affine:
            raise NonAffineSystemError("Operation requires every map to be affine")
        return self.maps  # type: ignore[return-value]

    @classmethod
    def affine(
        cls,
        maps: Sequence[AffineMap],
        probabilities: Optional[Sequence[float]] = None
    ) -> "GifsSystem":
        """Build a system from affine maps, reading order and dimension off the first map"""
        if not maps:
            raise ValueError("A system needs at least one map")
        return cls(
            dimension=maps[0].dimension,
            order=maps[0].order,
            maps=tuple(maps),
            probabilities=tuple(probabilities) if probabilities is not None else None,
        )


@dataclass(frozen=True, eq=False)
class PointCloud:
    """
    Finite set of points of R^d stored as a sorted (N, d) array
    Duplicate rows are collapsed on construction
    """
    points: np.ndarray
    dimension: int

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.size == 0:
            points = np.empty((0, self.dimension), dtype=float)
        if points.ndim == 1:
            points = points.reshape(1, -1)
        if points.ndim != 2 or points.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"Cloud points have shape {points.shape}, expected (N, {self.dimension})"
            )
        if len(points) > 1:
            points = np.unique(points, axis=0)
        else:
            points = points.copy()
        object.__setattr__(self, "points", _frozen(points))

    @classmethod
    def of(cls, points: Sequence[Sequence[float]]) -> "PointCloud":
        """Cloud from a nonempty sequence of coordinate tuples"""
        array = np.asarray(points, dtype=float)
        return cls(array, array.shape[-1])

    @classmethod
    def singleton(cls, point: Sequence[float]) -> "PointCloud":
        array = np.asarray(point, dtype=float)
        return cls(array.reshape(1, -1), array.shape[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.dimension == other.dimension and np.array_equal(self.points, other.points)

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_empty(self) -> bool:
        return len(self.points) == 0

    def union(self, *others: "PointCloud") -> "PointCloud":
        for other in others:
            if other.dimension != self.dimension:
                raise DimensionMismatchError("Cannot unite clouds of different dimensions")
        return PointCloud(
            np.concatenate([self.points] + [other.points for other in others]),
            self.dimension,
        )

    def issubset(self, other: "PointCloud") -> bool:
        mine = {tuple(row) for row in self.points.tolist()}
        theirs = {tuple(row) for row in other.points.tolist()}
        return mine <= theirs

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        """Per-axis (minimum, maximum) of a nonempty cloud"""
        if self.is_empty:
            raise EmptyCloudError("Empty cloud has no bounding box")
        return self.points.min(axis=0), self.points.max(axis=0)

    @property
    def extent(self) -> float:
        """Length of the bounding box diagonal, an upper bound on the diameter"""
        low, high = self.bounding_box()
        return float(np.linalg.norm(high - low))
