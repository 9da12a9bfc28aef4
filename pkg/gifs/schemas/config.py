"""
GIFS Definition File Schemas
Pydantic models for system definition files and their optional render block
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import List, Optional

from gifs.core.config import settings
from gifs.models.enums import Algorithm, RasterMode
from gifs.models.system import PROBABILITY_TOLERANCE, AffineMap, GifsSystem


class MapDefinition(BaseModel):
    """One affine map f(x_1, ..., x_m) = A_1 x_1 + ... + A_m x_m + b"""
    model_config = ConfigDict(extra="forbid")

    matrices: List[List[List[float]]] = Field(..., min_length=1, description="m row-major d x d matrices")
    translation: List[float] = Field(..., min_length=1, description="Translation vector b of length d")


class RenderOptions(BaseModel):
    """Algorithm and image settings; every field can be overridden on the command line"""
    model_config = ConfigDict(extra="forbid")

    algorithm: Algorithm = Field(Algorithm.DETERMINISTIC_SIMPLIFIED, description="Approximation algorithm")
    depth: Optional[int] = Field(None, ge=1, description="Iterations or code-space level")
    points: Optional[int] = Field(None, ge=1, description="Chaos game points per chain")
    burn_in: Optional[int] = Field(None, ge=0, description="Chaos game points discarded per chain")
    seed: int = Field(0, ge=0, description="Symbol stream seed")
    chains: int = Field(1, ge=1, description="Independent chaos game chains")
    x0: Optional[List[float]] = Field(None, description="Starting point (chaos game, seeded affine and deterministic runs)")
    decimation: Optional[float] = Field(None, gt=0, description="Grid resolution for deterministic decimation")
    width: int = Field(default_factory=lambda: settings.DEFAULT_WIDTH, ge=1, description="Image width in pixels")
    height: int = Field(default_factory=lambda: settings.DEFAULT_HEIGHT, ge=1, description="Image height in pixels")
    viewport: Optional[List[float]] = Field(None, min_length=4, max_length=4, description="x0, x1, y0, y1")
    mode: RasterMode = Field(RasterMode.DENSITY, description="density or binary pixels")

    @field_validator('viewport')
    @classmethod
    def validate_viewport(cls, v):
        if v is not None and not (v[1] > v[0] and v[3] > v[2]):
            raise ValueError('viewport needs x1 > x0 and y1 > y0')
        return v


class GifsDefinition(BaseModel):
    """Top-level definition file"""
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "dimension": 2,
                "order": 2,
                "maps": [
                    {"matrices": [[[0.25, 0.0], [0.0, 0.25]], [[0.0, 0.2], [0.0, 0.2]]], "translation": [0.0, 0.0]},
                    {"matrices": [[[0.25, 0.0], [0.0, 0.25]], [[0.2, 0.0], [0.0, 0.1]]], "translation": [0.0, 0.5]}
                ],
                "render": {"algorithm": "chaos", "points": 100000, "seed": 42}
            }
        }
    )

    dimension: int = Field(..., ge=1, description="Ambient dimension d")
    order: int = Field(..., ge=1, description="Order m, the number of arguments of every map")
    maps: List[MapDefinition] = Field(..., min_length=1, description="The n maps")
    probabilities: Optional[List[float]] = Field(None, description="Symbol probabilities, positive and summing to 1")
    render: Optional[RenderOptions] = None

    @field_validator('probabilities')
    @classmethod
    def validate_probabilities(cls, v):
        if v is None:
            return v
        if any(p <= 0 for p in v):
            raise ValueError('probabilities must all be positive')
        if abs(sum(v) - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f'probabilities sum to {sum(v)!r}, expected 1')
        return v

    @model_validator(mode='after')
    def validate_shapes(self):
        d, m = self.dimension, self.order
        for index, f in enumerate(self.maps):
            if len(f.matrices) != m:
                raise ValueError(f'maps[{index}] has {len(f.matrices)} matrices, order is {m}')
            for matrix in f.matrices:
                if len(matrix) != d or any(len(row) != d for row in matrix):
                    raise ValueError(f'maps[{index}] matrices must be {d}x{d}')
            if len(f.translation) != d:
                raise ValueError(f'maps[{index}].translation has length {len(f.translation)}, dimension is {d}')
        if self.probabilities is not None and len(self.probabilities) != len(self.maps):
            raise ValueError(f'probabilities has {len(self.probabilities)} entries for {len(self.maps)} maps')
        if self.render is not None and self.render.x0 is not None and len(self.render.x0) != d:
            raise ValueError(f'render.x0 has length {len(self.render.x0)}, dimension is {d}')
        return self

    def to_system(self) -> GifsSystem:
        return GifsSystem(
            dimension=self.dimension,
            order=self.order,
            maps=tuple(AffineMap(f.matrices, f.translation) for f in self.maps),
            probabilities=tuple(self.probabilities) if self.probabilities is not None else None,
        )

    @classmethod
    def from_system(cls, G: GifsSystem, render: Optional[RenderOptions] = None) -> "GifsDefinition":
        return cls(
            dimension=G.dimension,
            order=G.order,
            maps=[
                MapDefinition(matrices=f.matrices.tolist(), translation=f.translation.tolist())
                for f in G.affine_maps()
            ],
            probabilities=list(G.probabilities) if G.probabilities is not None else None,
            render=render,
        )
