"""
GIFS Report Schemas
Pydantic models for the JSON reports printed by validate, compare and bench
"""

from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional


class BoundingBox(BaseModel):
    """Per-axis extremes of a cloud"""
    minimum: List[float]
    maximum: List[float]


class CloudSummary(BaseModel):
    """Cardinality and extent of one approximation"""
    label: str
    cardinality: int
    bounding_box: BoundingBox


class ComparisonReport(BaseModel):
    """Hausdorff distance between two approximations and the threshold verdict"""
    hausdorff_distance: float = Field(..., ge=0)
    first: CloudSummary
    second: CloudSummary
    threshold: Optional[float] = None
    passed: bool


class MapBoundResponse(BaseModel):
    """Lipschitz bound of one map"""
    index: int
    bound: Optional[float] = None
    is_affine: bool


class ValidationResponse(BaseModel):
    """Result of validating a definition file"""
    config: str
    dimension: int
    order: int
    maps: int
    c: Optional[float] = None
    passed: bool
    strict: bool
    bounds: List[MapBoundResponse]
    unverified: List[int] = []
    warnings: List[str] = []


class BenchResult(BaseModel):
    """Timing of one algorithm run"""
    algorithm: str
    parameters: Dict[str, Any]
    points: int
    elapsed_ms: float


class BenchReport(BaseModel):
    """Timings of every benchmarked algorithm"""
    config: str
    results: List[BenchResult]
    total_count: int
