"""
Cross-algorithm comparison of attractor approximations
"""

from typing import Optional

from gifs.core.exceptions import DimensionMismatchError
from gifs.models.system import PointCloud
from gifs.schemas.reports import BoundingBox, CloudSummary, ComparisonReport
from gifs.services.metric import hausdorff_distance


def summarize_cloud(cloud: PointCloud, label: str) -> CloudSummary:
    low, high = cloud.bounding_box()
    return CloudSummary(
        label=label,
        cardinality=len(cloud),
        bounding_box=BoundingBox(minimum=low.tolist(), maximum=high.tolist()),
    )


def compare_runs(
    first: PointCloud,
    second: PointCloud,
    threshold: Optional[float] = None,
    first_label: str = "first",
    second_label: str = "second"
) -> ComparisonReport:
    """Hausdorff distance plus summaries; passed iff no threshold is given or distance <= threshold"""
    if first.dimension != second.dimension:
        raise DimensionMismatchError(
            f"Cannot compare clouds of dimension {first.dimension} and {second.dimension}"
        )
    distance = hausdorff_distance(first, second)
    return ComparisonReport(
        hausdorff_distance=distance,
        first=summarize_cloud(first, first_label),
        second=summarize_cloud(second, second_label),
        threshold=threshold,
        passed=threshold is None or distance <= threshold,
    )
