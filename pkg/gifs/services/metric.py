"""
Hausdorff-Pompeiu distance on finite point clouds
"""

from scipy.spatial import cKDTree

from gifs.core.exceptions import DimensionMismatchError, EmptyCloudError
from gifs.models.system import PointCloud


def _check_pair(A: PointCloud, B: PointCloud) -> None:
    if A.is_empty or B.is_empty:
        raise EmptyCloudError("Hausdorff distance needs two nonempty clouds")
    if A.dimension != B.dimension:
        raise DimensionMismatchError(
            f"Cannot compare clouds of dimension {A.dimension} and {B.dimension}"
        )


def directed_distance(A: PointCloud, B: PointCloud) -> float:
    """max over a in A of the distance from a to its nearest point of B"""
    _check_pair(A, B)
    distances, _ = cKDTree(B.points).query(A.points)
    return float(distances.max())


def hausdorff_distance(A: PointCloud, B: PointCloud) -> float:
    """Symmetric Hausdorff-Pompeiu distance with Euclidean point distances"""
    return max(directed_distance(A, B), directed_distance(B, A))
