"""
GIFS Map Evaluation and Hutchinson Operators
Map evaluation, Lipschitz bounds, the set-valued Hutchinson operator and fixed points
"""

import itertools
from typing import Optional, Sequence

import numpy as np
import structlog

from gifs.core.config import settings
from gifs.core.exceptions import (
    ArityError,
    BudgetExceededError,
    ConvergenceError,
    DimensionMismatchError,
    EmptyCloudError,
    SingularSystemError,
)
from gifs.models.system import AffineMap, GifsMap, GifsSystem, Point, PointCloud, as_point

logger = structlog.get_logger()


def eval_map(f: GifsMap, args: Sequence[Sequence[float]]) -> Point:
    """
    Evaluate f(x_1, ..., x_m)
    Affine maps return sum_j A_j x_j + b, generic maps delegate to their evaluator
    """
    if len(args) != f.order:
        raise ArityError(
            f"Map of order {f.order} received {len(args)} arguments",
            {"expected": f.order, "actual": len(args)},
        )
    for position, point in enumerate(args, start=1):
        if len(point) != f.dimension:
            raise DimensionMismatchError(
                f"Argument {position} has dimension {len(point)}, map dimension is {f.dimension}",
                {"expected": f.dimension, "actual": len(point)},
            )
    return f.evaluate(np.asarray(args, dtype=float))


def lipschitz_bound(f: AffineMap) -> float:
    """Sum of Frobenius norms of the linear parts"""
    return float(sum(np.linalg.norm(matrix, "fro") for matrix in f.matrices))


def _check_clouds(G: GifsSystem, clouds: Sequence[PointCloud]) -> None:
    if len(clouds) != G.order:
        raise ArityError(
            f"Hutchinson operator of order {G.order} received {len(clouds)} clouds",
            {"expected": G.order, "actual": len(clouds)},
        )
    for position, cloud in enumerate(clouds, start=1):
        if cloud.is_empty:
            raise EmptyCloudError(f"Cloud {position} is empty")
        if cloud.dimension != G.dimension:
            raise DimensionMismatchError(
                f"Cloud {position} has dimension {cloud.dimension}, system dimension is {G.dimension}"
            )


def product_size(G: GifsSystem, clouds: Sequence[PointCloud]) -> int:
    """Number of map evaluations one Hutchinson step performs, n * prod |K_j|"""
    return G.n * int(np.prod([len(cloud) for cloud in clouds], dtype=object))


def _affine_images(G: GifsSystem, clouds: Sequence[PointCloud]) -> np.ndarray:
    d, m = G.dimension, G.order
    images = []
    for i in range(G.n):
        total = G.translations[i]
        for j, cloud in enumerate(clouds):
            shape = [1] * m + [d]
            shape[j] = len(cloud)
            total = total + (cloud.points @ G.matrices[i, j].T).reshape(shape)
        images.append(total.reshape(-1, d))
    return np.concatenate(images)


def _generic_images(G: GifsSystem, clouds: Sequence[PointCloud]) -> np.ndarray:
    images = [
        f.evaluate(np.stack(args))
        for f in G.maps
        for args in itertools.product(*(cloud.points for cloud in clouds))
    ]
    return np.asarray(images, dtype=float)


def hutchinson(
    G: GifsSystem,
    clouds: Sequence[PointCloud],
    budget: Optional[int] = None
) -> PointCloud:
    """
    F(K_1, ..., K_m) = union over i of f_i(K_1 x ... x K_m)
    Affine systems are evaluated by broadcasting the per-argument images over the product grid
    """
    _check_clouds(G, clouds)
    budget = budget if budget is not None else settings.cloud_budget
    size = product_size(G, clouds)
    if size > budget:
        logger.warning("Hutchinson step refused", product_size=size, budget=budget)
        raise BudgetExceededError("Hutchinson product", size, budget)

    images = _affine_images(G, clouds) if G.is_affine else _generic_images(G, clouds)
    return PointCloud(images, G.dimension)


def simplified_hutchinson(
    G: GifsSystem,
    cloud: PointCloud,
    budget: Optional[int] = None
) -> PointCloud:
    """f_1(K, ..., K) union ... union f_n(K, ..., K) over the full product K^m"""
    if cloud.is_empty:
        raise EmptyCloudError("Simplified Hutchinson operator needs a nonempty cloud")
    return hutchinson(G, [cloud] * G.order, budget=budget)


def fixed_point(
    G: GifsSystem,
    i: int,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None
) -> Point:
    """
    The unique x with f_i(x, ..., x) = x, for the 1-based map index i
    Affine maps are solved as (I - sum_j A_j)^-1 b, generic maps are iterated
    """
    if not 1 <= i <= G.n:
        raise ValueError(f"Map index {i} out of range 1..{G.n}")
    f = G.maps[i - 1]

    if isinstance(f, AffineMap):
        system_matrix = np.eye(G.dimension) - f.diagonal_matrix
        try:
            solution = np.linalg.solve(system_matrix, f.translation)
        except np.linalg.LinAlgError as e:
            raise SingularSystemError(f"I - sum of the matrices of map {i} is singular") from e
        return as_point(solution)

    tolerance = tolerance if tolerance is not None else settings.FIXED_POINT_TOLERANCE
    max_iterations = max_iterations if max_iterations is not None else settings.FIXED_POINT_MAX_ITERATIONS
    x = np.zeros(G.dimension)
    for iteration in range(1, max_iterations + 1):
        following = f.evaluate(np.tile(x, (G.order, 1)))
        step = float(np.linalg.norm(following - x))
        x = following
        if not np.all(np.isfinite(x)):
            break
        if step < tolerance:
            logger.debug("Fixed point iteration converged", map_index=i, iterations=iteration)
            return as_point(x)
    raise ConvergenceError(
        f"Fixed point iteration for map {i} did not converge in {max_iterations} iterations",
        {"map_index": i, "max_iterations": max_iterations},
    )


def attractor_radius(G: GifsSystem) -> float:
    """
    Radius r = max_i |b_i| / (1 - c) of an origin-centered ball containing the attractor
    Requires an affine system with c = max_i lipschitz_bound(f_i) < 1
    """
    c = max(lipschitz_bound(f) for f in G.affine_maps())
    if c >= 1:
        raise ConvergenceError(f"System is not contractive (c = {c:.6g})", {"c": c})
    return float(np.linalg.norm(G.translations, axis=1).max() / (1.0 - c))
