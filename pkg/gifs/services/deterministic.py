"""
GIFS Deterministic Algorithm
Shift-register iteration of the Hutchinson operator over m clouds, the simplified
single-cloud variant, grid decimation and the a-priori bounds used to check them
"""

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import structlog

from gifs.core.config import settings
from gifs.core.exceptions import ArityError, DimensionMismatchError, EmptyCloudError
from gifs.models.system import GifsSystem, PointCloud
from gifs.services.hutchinson import fixed_point, hutchinson, simplified_hutchinson

logger = structlog.get_logger()


@dataclass(frozen=True)
class DeterministicState:
    """Window (D_0, ..., D_{m-1}) of the last m clouds and the number of steps taken"""
    window: Tuple[PointCloud, ...]
    iteration: int = 0

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        if not self.window:
            raise ArityError("Deterministic state needs at least one cloud")
        dimension = self.window[0].dimension
        for position, cloud in enumerate(self.window):
            if cloud.is_empty:
                raise EmptyCloudError(f"Seed cloud D_{position} is empty")
            if cloud.dimension != dimension:
                raise DimensionMismatchError("Seed clouds disagree on dimension")

    @classmethod
    def from_seeds(cls, G: GifsSystem, seeds: Sequence[PointCloud]) -> "DeterministicState":
        if len(seeds) != G.order:
            raise ArityError(
                f"System of order {G.order} needs {G.order} seed clouds, got {len(seeds)}"
            )
        return cls(tuple(seeds))


def decimate(cloud: PointCloud, resolution: float) -> PointCloud:
    """
    Keep the first point of every occupied grid cell of side resolution
    The result is within resolution * sqrt(d) of the input in Hausdorff distance
    """
    if resolution <= 0:
        raise ValueError(f"Decimation resolution must be positive, got {resolution}")
    if cloud.is_empty:
        return cloud
    cells = np.floor(cloud.points / resolution).astype(np.int64)
    _, first = np.unique(cells, axis=0, return_index=True)
    return PointCloud(cloud.points[np.sort(first)], cloud.dimension)


def det_step(
    state: DeterministicState,
    G: GifsSystem,
    decimation: Optional[float] = None,
    budget: Optional[int] = None
) -> Tuple[DeterministicState, PointCloud]:
    """K := F(D_0, ..., D_{m-1}), then shift the window to (D_1, ..., D_{m-1}, K)"""
    K = hutchinson(G, state.window, budget=budget)
    if decimation is not None:
        K = decimate(K, decimation)
    assert not K.is_empty
    return DeterministicState(state.window[1:] + (K,), state.iteration + 1), K


def default_seeds(G: GifsSystem) -> Tuple[PointCloud, ...]:
    """m copies of the fixed point of f_1, which lies in the attractor"""
    seed = PointCloud.singleton(fixed_point(G, 1))
    return (seed,) * G.order


def det_run(
    G: GifsSystem,
    seeds: Optional[Sequence[PointCloud]] = None,
    iterations: Optional[int] = None,
    decimation: Optional[float] = None,
    budget: Optional[int] = None
) -> PointCloud:
    """
    Run the main loop `iterations` times and return the last K
    Step t produces K_{m+t-1} in the indexing K_{k+m} = F(K_k, ..., K_{m+k-1})
    """
    iterations = iterations if iterations is not None else settings.DETERMINISTIC_DEPTH
    if iterations < 1:
        raise ValueError(f"iterations must be at least 1, got {iterations}")
    state = DeterministicState.from_seeds(G, seeds if seeds is not None else default_seeds(G))

    started = time.perf_counter()
    for _ in range(iterations):
        state, K = det_step(state, G, decimation=decimation, budget=budget)
    logger.info(
        "Deterministic run complete",
        algorithm="deterministic",
        iterations=iterations,
        points=len(K),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return K


def det_run_simplified(
    G: GifsSystem,
    seed: Optional[PointCloud] = None,
    iterations: Optional[int] = None,
    decimation: Optional[float] = None,
    budget: Optional[int] = None
) -> PointCloud:
    """Iterate K -> f_1(K, ..., K) union ... union f_n(K, ..., K)"""
    iterations = iterations if iterations is not None else settings.DETERMINISTIC_DEPTH
    if iterations < 1:
        raise ValueError(f"iterations must be at least 1, got {iterations}")
    K = seed if seed is not None else default_seeds(G)[0]

    started = time.perf_counter()
    for _ in range(iterations):
        K = simplified_hutchinson(G, K, budget=budget)
        if decimation is not None:
            K = decimate(K, decimation)
    logger.info(
        "Deterministic run complete",
        algorithm="deterministic-simplified",
        iterations=iterations,
        points=len(K),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return K


def cardinality_bound(n: int, m: int, seed_size: int, k: int) -> int:
    """card(K_{m+k}) <= n^(2^k) * M^(2^k (m-1) + 1) for seeds of at most M points"""
    return n ** (2 ** k) * seed_size ** (2 ** k * (m - 1) + 1)


def convergence_bound(c: float, m: int, k: int, initial_distance: float) -> float:
    """c^floor(k/m) * H(K_0, A): distance of K_k from the attractor when all seeds equal K_0"""
    return c ** (k // m) * initial_distance
