"""
GIFS Chaos Game
Generates the tree-ordered sequence (x_i) with m bounded level-lists z_1..z_m;
x_{H(j,k)} = f_gamma(x_{H(mj-m+1,k-1)}, ..., x_{H(mj,k-1)})
"""

import time
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from gifs.core.config import settings
from gifs.models.system import GifsSystem, Point, PointCloud, as_point
from gifs.services.codespace import IndexPair, h_successor
from gifs.services.hutchinson import eval_map, fixed_point

logger = structlog.get_logger()

Seed = Union[int, np.random.SeedSequence]


class SymbolStream:
    """
    Symbols gamma in 1..n drawn from a PCG64 generator in fixed-size blocks
    Uniform unless probabilities are given; equal seeds give equal streams
    """

    def __init__(
        self,
        n: int,
        seed: Seed,
        probabilities: Optional[Sequence[float]] = None,
        block_size: Optional[int] = None
    ):
        self.n = n
        self.probabilities = np.asarray(probabilities, dtype=float) if probabilities is not None else None
        self.block_size = block_size or settings.SYMBOL_BLOCK_SIZE
        self.generator = np.random.Generator(np.random.PCG64(seed))
        self._block = np.empty(0, dtype=np.int64)
        self._position = 0

    def _refill(self) -> None:
        if self.probabilities is None:
            self._block = self.generator.integers(1, self.n + 1, size=self.block_size)
        else:
            self._block = self.generator.choice(self.n, size=self.block_size, p=self.probabilities) + 1
        self._position = 0

    def next_symbol(self) -> int:
        if self._position >= len(self._block):
            self._refill()
        symbol = int(self._block[self._position])
        self._position += 1
        return symbol

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next_symbol()


@dataclass(frozen=True)
class RngSpec:
    """Seed of the symbol stream; identical specs give bit-identical point streams"""
    seed: int = 0
    block_size: Optional[int] = None

    def stream(self, G: GifsSystem, seed: Optional[Seed] = None) -> SymbolStream:
        return SymbolStream(
            G.n,
            seed if seed is not None else self.seed,
            probabilities=G.probabilities,
            block_size=self.block_size,
        )

    def chain_seeds(self, chains: int) -> List[Seed]:
        """Independent child seeds for parallel chains; a single chain keeps the root seed"""
        if chains == 1:
            return [self.seed]
        return np.random.SeedSequence(self.seed).spawn(chains)


class ChaosEmission(NamedTuple):
    """One emitted point x[j, k] with the symbol that produced it"""
    pair: IndexPair
    symbol: int
    point: Point


@dataclass
class ChaosState:
    """
    Current pair (j, k) and the level-lists: z[i-1][l] holds the latest x[j', l] with
    j' = i (mod m, residue 0 read as m); every z[i-1][0] holds the base point x'
    """
    pair: IndexPair
    z: List[List[Point]]
    symbols: SymbolStream
    count: int = 0
    last: Optional[Point] = None
    last_symbol: Optional[int] = None
    max_level_read: int = 0

    @property
    def order(self) -> int:
        return len(self.z)


def _residue(j: int, m: int) -> int:
    remainder = j % m
    return m if remainder == 0 else remainder


def _store(state: ChaosState, level: int, point: Point) -> None:
    column = state.z[_residue(state.pair.j, state.order) - 1]
    if level < len(column):
        column[level] = point
    else:
        column.append(point)


def _emit(state: ChaosState, G: GifsSystem) -> Point:
    level = state.pair.k
    symbol = state.symbols.next_symbol()
    point = eval_map(G.maps[symbol - 1], [column[level - 1] for column in state.z])
    _store(state, level, point)
    state.count += 1
    state.last = point
    state.last_symbol = symbol
    state.max_level_read = max(state.max_level_read, level - 1)
    return point


def chaos_init(G: GifsSystem, x0: Sequence[float], rng: RngSpec, seed: Optional[Seed] = None) -> ChaosState:
    """Position at (1, 1) with every z_i[0] = x0 and emit x[1, 1] = f_gamma(x0, ..., x0)"""
    x0 = as_point(x0, G.dimension)
    state = ChaosState(
        pair=IndexPair(1, 1),
        z=[[x0] for _ in range(G.order)],
        symbols=rng.stream(G, seed),
    )
    _emit(state, G)
    return state


def chaos_step(state: ChaosState, G: GifsSystem) -> Tuple[ChaosState, Point]:
    """
    Advance (j, k) by the successor rule, emit x[j, k] = f_gamma(z_1[k-1], ..., z_m[k-1]) and
    store it in z_i[k]; after a step up to a pair with j mod m != 0 the new point becomes x'
    """
    previous = state.pair
    state.pair = h_successor(previous, G.order)
    point = _emit(state, G)
    ascended = state.pair.k > previous.k
    if ascended and state.pair.j % G.order != 0:
        for column in state.z:
            column[0] = point
    return state, point


def chaos_points(
    G: GifsSystem,
    x0: Sequence[float],
    count: int,
    rng: RngSpec,
    seed: Optional[Seed] = None
) -> Iterator[ChaosEmission]:
    """Stream the first `count` emissions in H order"""
    if count < 1:
        return
    state = chaos_init(G, x0, rng, seed)
    yield ChaosEmission(state.pair, state.last_symbol, state.last)
    for _ in range(count - 1):
        state, point = chaos_step(state, G)
        yield ChaosEmission(state.pair, state.last_symbol, point)


def _run_chain(
    G: GifsSystem,
    x0: Point,
    count: int,
    burn_in: int,
    rng: RngSpec,
    seed: Seed
) -> np.ndarray:
    kept = np.empty((count - burn_in, G.dimension))
    for index, emission in enumerate(chaos_points(G, x0, count, rng, seed)):
        if index >= burn_in:
            kept[index - burn_in] = emission.point
    return kept


def chaos_run(
    G: GifsSystem,
    x0: Optional[Sequence[float]] = None,
    count: Optional[int] = None,
    burn_in: Optional[int] = None,
    rng: Optional[RngSpec] = None,
    chains: int = 1
) -> PointCloud:
    """
    Emit `count` points per chain, drop the first `burn_in` and return the union
    Without x0 the chain starts at the fixed point of f_1, which lies in the attractor,
    so no burn-in is needed by default
    """
    if x0 is None:
        x0 = fixed_point(G, 1)
        burn_in = burn_in if burn_in is not None else 0
    else:
        x0 = as_point(x0, G.dimension)
        burn_in = burn_in if burn_in is not None else settings.CHAOS_BURN_IN
    count = count if count is not None else settings.CHAOS_POINTS
    rng = rng or RngSpec()
    if burn_in < 0 or count <= burn_in:
        raise ValueError(f"Need count > burn_in >= 0, got count={count}, burn_in={burn_in}")
    if chains < 1:
        raise ValueError(f"chains must be at least 1, got {chains}")

    started = time.perf_counter()
    clouds = [_run_chain(G, x0, count, burn_in, rng, seed) for seed in rng.chain_seeds(chains)]
    cloud = PointCloud(np.concatenate(clouds), G.dimension)
    logger.info(
        "Chaos game complete",
        algorithm="chaos",
        points=count,
        burn_in=burn_in,
        chains=chains,
        distinct=len(cloud),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return cloud
