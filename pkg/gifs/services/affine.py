"""
Affine GIFS Closed Forms
Coefficient tables A^alpha_eps, B^alpha of the composed maps f_alpha, the B^alpha shortcut
and attractor approximations {f_alpha(x0, ..., x0) : alpha in the level-k code space}

Tables are dense arrays in N order: B[N] has shape (d,), A[N, P] has shape (d, d)
"""

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog

from gifs.core.config import settings
from gifs.core.exceptions import AddressError, BudgetExceededError, DimensionMismatchError
from gifs.models.system import GifsSystem, Point, PointCloud, as_point
from gifs.services.codespace import Address, address_count, block_size, child_index, encode_N, tree_size

logger = structlog.get_logger()


def full_table_entry_count(n: int, m: int, k: int) -> int:
    """B, A and C entries of level k: n^T(k) * (1 + (m + 1) * m^(k-1))"""
    return address_count(n, m, k) * (1 + (m + 1) * m ** (k - 1))


def shortcut_entry_count(n: int, m: int, k: int) -> int:
    """Entries the B^alpha shortcut holds for level k: m + n^T(k)"""
    return m + address_count(n, m, k)


def _check_budget(what: str, requested: int, budget: Optional[int]) -> None:
    budget = budget if budget is not None else settings.table_budget
    if requested > budget:
        logger.warning("Coefficient table refused", what=what, entries=requested, budget=budget)
        raise BudgetExceededError(what, requested, budget)


@dataclass
class LevelTables:
    """Coefficients of every level-k address"""
    k: int
    B: np.ndarray  # (n^T(k), d)
    A: np.ndarray  # (n^T(k), m^k, d, d)
    C: Optional[np.ndarray] = None  # (n^T(k), m^(k-1), d)


@dataclass
class CoefficientTables:
    """Tables by level; level 1 and the top level are always present"""
    n: int
    m: int
    dimension: int
    levels: Dict[int, LevelTables] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.levels)

    def level(self, k: int) -> LevelTables:
        if k not in self.levels:
            raise AddressError(f"Level {k} was not built (available: {sorted(self.levels)})")
        return self.levels[k]


def _level_digits(n: int, m: int, k: int) -> np.ndarray:
    """Dg[M, P'] = 0-based digit of block M at position P', for every level-k block"""
    size = block_size(m, k)
    blocks = np.arange(n ** size, dtype=np.int64)[:, None]
    powers = np.array([n ** (size - 1 - p) for p in range(size)], dtype=np.int64)
    return (blocks // powers) % n


def _next_level(G: GifsSystem, previous: LevelTables, k: int) -> LevelTables:
    A1, B1 = G.matrices, G.translations
    digits = _level_digits(G.n, G.order, k)
    # A[N' * blocks + M, P' * m + I] = A[N', P'] A^{Dg[M, P']}_I
    A = np.einsum("npab,qpibc->nqpiac", previous.A, A1[digits])
    # C[N' * blocks + M, P'] = A[N', P'] b^{Dg[M, P']}
    C = np.einsum("npab,qpb->nqpa", previous.A, B1[digits])
    B = previous.B[:, None, :] + C.sum(axis=2)
    count = previous.B.shape[0] * digits.shape[0]
    d = G.dimension
    return LevelTables(
        k=k,
        B=B.reshape(count, d),
        A=A.reshape(count, G.order ** k, d, d),
        C=C.reshape(count, digits.shape[1], d),
    )


def build_tables_full(
    G: GifsSystem,
    k_max: int,
    budget: Optional[int] = None,
    retain_history: bool = False
) -> CoefficientTables:
    """
    Level k is built from level k - 1 and level 1 only:
    A^alpha_(eps', I) = A^alpha'_eps' A^{alpha^k_(eps')}_I and B^alpha = B^alpha' + sum_eps' A^alpha'_eps' b^{alpha^k_(eps')}
    """
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    n, m = G.n, G.order
    for k in range(1, k_max + 1):
        _check_budget(f"Coefficient tables level {k}", full_table_entry_count(n, m, k), budget)

    started = time.perf_counter()
    first = LevelTables(k=1, B=np.array(G.translations), A=np.array(G.matrices))
    tables = CoefficientTables(n=n, m=m, dimension=G.dimension, levels={1: first})
    current = first
    for k in range(2, k_max + 1):
        current = _next_level(G, current, k)
        if not retain_history and k - 1 > 1:
            del tables.levels[k - 1]
        tables.levels[k] = current

    logger.info(
        "Coefficient tables built",
        algorithm="affine-full",
        level=k_max,
        addresses=address_count(n, m, k_max),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return tables


def eval_f_alpha_closed(tables: CoefficientTables, addr: Address, x: Sequence[Sequence[float]]) -> Point:
    """f_alpha(x) = sum_eps A[k, N, P(eps)] x_eps + B[k, N]"""
    if (addr.n, addr.m) != (tables.n, tables.m):
        raise AddressError(f"Address over n={addr.n}, m={addr.m} does not match the tables")
    level = tables.level(addr.k)
    points = np.asarray(x, dtype=float)
    expected = tables.m ** addr.k
    if points.shape != (expected, tables.dimension):
        raise DimensionMismatchError(
            f"Level-{addr.k} evaluation needs {expected} points of dimension {tables.dimension}, "
            f"got shape {points.shape}"
        )
    N = encode_N(addr)
    return np.einsum("pab,pb->a", level.A[N], points) + level.B[N]


def _shortcut_levels(
    G: GifsSystem,
    k_max: int,
    level_one: np.ndarray,
    offsets: Optional[np.ndarray],
    retain_history: bool
) -> Dict[int, np.ndarray]:
    """
    V[k, N] = sum_j A^{alpha^1}_j V[k-1, child_j(N)] (+ b_{alpha^1} when offsets are given)
    Trailing shape of level_one is (d,) for B values and (d, d) for S matrices
    Without history only level 1 and the newest level are kept
    """
    n, m = G.n, G.order
    levels = {1: level_one}
    for k in range(2, k_max + 1):
        previous = levels[k - 1]
        count = address_count(n, m, k)
        stride = n ** (tree_size(m, k) - 1)
        indices = np.arange(count, dtype=np.int64)
        children = [child_index(n, m, k, indices, j) for j in range(1, m + 1)]
        current = np.empty((count,) + level_one.shape[1:])
        for i in range(n):
            rows = slice(i * stride, (i + 1) * stride)
            total = np.zeros((stride,) + level_one.shape[1:])
            for j in range(m):
                total += np.einsum("ab,nb...->na...", G.matrices[i, j], previous[children[j][rows]])
            if offsets is not None:
                total += offsets[i]
            current[rows] = total
        if not retain_history and k - 1 > 1:
            del levels[k - 1]
        levels[k] = current
    return levels


def _check_shortcut_budget(
    what: str,
    G: GifsSystem,
    k_max: int,
    budget: Optional[int],
    retain_history: bool
) -> None:
    """Entries held: m + n^T(k_max), or every retained level with history"""
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    if retain_history:
        requested = G.order + sum(address_count(G.n, G.order, k) for k in range(1, k_max + 1))
    else:
        requested = shortcut_entry_count(G.n, G.order, k_max)
    _check_budget(f"{what} level {k_max}", requested, budget)


def build_B_shortcut(
    G: GifsSystem,
    k_max: int,
    budget: Optional[int] = None,
    retain_history: bool = False
) -> Dict[int, np.ndarray]:
    """
    Translation parts only: B[k, N] = sum_j A^{alpha^1}_j B[k-1, N(alpha(j))] + b_{alpha^1},
    with alpha^1 = floor(N / n^(T(k)-1)) + 1
    """
    _check_shortcut_budget("B shortcut", G, k_max, budget, retain_history)
    return _shortcut_levels(G, k_max, np.array(G.translations), G.translations, retain_history)


def build_S_shortcut(
    G: GifsSystem,
    k_max: int,
    budget: Optional[int] = None,
    retain_history: bool = False
) -> Dict[int, np.ndarray]:
    """Diagonal sums S[k, N] = sum_eps A^alpha_eps, so f_alpha(x0, ..., x0) = S x0 + B"""
    _check_shortcut_budget("S shortcut", G, k_max, budget, retain_history)
    return _shortcut_levels(G, k_max, G.matrices.sum(axis=1), None, retain_history)


def attractor_shortcut(G: GifsSystem, k: int, budget: Optional[int] = None) -> PointCloud:
    """{B^alpha : alpha in the level-k code space}"""
    started = time.perf_counter()
    cloud = PointCloud(build_B_shortcut(G, k, budget)[k], G.dimension)
    logger.info(
        "Shortcut attractor built",
        algorithm="affine-shortcut",
        level=k,
        points=len(cloud),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return cloud


def attractor_from_seed(
    G: GifsSystem,
    k: int,
    x0: Sequence[float],
    budget: Optional[int] = None
) -> PointCloud:
    """{S^alpha x0 + B^alpha : alpha in the level-k code space}"""
    x0 = as_point(x0, G.dimension)
    B = build_B_shortcut(G, k, budget)[k]
    S = build_S_shortcut(G, k, budget)[k]
    return PointCloud(S @ x0 + B, G.dimension)


def address_cells(
    G: GifsSystem,
    k: int,
    depth: int,
    budget: Optional[int] = None
) -> List[PointCloud]:
    """
    For each level-k address alpha in N order, the cloud {B^beta : beta extends alpha} at level depth;
    these are contiguous N-ranges of the depth-level B table
    """
    if depth < k:
        raise ValueError(f"depth {depth} must be at least the cell level {k}")
    B = build_B_shortcut(G, depth, budget)[depth]
    width = G.n ** (tree_size(G.order, depth) - tree_size(G.order, k))
    return [
        PointCloud(B[N * width:(N + 1) * width], G.dimension)
        for N in range(address_count(G.n, G.order, k))
    ]
