"""
GIFS Code Space
Address arithmetic: the tree-order bijection H, the N/M/P encodings, digit extraction,
sub-addresses and the recursive evaluator of composed maps f_alpha
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from gifs.core.config import settings
from gifs.core.exceptions import AddressError, BudgetExceededError, DimensionMismatchError
from gifs.models.system import GifsSystem, Point
from gifs.services.hutchinson import eval_map

logger = structlog.get_logger()

# Arbitrary-precision nonnegative integer; N, M and P values outgrow 64 bits quickly
BigIndex = int

IntOrArray = Union[int, np.ndarray]


def tree_size(m: int, k: int) -> int:
    """(m^k - 1)/(m - 1), the digit count of a level-k address; k when m = 1"""
    if k < 0:
        raise AddressError(f"Level must be nonnegative, got {k}")
    if m == 1:
        return k
    return (m ** k - 1) // (m - 1)


def block_size(m: int, k: int) -> int:
    """m^(k-1), the digit count of a level-k block"""
    return m ** (k - 1)


def _base_n_value(digits: Sequence[int], n: int) -> int:
    value = 0
    for digit in digits:
        value = value * n + (digit - 1)
    return value


def _base_n_digits(value: int, n: int, length: int) -> Tuple[int, ...]:
    if value < 0 or value >= n ** length:
        raise AddressError(f"Index {value} out of range for {length} base-{n} digits")
    digits = []
    for _ in range(length):
        value, remainder = divmod(value, n)
        digits.append(remainder + 1)
    return tuple(reversed(digits))


def _check_digits(digits: Tuple[int, ...], upper: int, what: str) -> None:
    for digit in digits:
        if not 1 <= digit <= upper:
            raise AddressError(f"{what} digit {digit} outside 1..{upper}")


@dataclass(frozen=True)
class EpsilonPath:
    """Path (eps_1, ..., eps_k) through the argument tree, each digit in 1..m"""
    m: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        _check_digits(self.digits, self.m, "Path")

    @property
    def k(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class LevelBlock:
    """Element of Omega_k stored flat, m^(k-1) digits in 1..n"""
    n: int
    m: int
    k: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.k < 1:
            raise AddressError(f"Block level must be at least 1, got {self.k}")
        if len(self.digits) != block_size(self.m, self.k):
            raise AddressError(
                f"Level-{self.k} block needs {block_size(self.m, self.k)} digits, got {len(self.digits)}"
            )
        _check_digits(self.digits, self.n, "Block")

    def chunk(self, i: int) -> Tuple[int, ...]:
        """Digits of the i-th component (1-based) of a block of level >= 2"""
        size = block_size(self.m, self.k - 1)
        return self.digits[(i - 1) * size:i * size]


@dataclass(frozen=True)
class Address:
    """
    Element alpha of the level-k code space, stored as its flattening:
    level l occupies positions [T(l-1), T(l)) with T = tree_size
    """
    n: int
    m: int
    k: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.n < 1 or self.m < 1 or self.k < 1:
            raise AddressError(f"Address needs n, m, k >= 1, got n={self.n}, m={self.m}, k={self.k}")
        if len(self.digits) != tree_size(self.m, self.k):
            raise AddressError(
                f"Level-{self.k} address needs {tree_size(self.m, self.k)} digits, got {len(self.digits)}"
            )
        _check_digits(self.digits, self.n, "Address")

    @classmethod
    def from_index(cls, n: int, m: int, k: int, N: BigIndex) -> "Address":
        """Decode N(alpha, k) back into an address"""
        return cls(n, m, k, _base_n_digits(N, n, tree_size(m, k)))

    @classmethod
    def from_blocks(cls, blocks: Sequence[LevelBlock]) -> "Address":
        first = blocks[0]
        digits = tuple(itertools.chain.from_iterable(block.digits for block in blocks))
        return cls(first.n, first.m, len(blocks), digits)

    @property
    def first(self) -> int:
        """alpha^1, the outermost map index"""
        return self.digits[0]

    def block(self, level: int) -> LevelBlock:
        if not 1 <= level <= self.k:
            raise AddressError(f"Level {level} outside 1..{self.k}")
        start = tree_size(self.m, level - 1)
        return LevelBlock(self.n, self.m, level, self.digits[start:tree_size(self.m, level)])

    @property
    def blocks(self) -> List[LevelBlock]:
        return [self.block(level) for level in range(1, self.k + 1)]

    def extend(self, block: LevelBlock) -> "Address":
        """alpha followed by a level-(k+1) block"""
        if (block.n, block.m, block.k) != (self.n, self.m, self.k + 1):
            raise AddressError(f"Cannot extend a level-{self.k} address by a level-{block.k} block")
        return Address(self.n, self.m, self.k + 1, self.digits + block.digits)


class IndexPair(NamedTuple):
    """Position (j, k) in the chaos-game tree order"""
    j: int
    k: int


def _check_pair(p: IndexPair, m: int) -> None:
    if p.j < 1 or p.k < 1:
        raise AddressError(f"Index pair {tuple(p)} must have positive entries")
    if m == 1 and p.j != 1:
        raise AddressError(f"Order-one tree order only reaches pairs (1, k), got {tuple(p)}")


def h_index(p: IndexPair, m: int) -> int:
    """
    Value of the tree-order bijection H at (j, k)
    With J = j * m^(k-1) the leaf below (j, k): H = J + sum_{l>=2} floor((J-1)/m^(l-1)) + k - 1,
    the leaves up to J, the completed inner nodes before it and the chain of k - 1 ancestors
    """
    _check_pair(p, m)
    if m == 1:
        return p.k
    leaf = p.j * m ** (p.k - 1)
    inner = 0
    power = m
    while power <= leaf - 1:
        inner += (leaf - 1) // power
        power *= m
    return leaf + inner + p.k - 1


def h_successor(p: IndexPair, m: int) -> IndexPair:
    """The pair whose H value is one larger"""
    _check_pair(p, m)
    if p.j % m != 0:
        return IndexPair(m ** (p.k - 1) * p.j + 1, 1)
    return IndexPair(p.j // m, p.k + 1)


def h_pairs(m: int, start: IndexPair = IndexPair(1, 1)) -> Iterator[IndexPair]:
    """Endless stream of pairs in H order, starting at start"""
    p = start
    while True:
        yield p
        p = h_successor(p, m)


def h_inverse(i: int, m: int) -> IndexPair:
    """The pair with H value i, found by iterating the successor rule from (1, 1)"""
    if i < 1:
        raise AddressError(f"H values start at 1, got {i}")
    return next(itertools.islice(h_pairs(m), i - 1, None))


def encode_P(eps: EpsilonPath, m: Optional[int] = None) -> BigIndex:
    """P(eps, k) = sum_i (eps_i - 1) * m^(k-i)"""
    m = m if m is not None else eps.m
    value = 0
    for digit in eps.digits:
        value = value * m + (digit - 1)
    return value


def encode_M(block: LevelBlock) -> BigIndex:
    """Base-n value of the block digits shifted to 0..n-1"""
    return _base_n_value(block.digits, block.n)


def encode_N(addr: Address) -> BigIndex:
    """Base-n value of the flattened address digits shifted to 0..n-1"""
    return _base_n_value(addr.digits, addr.n)


def digit_at(block: LevelBlock, eps: EpsilonPath) -> int:
    """
    alpha_(eps_1, ..., eps_{k-1}) read arithmetically from M(alpha, k):
    floor(M / n^(m^(k-1) - 1 - P(eps, k-1))) mod n + 1
    """
    if block.k < 2:
        raise AddressError("Digit lookup needs a block of level at least 2")
    if eps.k != block.k - 1:
        raise AddressError(f"Level-{block.k} block needs a path of length {block.k - 1}, got {eps.k}")
    if eps.m != block.m:
        raise AddressError(f"Path over 1..{eps.m} does not index a block of order {block.m}")
    exponent = block_size(block.m, block.k) - 1 - encode_P(eps)
    return (encode_M(block) // block.n ** exponent) % block.n + 1


def subaddress(addr: Address, i: int) -> Address:
    """alpha(i) = (alpha^2_i, ..., alpha^k_i), the i-th branch one level down"""
    if addr.k < 2:
        raise AddressError("Sub-addresses need a level of at least 2")
    if not 1 <= i <= addr.m:
        raise AddressError(f"Branch {i} outside 1..{addr.m}")
    digits = tuple(
        itertools.chain.from_iterable(addr.block(level).chunk(i) for level in range(2, addr.k + 1))
    )
    return Address(addr.n, addr.m, addr.k - 1, digits)


def child_index(n: int, m: int, k: int, N: IntOrArray, j: int) -> IntOrArray:
    """
    N(alpha(j), k-1) computed from N(alpha, k) alone:
    sum over i = 2..k of M(alpha^i_j, i-1) * n^(T(k-1) - T(i-1)), where the chunk value is
    floor(N / n^(T(k) - T(i-1) - j * m^(i-2))) mod n^(m^(i-2))
    Works on Python ints and on numpy integer arrays
    """
    if k < 2:
        raise AddressError("Child indices need a level of at least 2")
    if not 1 <= j <= m:
        raise AddressError(f"Branch {j} outside 1..{m}")
    total_digits = tree_size(m, k)
    child_digits = tree_size(m, k - 1)
    result = 0
    for i in range(2, k + 1):
        chunk = block_size(m, i - 1)
        shift = total_digits - tree_size(m, i - 1) - j * chunk
        value = (N // n ** shift) % n ** chunk
        result = result + value * n ** (child_digits - tree_size(m, i - 1))
    return result


def child_N(addr: Address, j: int) -> BigIndex:
    """N(alpha(j), k-1) from N(alpha, k)"""
    return child_index(addr.n, addr.m, addr.k, encode_N(addr), j)


def address_count(n: int, m: int, k: int) -> int:
    """Cardinality n^T(k) of the level-k code space"""
    return n ** tree_size(m, k)


def _check_enumeration(what: str, count: int, budget: Optional[int]) -> None:
    budget = budget if budget is not None else settings.enumeration_budget
    if count > budget:
        logger.warning("Enumeration refused", what=what, count=count, budget=budget)
        raise BudgetExceededError(what, count, budget)


def enumerate_addresses(n: int, m: int, k: int, budget: Optional[int] = None) -> Iterator[Address]:
    """All level-k addresses in increasing N order"""
    _check_enumeration("Address enumeration", address_count(n, m, k), budget)
    for digits in itertools.product(range(1, n + 1), repeat=tree_size(m, k)):
        yield Address(n, m, k, digits)


def enumerate_blocks(n: int, m: int, k: int, budget: Optional[int] = None) -> Iterator[LevelBlock]:
    """All level-k blocks in increasing M order"""
    _check_enumeration("Block enumeration", n ** block_size(m, k), budget)
    for digits in itertools.product(range(1, n + 1), repeat=block_size(m, k)):
        yield LevelBlock(n, m, k, digits)


def enumerate_paths(m: int, k: int) -> Iterator[EpsilonPath]:
    """All paths of length k in increasing P order"""
    for digits in itertools.product(range(1, m + 1), repeat=k):
        yield EpsilonPath(m, digits)


def eval_f_alpha_recursive(G: GifsSystem, addr: Address, x: Sequence[Sequence[float]]) -> Point:
    """
    f_alpha(x_1, ..., x_m) = f_{alpha^1}(f_{alpha(1)}(x_1), ..., f_{alpha(m)}(x_m))
    x is the flat tuple of m^k points ordered by P(eps, k)
    """
    if (addr.n, addr.m) != (G.n, G.order):
        raise AddressError(
            f"Address over n={addr.n}, m={addr.m} does not index a system with n={G.n}, m={G.order}"
        )
    points = np.asarray(x, dtype=float)
    expected = G.order ** addr.k
    if points.ndim != 2 or len(points) != expected:
        raise DimensionMismatchError(
            f"Level-{addr.k} evaluation needs {expected} points, got {len(points)}",
            {"expected": expected, "actual": len(points)},
        )
    return _eval_f_alpha(G, addr, points)


def _eval_f_alpha(G: GifsSystem, addr: Address, points: np.ndarray) -> Point:
    f = G.maps[addr.first - 1]
    if addr.k == 1:
        return eval_map(f, points)
    chunk = len(points) // G.order
    args = [
        _eval_f_alpha(G, subaddress(addr, i), points[(i - 1) * chunk:i * chunk])
        for i in range(1, G.order + 1)
    ]
    return eval_map(f, args)
