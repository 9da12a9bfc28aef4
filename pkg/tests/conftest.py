"""
Shared fixtures: the sample systems and seeded random affine systems
"""

from pathlib import Path

import numpy as np
import pytest

from gifs.core.logging import configure_logging
from gifs.models.system import AffineMap, GifsSystem

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def _system(maps):
    return GifsSystem.affine([AffineMap(np.array(matrices), np.array(b)) for matrices, b in maps])


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging(level="WARNING", json_output=False)


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def system_f() -> GifsSystem:
    """Two maps of order two on the plane, c ~ 0.513"""
    return _system([
        ([[[0.1, 0.0], [0.0, 0.16]], [[0.15, 0.04], [-0.04, 0.15]]], [0.0, 1.6]),
        ([[[0.1, -0.15], [0.15, 0.15]], [[-0.1, 0.15], [0.15, 0.0]]], [1.6, 0.07]),
    ])


@pytest.fixture
def system_g() -> GifsSystem:
    return _system([
        ([[[0.05, 0.0], [0.1, 0.2]], [[0.02, 0.1], [0.08, 0.15]]], [0.635, 0.5]),
        ([[[0.15, 0.0], [0.15, 0.15]], [[0.05, 0.1], [0.0, 0.0]]], [0.5, 0.45]),
    ])


@pytest.fixture
def system_h() -> GifsSystem:
    """Three maps of order two; h_1 fixes the origin"""
    quarter = [[0.25, 0.0], [0.0, 0.25]]
    return _system([
        ([quarter, [[0.0, 0.2], [0.0, 0.2]]], [0.0, 0.0]),
        ([quarter, [[0.2, 0.0], [0.0, 0.1]]], [0.0, 0.5]),
        ([quarter, [[0.1, 0.0], [0.0, 0.2]]], [0.5, 0.0]),
    ])


@pytest.fixture
def sierpinski() -> GifsSystem:
    """Classical order-one gasket, ratio 1/2"""
    half = [[[0.5, 0.0], [0.0, 0.5]]]
    return _system([
        (half, [0.0, 0.0]),
        (half, [0.5, 0.0]),
        (half, [0.25, np.sqrt(3) / 4]),
    ])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_affine_system():
    """Factory for random systems; entries of every matrix drawn from [-scale, scale]"""
    def factory(rng: np.random.Generator, n: int, m: int, d: int, scale: float = 0.3) -> GifsSystem:
        maps = [
            AffineMap(rng.uniform(-scale, scale, size=(m, d, d)), rng.uniform(-1.0, 1.0, size=d))
            for _ in range(n)
        ]
        return GifsSystem.affine(maps)
    return factory


@pytest.fixture
def contractive_affine_system(random_affine_system):
    """Random system whose Frobenius bound stays below 0.9"""
    def factory(rng: np.random.Generator, n: int, m: int, d: int) -> GifsSystem:
        return random_affine_system(rng, n, m, d, scale=0.9 / (m * d))
    return factory


@pytest.fixture
def shortcut_reference():
    """
    Factory for (R, tol): the level-k shortcut cloud and a bound on its distance to the attractor,
    H(R, A) <= c^k * r since R = F~^k({0}) and A lies in the ball of radius r
    """
    from gifs.services.affine import attractor_shortcut
    from gifs.services.hutchinson import attractor_radius
    from gifs.services.validation import validate_contractive

    def factory(G: GifsSystem, k: int):
        c = validate_contractive(G).c
        return attractor_shortcut(G, k), c ** k * attractor_radius(G)
    return factory
