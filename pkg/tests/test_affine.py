"""
Affine closed forms: full coefficient tables, the B shortcut and attractor approximations
"""

import numpy as np
import pytest

from gifs.core.config import settings
from gifs.core.exceptions import AddressError, BudgetExceededError, DimensionMismatchError, NonAffineSystemError
from gifs.models.system import AffineMap, GenericMap, GifsSystem, PointCloud
from gifs.services.affine import (
    address_cells,
    attractor_from_seed,
    attractor_shortcut,
    build_B_shortcut,
    build_S_shortcut,
    build_tables_full,
    eval_f_alpha_closed,
    full_table_entry_count,
    shortcut_entry_count,
)
from gifs.services.codespace import (
    Address,
    EpsilonPath,
    address_count,
    encode_N,
    encode_P,
    enumerate_paths,
    eval_f_alpha_recursive,
    tree_size,
)
from gifs.services.deterministic import det_run_simplified
from gifs.services.hutchinson import eval_map
from gifs.services.metric import hausdorff_distance
from gifs.services.validation import validate_contractive

FEASIBLE = [
    (n, m, k)
    for n in (1, 2, 3)
    for m in (1, 2, 3)
    for k in (1, 2, 3)
    if full_table_entry_count(n, m, k) <= settings.table_budget
]

SYSTEMS_PER_SPACE = 4

ORIGIN = PointCloud.singleton([0.0, 0.0])


def _random_address(rng, n, m, k) -> Address:
    return Address(n, m, k, tuple(rng.integers(1, n + 1, size=tree_size(m, k))))


def _product_matrix(G: GifsSystem, addr: Address, eps: EpsilonPath) -> np.ndarray:
    """A^alpha_eps as the ordered product along the path"""
    product = np.eye(G.dimension)
    for level in range(1, addr.k + 1):
        prefix = EpsilonPath(G.order, eps.digits[:level - 1])
        digit = addr.block(level).digits[encode_P(prefix)]
        product = product @ G.matrices[digit - 1, eps.digits[level - 1] - 1]
    return product


class TestEntryCounts:
    def test_full(self):
        assert full_table_entry_count(2, 2, 3) == 128 * 13
        assert full_table_entry_count(3, 1, 4) == 81 * 3

    def test_shortcut(self):
        assert shortcut_entry_count(2, 2, 3) == 130
        assert shortcut_entry_count(3, 3, 2) == 3 + 81

    def test_only_full_three_three_three_is_out_of_budget(self):
        assert (3, 3, 3) not in FEASIBLE
        assert len(FEASIBLE) == 26


class TestBuildTablesFull:
    def test_level_one_is_the_system(self, system_f):
        level = build_tables_full(system_f, 1).level(1)
        assert np.array_equal(level.A, system_f.matrices)
        assert np.array_equal(level.B, system_f.translations)

    def test_shapes(self, rng, random_affine_system):
        G = random_affine_system(rng, n=2, m=3, d=2)
        level = build_tables_full(G, 3).level(3)
        assert level.B.shape == (address_count(2, 3, 3), 2)
        assert level.A.shape == (address_count(2, 3, 3), 27, 2, 2)
        assert level.C.shape == (address_count(2, 3, 3), 9, 2)

    def test_matrices_are_path_products(self, rng, random_affine_system):
        G = random_affine_system(rng, n=2, m=2, d=2)
        level = build_tables_full(G, 3).level(3)
        for _ in range(20):
            alpha = _random_address(rng, 2, 2, 3)
            N = encode_N(alpha)
            for eps in enumerate_paths(2, 3):
                assert np.allclose(level.A[N, encode_P(eps)], _product_matrix(G, alpha, eps), atol=1e-14)

    def test_constant_maps(self):
        G = GifsSystem.affine([AffineMap.zero(2, [1.0, 2.0]), AffineMap.zero(2, [-1.0, 0.5])])
        level = build_tables_full(G, 3).level(3)
        first = np.array([Address.from_index(2, 2, 3, N).first for N in range(address_count(2, 2, 3))])
        assert np.array_equal(level.B, G.translations[first - 1])
        assert not level.A.any()

    def test_history(self, system_f):
        assert sorted(build_tables_full(system_f, 3).levels) == [1, 3]
        assert sorted(build_tables_full(system_f, 3, retain_history=True).levels) == [1, 2, 3]
        with pytest.raises(AddressError):
            build_tables_full(system_f, 3).level(2)

    def test_budget(self, rng, random_affine_system):
        G = random_affine_system(rng, n=3, m=3, d=1)
        with pytest.raises(BudgetExceededError):
            build_tables_full(G, 3)

    def test_needs_affine_system(self):
        f = GenericMap(order=1, dimension=1, evaluator=lambda x: 0.5 * x)
        G = GifsSystem(dimension=1, order=1, maps=(f,))
        with pytest.raises(NonAffineSystemError):
            build_tables_full(G, 2)


class TestEvalFAlphaClosed:
    @pytest.mark.parametrize("n,m,k", FEASIBLE)
    def test_matches_recursive_evaluation(self, rng, random_affine_system, n, m, k):
        for _ in range(SYSTEMS_PER_SPACE):
            d = int(rng.integers(1, 4))
            G = random_affine_system(rng, n=n, m=m, d=d)
            tables = build_tables_full(G, k)
            for _ in range(4):
                alpha = _random_address(rng, n, m, k)
                x = rng.normal(size=(m ** k, d))
                closed = eval_f_alpha_closed(tables, alpha, x)
                recursive = eval_f_alpha_recursive(G, alpha, x)
                assert np.abs(closed - recursive).max() <= 1e-9

    def test_random_system_count(self):
        assert SYSTEMS_PER_SPACE * len(FEASIBLE) >= 100

    def test_level_one_is_eval_map(self, system_g):
        tables = build_tables_full(system_g, 1)
        x = [[0.3, 0.1], [-0.2, 0.4]]
        for i in (1, 2):
            closed = eval_f_alpha_closed(tables, Address(2, 2, 1, (i,)), x)
            assert np.allclose(closed, eval_map(system_g.maps[i - 1], x))

    def test_zero_tuple_gives_translation_part(self, system_f):
        tables = build_tables_full(system_f, 2)
        alpha = Address(2, 2, 2, (2, 1, 2))
        value = eval_f_alpha_closed(tables, alpha, np.zeros((4, 2)))
        assert np.array_equal(value, tables.level(2).B[encode_N(alpha)])

    def test_wrong_tuple_length(self, system_f):
        tables = build_tables_full(system_f, 2)
        with pytest.raises(DimensionMismatchError):
            eval_f_alpha_closed(tables, Address(2, 2, 2, (1, 1, 1)), np.zeros((3, 2)))

    def test_level_not_built(self, system_f):
        tables = build_tables_full(system_f, 2)
        with pytest.raises(AddressError):
            eval_f_alpha_closed(tables, Address(2, 2, 3, (1,) * 7), np.zeros((8, 2)))


class TestShortcut:
    @pytest.mark.parametrize("n,m,k", FEASIBLE)
    def test_matches_full_tables(self, rng, random_affine_system, n, m, k):
        G = random_affine_system(rng, n=n, m=m, d=2)
        shortcut = build_B_shortcut(G, k)[k]
        full = build_tables_full(G, k).level(k).B
        assert np.allclose(shortcut, full, rtol=0, atol=1e-12)

    def test_matches_recursive_at_zero(self, rng, random_affine_system):
        G = random_affine_system(rng, n=2, m=3, d=2)
        B = build_B_shortcut(G, 3)[3]
        for _ in range(50):
            alpha = _random_address(rng, 2, 3, 3)
            expected = eval_f_alpha_recursive(G, alpha, np.zeros((27, 2)))
            assert np.allclose(B[encode_N(alpha)], expected, rtol=0, atol=1e-12)

    @pytest.mark.slow
    def test_largest_small_space_with_raised_budget(self, rng, random_affine_system):
        G = random_affine_system(rng, n=3, m=3, d=2)
        with pytest.raises(BudgetExceededError):
            build_B_shortcut(G, 3)
        B = build_B_shortcut(G, 3, budget=2_000_000)[3]
        assert len(B) == address_count(3, 3, 3)
        for _ in range(30):
            alpha = _random_address(rng, 3, 3, 3)
            expected = eval_f_alpha_recursive(G, alpha, np.zeros((27, 2)))
            assert np.allclose(B[encode_N(alpha)], expected, rtol=0, atol=1e-12)

    def test_diagonal_sums(self, rng, random_affine_system):
        G = random_affine_system(rng, n=2, m=2, d=2)
        S = build_S_shortcut(G, 3)[3]
        A = build_tables_full(G, 3).level(3).A
        assert np.allclose(S, A.sum(axis=1), atol=1e-14)

    def test_level_one(self, system_f):
        assert np.array_equal(build_B_shortcut(system_f, 1)[1], system_f.translations)

    def test_budget(self, system_f):
        with pytest.raises(BudgetExceededError):
            build_B_shortcut(system_f, 5)

    def test_history(self, system_f):
        assert sorted(build_B_shortcut(system_f, 4)) == [1, 4]
        assert sorted(build_S_shortcut(system_f, 3)) == [1, 3]
        history = build_B_shortcut(system_f, 3, retain_history=True)
        assert sorted(history) == [1, 2, 3]
        assert np.array_equal(history[2], build_B_shortcut(system_f, 2)[2])

    def test_history_counts_toward_budget(self, system_f):
        # level 3 alone holds 2 + 128 entries, levels 1 to 3 hold 2 + 2 + 8 + 128
        assert len(build_B_shortcut(system_f, 3, budget=135)[3]) == 128
        with pytest.raises(BudgetExceededError):
            build_B_shortcut(system_f, 3, budget=135, retain_history=True)


class TestAttractorShortcut:
    def test_level_one_is_translations(self, system_h):
        assert attractor_shortcut(system_h, 1) == PointCloud(system_h.translations, 2)

    def test_cardinality(self, system_g):
        for k in (1, 2, 3):
            assert len(attractor_shortcut(system_g, k)) <= address_count(2, 2, k)

    def test_geometric_refinement(self, system_f):
        c = validate_contractive(system_f).c
        clouds = [ORIGIN] + [attractor_shortcut(system_f, k) for k in range(1, 5)]
        initial = hausdorff_distance(clouds[0], clouds[1])
        for k in range(1, 4):
            assert hausdorff_distance(clouds[k], clouds[k + 1]) <= c ** k * initial + 1e-12

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_equals_simplified_iteration_from_origin(self, system_f, k):
        shortcut = attractor_shortcut(system_f, k)
        simplified = det_run_simplified(system_f, ORIGIN, iterations=k)
        assert hausdorff_distance(shortcut, simplified) < 1e-9

    def test_from_origin_seed(self, system_g):
        assert hausdorff_distance(attractor_from_seed(system_g, 3, [0.0, 0.0]), attractor_shortcut(system_g, 3)) == 0.0

    def test_from_seed_equals_simplified_iteration(self, system_g):
        x0 = [0.4, -0.3]
        seeded = attractor_from_seed(system_g, 3, x0)
        simplified = det_run_simplified(system_g, PointCloud.singleton(x0), iterations=3)
        assert hausdorff_distance(seeded, simplified) < 1e-9

    def test_from_seed_dimension(self, system_g):
        with pytest.raises(DimensionMismatchError):
            attractor_from_seed(system_g, 2, [0.0, 0.0, 0.0])


class TestAddressCells:
    def test_cells_partition_the_depth_cloud(self, system_h):
        cells = address_cells(system_h, 2, 3)
        assert len(cells) == address_count(3, 2, 2)
        assert cells[0].union(*cells[1:]) == attractor_shortcut(system_h, 3)

    def test_cell_is_image_of_sub_cloud(self, system_h):
        cells = address_cells(system_h, 1, 2)
        inner = attractor_shortcut(system_h, 1)
        for i, cell in enumerate(cells):
            f = system_h.maps[i]
            image = PointCloud.of([eval_map(f, [x, y]) for x in inner.points for y in inner.points])
            assert hausdorff_distance(cell, image) < 1e-12

    def test_depth_below_level(self, system_h):
        with pytest.raises(ValueError):
            address_cells(system_h, 3, 2)
