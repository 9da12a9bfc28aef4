"""
Domain types: points, maps, systems and point clouds
"""

import numpy as np
import pytest

from gifs.core.exceptions import ArityError, DimensionMismatchError, EmptyCloudError, NonAffineSystemError
from gifs.models.enums import Algorithm
from gifs.models.system import AffineMap, GenericMap, GifsSystem, PointCloud, as_point


class TestAsPoint:
    def test_read_only(self):
        point = as_point([1.0, 2.0])
        with pytest.raises(ValueError):
            point[0] = 3.0

    def test_dimension(self):
        with pytest.raises(DimensionMismatchError):
            as_point([1.0, 2.0], dimension=3)

    def test_finite(self):
        with pytest.raises(ValueError):
            as_point([np.nan, 0.0])


class TestAffineMap:
    def test_shapes(self):
        f = AffineMap(np.zeros((3, 2, 2)), np.ones(2))
        assert (f.order, f.dimension) == (3, 2)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            AffineMap(np.zeros((1, 2, 3)), np.zeros(2))

    def test_rejects_translation_length(self):
        with pytest.raises(DimensionMismatchError):
            AffineMap(np.zeros((1, 2, 2)), np.zeros(3))

    def test_diagonal_matrix(self, system_h):
        assert np.allclose(system_h.maps[0].diagonal_matrix, [[0.25, 0.2], [0.0, 0.45]])


class TestGifsSystem:
    def test_stacked_coefficients(self, system_h):
        assert system_h.matrices.shape == (3, 2, 2, 2)
        assert system_h.translations.shape == (3, 2)
        assert system_h.n == 3

    def test_mixed_orders(self):
        with pytest.raises(ArityError):
            GifsSystem.affine([AffineMap.zero(2, [0.0]), AffineMap.zero(3, [0.0])])

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            GifsSystem.affine([AffineMap.zero(2, [0.0]), AffineMap.zero(2, [0.0, 0.0])])

    def test_probabilities(self):
        maps = [AffineMap.zero(1, [0.0]), AffineMap.zero(1, [1.0])]
        assert GifsSystem.affine(maps, probabilities=[0.25, 0.75]).probabilities == (0.25, 0.75)
        with pytest.raises(ValueError):
            GifsSystem.affine(maps, probabilities=[0.5, 0.6])
        with pytest.raises(ValueError):
            GifsSystem.affine(maps, probabilities=[1.0, 0.0])

    def test_generic_system_has_no_matrices(self):
        f = GenericMap(order=1, dimension=1, evaluator=lambda x: x)
        G = GifsSystem(dimension=1, order=1, maps=(f,))
        assert not G.is_affine
        with pytest.raises(NonAffineSystemError):
            G.matrices


class TestPointCloud:
    def test_duplicates_collapse(self):
        cloud = PointCloud.of([[1.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
        assert len(cloud) == 2
        assert cloud.points.tolist() == [[0.0, 0.0], [1.0, 0.0]]

    def test_order_does_not_matter(self):
        assert PointCloud.of([[1.0, 2.0], [3.0, 4.0]]) == PointCloud.of([[3.0, 4.0], [1.0, 2.0]])

    def test_union_and_subset(self):
        a = PointCloud.of([[0.0, 0.0]])
        b = PointCloud.of([[1.0, 1.0], [0.0, 0.0]])
        assert a.union(b) == b
        assert a.issubset(b)
        assert not b.issubset(a)

    def test_bounding_box_and_extent(self):
        cloud = PointCloud.of([[0.0, 1.0], [3.0, 5.0]])
        low, high = cloud.bounding_box()
        assert low.tolist() == [0.0, 1.0]
        assert high.tolist() == [3.0, 5.0]
        assert cloud.extent == 5.0

    def test_empty(self):
        empty = PointCloud(np.empty((0, 2)), 2)
        assert empty.is_empty
        with pytest.raises(EmptyCloudError):
            empty.bounding_box()

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatchError):
            PointCloud(np.zeros((3, 2)), 3)


def test_affine_algorithms():
    assert Algorithm.AFFINE_FULL.needs_affine
    assert Algorithm.AFFINE_SHORTCUT.needs_affine
    assert not Algorithm.CHAOS.needs_affine
