import math

import numpy as np
import pytest

from tspgcn.core import (
    AdjacencyTarget,
    Tour,
    TspInstance,
    canonical_tour,
    knn_indicator,
    pairwise_distances,
    tour_length,
    tour_to_adjacency,
)
from tspgcn.errors import InvalidArgumentError


class TestTspInstance:
    def test_rejects_fewer_than_three_nodes(self):
        with pytest.raises(InvalidArgumentError):
            TspInstance(((0.0, 0.0), (1.0, 1.0)))

    def test_rejects_points_outside_unit_square(self):
        with pytest.raises(InvalidArgumentError):
            TspInstance(((0.0, 0.0), (1.5, 0.0), (0.2, 0.2)))

    def test_coords_are_read_only(self, unit_square):
        assert unit_square.coords.shape == (4, 2)
        with pytest.raises(ValueError):
            unit_square.coords[0, 0] = 0.5

    def test_permuted_relabels_nodes(self, unit_square):
        permuted = unit_square.permuted([2, 0, 3, 1])
        assert permuted.points[0] == (1.0, 1.0)
        assert permuted.points[1] == (0.0, 0.0)


class TestTour:
    def test_rejects_repeated_node(self):
        with pytest.raises(InvalidArgumentError):
            Tour((0, 1, 1, 3))

    def test_edges_include_closing_edge(self):
        assert Tour((0, 2, 1)).edges() == [(0, 2), (2, 1), (1, 0)]

    def test_canonical_tour_rotates_and_orients(self):
        assert canonical_tour(Tour((2, 3, 0, 1))).order == (0, 1, 2, 3)
        assert canonical_tour(Tour((0, 3, 2, 1))).order == (0, 1, 2, 3)


class TestTourLength:
    def test_unit_square_perimeter(self, unit_square):
        assert tour_length(unit_square, Tour((0, 1, 2, 3))) == pytest.approx(4.0)

    def test_scaled_345_triangle(self, triangle_345):
        assert tour_length(triangle_345, Tour((0, 1, 2))) == pytest.approx(1.2)

    def test_mismatched_size(self, unit_square):
        with pytest.raises(InvalidArgumentError):
            tour_length(unit_square, Tour((0, 1, 2)))

    def test_matches_independent_recomputation(self, make_instances):
        (instance,) = make_instances(8, 1, seed=3)
        order = (0, 5, 2, 7, 1, 3, 6, 4)
        expected = sum(
            math.dist(instance.points[order[i]], instance.points[order[(i + 1) % 8]]) for i in range(8)
        )
        assert tour_length(instance, Tour(order)) == pytest.approx(expected, abs=1e-12)

    def test_invariant_under_rotation_and_reversal(self, make_instances):
        for seed, instance in enumerate(make_instances(9, 10, seed=21)):
            order = tuple(np.random.default_rng(seed).permutation(9).tolist())
            base = tour_length(instance, Tour(order))
            for shift in range(9):
                rotated = order[shift:] + order[:shift]
                assert tour_length(instance, Tour(rotated)) == pytest.approx(base, abs=1e-12)
                assert tour_length(instance, Tour(rotated[::-1])) == pytest.approx(base, abs=1e-12)


class TestPairwiseDistances:
    def test_diagonal_pair(self):
        dist = pairwise_distances(TspInstance(((0.0, 0.0), (1.0, 1.0), (0.5, 0.0))))
        assert dist[0, 1] == pytest.approx(1.414214, abs=1e-6)

    def test_symmetric_with_zero_diagonal(self, make_instances):
        (instance,) = make_instances(12, 1)
        dist = pairwise_distances(instance)
        assert np.array_equal(dist, dist.T)
        assert np.all(np.diag(dist) == 0.0)

    def test_triangle_inequality(self, make_instances):
        for instance in make_instances(10, 5, seed=8):
            dist = pairwise_distances(instance)
            # d[i, k] <= d[i, j] + d[j, k] for every triple
            through = dist[:, :, None] + dist[None, :, :]
            assert np.all(dist[:, None, :] <= through + 1e-12)


class TestKnnIndicator:
    def test_hand_example(self):
        instance = TspInstance(((0.0, 0.0), (0.1, 0.0), (0.9, 0.0)))
        row = knn_indicator(instance, 1)[1]
        assert list(row) == [1, 2, 0]

    def test_full_neighborhood(self, make_instances):
        (instance,) = make_instances(6, 1)
        indicator = knn_indicator(instance, 5)
        off = ~np.eye(6, dtype=bool)
        assert np.all(indicator[off] == 1)
        assert np.all(np.diag(indicator) == 2)

    def test_matches_sorted_rows(self, make_instances):
        (instance,) = make_instances(10, 1, seed=11)
        dist = pairwise_distances(instance)
        indicator = knn_indicator(instance, 3)
        for i in range(10):
            others = sorted((dist[i, j], j) for j in range(10) if j != i)
            nearest = {j for _, j in others[:3]}
            assert {j for j in range(10) if indicator[i, j] == 1} == nearest

    @pytest.mark.parametrize("k", [0, 4])
    def test_k_out_of_range(self, unit_square, k):
        with pytest.raises(InvalidArgumentError):
            knn_indicator(unit_square, k)


class TestTourToAdjacency:
    def test_triangle_is_fully_connected(self):
        entries = tour_to_adjacency(Tour((0, 1, 2))).entries
        assert np.array_equal(entries, 1 - np.eye(3, dtype=int))

    def test_square(self):
        entries = tour_to_adjacency(Tour((0, 1, 2, 3))).entries
        for i, j in [(0, 1), (1, 2), (2, 3), (3, 0)]:
            assert entries[i, j] == 1 and entries[j, i] == 1
        assert entries[0, 2] == 0 and entries[1, 3] == 0

    def test_rows_sum_to_two(self):
        entries = tour_to_adjacency(Tour((4, 0, 6, 2, 5, 1, 3))).entries
        assert np.all(entries.sum(axis=1) == 2)

    def test_target_validation(self):
        with pytest.raises(InvalidArgumentError):
            AdjacencyTarget(np.ones((3, 3), dtype=int))
