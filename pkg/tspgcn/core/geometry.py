"""
Geometric primitives for 2D Euclidean TSP: instances, tours, distances,
k-nearest-neighbor indicators and tour/adjacency conversions.

Everything here is a pure function of immutable inputs.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np

from tspgcn.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

SELF_EDGE = 2
NEIGHBOR_EDGE = 1
OTHER_EDGE = 0


@dataclass(frozen=True)
class TspInstance:
    points: Tuple[Tuple[float, float], ...]

    def __post_init__(self) -> None:
        points = tuple((float(x), float(y)) for x, y in self.points)
        if len(points) < 3:
            raise InvalidArgumentError(f"a TSP instance needs at least 3 nodes, got {len(points)}")
        for index, (x, y) in enumerate(points):
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise InvalidArgumentError(f"node {index} at ({x}, {y}) lies outside the unit square")
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def coords(self) -> np.ndarray:
        coords = np.array(self.points, dtype=np.float64)
        coords.setflags(write=False)
        return coords

    def permuted(self, permutation: Sequence[int]) -> "TspInstance":
        """Relabel nodes so that new node i is old node permutation[i]."""
        return TspInstance(tuple(self.points[p] for p in permutation))


@dataclass(frozen=True)
class Tour:
    order: Tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(i) for i in self.order)
        if sorted(order) != list(range(len(order))):
            raise InvalidArgumentError(f"tour {order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self):
        """Consecutive directed edges, closing edge included."""
        order = self.order
        return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


@dataclass(frozen=True)
class AdjacencyTarget:
    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidArgumentError(f"adjacency target must be square, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T) or np.any(np.diag(entries) != 0):
            raise InvalidArgumentError("adjacency target must be symmetric with a zero diagonal")
        if np.any(entries.sum(axis=1) != 2):
            raise InvalidArgumentError("every adjacency target row must sum to 2")


def is_valid_tour(instance: TspInstance, tour: Tour) -> bool:
    return tour.n == instance.n


def _check_tour(instance: TspInstance, tour: Tour) -> None:
    if not is_valid_tour(instance, tour):
        raise InvalidArgumentError(f"tour over {tour.n} nodes does not match instance with {instance.n} nodes")


def pairwise_distances(instance: TspInstance) -> np.ndarray:
    coords = instance.coords
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    np.fill_diagonal(dist, 0.0)
    return dist


def tour_length(instance: TspInstance, tour: Tour) -> float:
    _check_tour(instance, tour)
    coords = instance.coords
    order = np.asarray(tour.order)
    nxt = np.roll(order, -1)
    return float(np.sum(np.hypot(*(coords[nxt] - coords[order]).T)))


def tour_length_from_matrix(dist: np.ndarray, order: Sequence[int]) -> float:
    total = 0.0
    for i in range(len(order)):
        total += dist[order[i - 1], order[i]]
    return float(total)


def knn_indicator(instance: TspInstance, k: int) -> np.ndarray:
    """Row-wise k-NN membership: 2 on the diagonal, 1 for the k nearest, else 0."""
    n = instance.n
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k={k} outside [1, {n - 1}] for an instance with {n} nodes")
    dist = pairwise_distances(instance)
    np.fill_diagonal(dist, np.inf)
    # stable sort keeps lower indices first among equal distances
    nearest = np.argsort(dist, axis=1, kind="stable")[:, :k]
    indicator = np.zeros((n, n), dtype=np.int64)
    np.put_along_axis(indicator, nearest, NEIGHBOR_EDGE, axis=1)
    np.fill_diagonal(indicator, SELF_EDGE)
    return indicator


def tour_to_adjacency(tour: Tour) -> AdjacencyTarget:
    n = tour.n
    entries = np.zeros((n, n), dtype=np.int64)
    order = np.asarray(tour.order)
    nxt = np.roll(order, -1)
    entries[order, nxt] = 1
    entries[nxt, order] = 1
    return AdjacencyTarget(entries)


def canonical_tour(tour: Tour) -> Tour:
    """Rotate to start at node 0 and orient so order[1] < order[-1]."""
    order = tour.order
    start = order.index(0)
    rotated = order[start:] + order[:start]
    if len(rotated) > 2 and rotated[1] > rotated[-1]:
        rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
    return Tour(rotated)
