"""Non-learned construction heuristics: nearest neighbor and insertion."""

import logging

import numpy as np

from tspgcn.core import Tour, TspInstance, pairwise_distances
from tspgcn.errors import InvalidArgumentError
from tspgcn.oracle.solver import Solver
from tspgcn.utils.rng import SplitMix64

logger = logging.getLogger(__name__)

INSERTION_RULES = ("nearest", "random", "farthest")


def nearest_neighbor(instance: TspInstance, start: int = 0) -> Tour:
    n = instance.n
    if not 0 <= start < n:
        raise InvalidArgumentError(f"start node {start} outside [0, {n})")
    dist = pairwise_distances(instance)
    visited = np.zeros(n, dtype=bool)
    visited[start] = True
    order = [start]
    current = start
    for _ in range(n - 1):
        # argmin keeps the lower index on ties
        current = int(np.argmin(np.where(visited, np.inf, dist[current])))
        visited[current] = True
        order.append(current)
    return Tour(order)


def _initial_pair(dist, rule, shuffled):
    if rule == "random":
        return shuffled[0], shuffled[1]
    if rule == "farthest":
        flat = int(np.argmax(dist))
    else:
        masked = dist.copy()
        np.fill_diagonal(masked, np.inf)
        flat = int(np.argmin(masked))
    i, j = divmod(flat, dist.shape[0])
    return min(i, j), max(i, j)


def _cheapest_position(dist, order, city):
    best_position, best_delta = 0, np.inf
    for position in range(len(order)):
        a = order[position]
        b = order[(position + 1) % len(order)]
        delta = dist[a, city] + dist[city, b] - dist[a, b]
        if delta < best_delta:
            best_position, best_delta = position, delta
    return best_position + 1


def insertion(instance: TspInstance, rule: str = "farthest", seed: int = 0) -> Tour:
    """
    Insertion construction. The sub-tour is seeded by the rule (closest pair,
    diametral pair, or the first two cities of a seeded shuffle), which makes
    the first selected city close a 3-node sub-tour. Each next city is the one
    nearest to / farthest from the partial tour, or the next in the shuffle,
    and is inserted where it adds the least length.
    """
    if rule not in INSERTION_RULES:
        raise InvalidArgumentError(f"unknown insertion rule {rule!r}, expected one of {INSERTION_RULES}")
    n = instance.n
    dist = pairwise_distances(instance)
    shuffled = SplitMix64(seed).shuffled(range(n)) if rule == "random" else None

    first, second = _initial_pair(dist, rule, shuffled)
    order = [first, second]
    in_tour = np.zeros(n, dtype=bool)
    in_tour[[first, second]] = True
    to_tour = np.minimum(dist[first], dist[second])

    for step in range(2, n):
        if rule == "random":
            city = shuffled[step]
        elif rule == "nearest":
            city = int(np.argmin(np.where(in_tour, np.inf, to_tour)))
        else:
            city = int(np.argmax(np.where(in_tour, -np.inf, to_tour)))
        order.insert(_cheapest_position(dist, order, city), city)
        in_tour[city] = True
        to_tour = np.minimum(to_tour, dist[city])
    return Tour(order)


class NearestNeighborSolver(Solver):
    def __init__(self, start=0) -> None:
        super().__init__()
        self.name = "nearest_neighbor"
        self.start = start

    def solve(self, instance):
        return nearest_neighbor(instance, self.start)


class InsertionSolver(Solver):
    def __init__(self, rule, seed=0) -> None:
        super().__init__()
        if rule not in INSERTION_RULES:
            raise InvalidArgumentError(f"unknown insertion rule {rule!r}")
        self.name = f"{rule}_insertion"
        self.rule = rule
        self.seed = seed

    def solve(self, instance):
        return insertion(instance, self.rule, self.seed)

    def to_dict(self):
        return {**super().to_dict(), "rule": self.rule, "seed": self.seed}
