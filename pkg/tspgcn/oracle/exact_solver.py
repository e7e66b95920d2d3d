"""
Exact TSP oracles: brute-force enumeration and the Held-Karp subset DP.

Both return canonical tours (start at node 0, order[1] < order[-1]) so that
their lengths agree bit for bit whenever they find the same cycle.
"""

import itertools
import logging
from functools import lru_cache

import numpy as np

from tspgcn.core import Tour, TspInstance, canonical_tour, pairwise_distances, tour_length_from_matrix
from tspgcn.errors import SizeLimitError
from tspgcn.oracle.solver import Solver

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 9
# (2**17 subsets x 17 end nodes) float64 table stays under 40 MB
HELD_KARP_DEFAULT_CAP = 18


def solve_brute_force(instance: TspInstance) -> Tour:
    n = instance.n
    if n > BRUTE_FORCE_MAX_N:
        raise SizeLimitError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    dist = pairwise_distances(instance)
    best_length = np.inf
    best_order = None
    for perm in itertools.permutations(range(1, n)):
        # each undirected cycle once, in canonical orientation
        if perm[0] > perm[-1]:
            continue
        order = (0,) + perm
        length = tour_length_from_matrix(dist, order)
        if length < best_length:
            best_length = length
            best_order = order
    return Tour(best_order)


@lru_cache(maxsize=None)
def _masks_by_size(m):
    masks = np.arange(1 << m, dtype=np.int64)
    sizes = np.zeros_like(masks)
    for bit in range(m):
        sizes += (masks >> bit) & 1
    groups = []
    for size in range(m + 1):
        group = masks[sizes == size]
        group.setflags(write=False)
        groups.append(group)
    return tuple(groups)


def solve_held_karp(instance: TspInstance, max_n: int = HELD_KARP_DEFAULT_CAP) -> Tour:
    n = instance.n
    if n > max_n:
        raise SizeLimitError(f"Held-Karp is capped at n <= {max_n}, got n={n}")
    dist = pairwise_distances(instance)
    ## node v >= 1 is bit v-1; node 0 is the fixed start
    m = n - 1
    inner = dist[1:, 1:]
    cost = np.full((1 << m, m), np.inf, dtype=np.float64)
    parent = np.full((1 << m, m), -1, dtype=np.int8)
    ends = np.arange(m)
    cost[1 << ends, ends] = dist[0, 1:]

    groups = _masks_by_size(m)
    for size in range(2, m + 1):
        masks = groups[size]
        for j in range(m):
            bit = 1 << j
            with_j = masks[(masks & bit) != 0]
            candidates = cost[with_j ^ bit] + inner[:, j]
            best = np.argmin(candidates, axis=1)
            cost[with_j, j] = candidates[np.arange(len(with_j)), best]
            parent[with_j, j] = best

    full = (1 << m) - 1
    last = int(np.argmin(cost[full] + dist[1:, 0]))
    reversed_path = []
    mask, j = full, last
    while True:
        reversed_path.append(j + 1)
        previous = int(parent[mask, j])
        mask ^= 1 << j
        if mask == 0:
            break
        j = previous
    order = (0,) + tuple(reversed(reversed_path))
    logger.debug("held-karp solved n=%d", n)
    return canonical_tour(Tour(order))


class BruteForceSolver(Solver):
    def __init__(self) -> None:
        super().__init__()
        self.name = "brute"
        self.exact = True

    def solve(self, instance):
        return solve_brute_force(instance)


class HeldKarpSolver(Solver):
    def __init__(self, max_n=HELD_KARP_DEFAULT_CAP) -> None:
        super().__init__()
        self.name = "exact"
        self.exact = True
        self.max_n = max_n

    def solve(self, instance):
        return solve_held_karp(instance, self.max_n)

    def to_dict(self):
        return {**super().to_dict(), "max_n": self.max_n}
