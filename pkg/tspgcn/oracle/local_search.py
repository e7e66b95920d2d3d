import logging

from tspgcn.core import Tour, TspInstance, pairwise_distances
from tspgcn.errors import InvalidArgumentError
from tspgcn.oracle.solver import Solver

logger = logging.getLogger(__name__)

IMPROVEMENT_TOLERANCE = 1e-12


def two_opt(instance: TspInstance, tour: Tour) -> Tour:
    """
    First-improvement 2-opt. Pairs (i, j) are scanned in lexicographic order
    and the scan restarts after every accepted exchange, so the result is
    deterministic and 2-opt locally optimal.
    """
    if tour.n != instance.n:
        raise InvalidArgumentError(f"tour over {tour.n} nodes does not match instance with {instance.n} nodes")
    dist = pairwise_distances(instance).tolist()
    order = list(tour.order)
    n = len(order)
    exchanges = 0
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            for j in range(i + 2, n):
                c, d = order[j], order[(j + 1) % n]
                if d == a:
                    continue
                delta = dist[a][c] + dist[b][d] - dist[a][b] - dist[c][d]
                if delta < -IMPROVEMENT_TOLERANCE:
                    order[i + 1 : j + 1] = order[i + 1 : j + 1][::-1]
                    exchanges += 1
                    improved = True
                    break
            if improved:
                break
    logger.debug("2-opt applied %d exchanges on n=%d", exchanges, n)
    return Tour(order)


class TwoOptSolver(Solver):
    """Runs a construction solver, then improves its tour with 2-opt."""

    def __init__(self, base) -> None:
        super().__init__()
        self.base = base
        self.name = f"{base.name}+2opt"

    def solve(self, instance):
        return two_opt(instance, self.base.solve(instance))

    def to_dict(self):
        return {**super().to_dict(), "base": self.base.to_dict()}
