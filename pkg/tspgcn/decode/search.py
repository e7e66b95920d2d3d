"""
Heat-map decoders: greedy search, beam search, and beam search with the
shortest-tour selection. All scoring happens in the log domain.
"""

import logging
from dataclasses import dataclass

import numpy as np

from tspgcn.core import Tour, tour_length
from tspgcn.decode.scoring import log_probs
from tspgcn.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass
class BeamState:
    """Top-b partial tours; row r of each array describes beam r."""

    orders: np.ndarray
    log_probs: np.ndarray
    visited: np.ndarray

    @classmethod
    def initial(cls, n, start):
        visited = np.zeros((1, n), dtype=bool)
        visited[0, start] = True
        return cls(np.array([[start]], dtype=np.int64), np.zeros(1), visited)

    @property
    def width(self):
        return self.orders.shape[0]

    def expand(self, logp, b):
        """
        Extend every beam by every unvisited node and keep the top b. Ranking:
        higher cumulative log-prob, then lower new node index, then lower
        parent beam index.
        """
        last = self.orders[:, -1]
        edge = logp[last]
        parents, nodes = np.nonzero(~self.visited)
        cand_scores = self.log_probs[parents] + edge[parents, nodes]
        # lexsort: last key is primary
        keep = np.lexsort((parents, nodes, -cand_scores))[:b]
        parents, nodes = parents[keep], nodes[keep]
        visited = self.visited[parents].copy()
        visited[np.arange(len(keep)), nodes] = True
        orders = np.concatenate([self.orders[parents], nodes[:, None]], axis=1)
        return BeamState(orders, cand_scores[keep], visited)


def _check_start(n, start):
    if n < 3:
        raise InvalidArgumentError(f"decoding needs at least 3 nodes, got {n}")
    if not 0 <= start < n:
        raise InvalidArgumentError(f"start node {start} outside [0, {n})")


def greedy_decode(heatmap, start: int = 0) -> Tour:
    logp = log_probs(heatmap)
    n = logp.shape[0]
    _check_start(n, start)
    visited = np.zeros(n, dtype=bool)
    visited[start] = True
    order = [start]
    current = start
    for _ in range(n - 1):
        # argmax keeps the lower index on ties
        current = int(np.argmax(np.where(visited, -np.inf, logp[current])))
        visited[current] = True
        order.append(current)
    return Tour(order)


def beam_search(heatmap, b: int, start: int = 0):
    """Return the final BeamState and each complete tour's score including its closing edge."""
    if b < 1:
        raise InvalidArgumentError(f"beam width must be >= 1, got {b}")
    logp = log_probs(heatmap)
    n = logp.shape[0]
    _check_start(n, start)
    state = BeamState.initial(n, start)
    for _ in range(n - 1):
        state = state.expand(logp, b)
    closing = state.log_probs + logp[state.orders[:, -1], start]
    return state, closing


def beam_decode(heatmap, b: int, start: int = 0) -> Tour:
    state, closing = beam_search(heatmap, b, start)
    return Tour(state.orders[int(np.argmax(closing))])


def beam_decode_shortest(heatmap, instance, b: int, start: int = 0) -> Tour:
    state, _ = beam_search(heatmap, b, start)
    tours = [Tour(order) for order in state.orders]
    lengths = [tour_length(instance, tour) for tour in tours]
    return tours[int(np.argmin(lengths))]
