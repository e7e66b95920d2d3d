import logging

import numpy as np

from tspgcn.core import Tour
from tspgcn.errors import InvalidArgumentError
from tspgcn.model.heatmap import HeatMap

logger = logging.getLogger(__name__)

# probabilities are clamped here before taking logs
PROB_FLOOR = 1e-12


def as_probs(heatmap):
    if isinstance(heatmap, HeatMap):
        return heatmap.probs
    return HeatMap(heatmap).probs


def log_probs(heatmap):
    return np.log(np.maximum(as_probs(heatmap), PROB_FLOOR))


def symmetrize(heatmap) -> HeatMap:
    """(p_ij + p_ji) / 2, the undirected alternative to decoding raw directed probabilities."""
    probs = as_probs(heatmap)
    return HeatMap((probs + probs.T) / 2.0)


def tour_probability(heatmap, tour: Tour) -> float:
    """
    Log-probability of a complete tour: sum of log p over its consecutive
    directed edges, closing edge included. A zero-probability edge gives -inf.
    """
    probs = as_probs(heatmap)
    if tour.n != probs.shape[0]:
        raise InvalidArgumentError(f"tour over {tour.n} nodes does not match a {probs.shape[0]}-node heat-map")
    edge_probs = np.array([probs[i, j] for i, j in tour.edges()])
    if np.any(edge_probs <= 0.0):
        return -np.inf
    return float(np.sum(np.log(edge_probs)))
