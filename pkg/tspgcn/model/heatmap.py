from dataclasses import dataclass

import numpy as np

from tspgcn.errors import InvalidArgumentError

PROB_TOLERANCE = 1e-6


@dataclass(frozen=True)
class HeatMap:
    """Directed edge probabilities p_ij of belonging to the tour; diagonal unused."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise InvalidArgumentError(f"heat-map must be square, got shape {probs.shape}")
        off = ~np.eye(probs.shape[0], dtype=bool)
        if np.any(probs[off] < -PROB_TOLERANCE) or np.any(probs[off] > 1.0 + PROB_TOLERANCE):
            raise InvalidArgumentError("heat-map probabilities must lie in [0, 1]")
        probs = np.clip(probs, 0.0, 1.0)
        np.fill_diagonal(probs, 0.0)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def n(self):
        return self.probs.shape[0]

    @property
    def complement(self):
        """Class-0 probabilities."""
        return 1.0 - self.probs
