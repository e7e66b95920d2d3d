import logging
import math
from dataclasses import dataclass

import numpy as np

from tspgcn.core import tour_length
from tspgcn.errors import InvalidArgumentError
from tspgcn.utils.utils import write_csv

logger = logging.getLogger(__name__)

STATS_HEADER = ("split", "n", "count", "mean_len", "std_len", "mean_solve_ms")


@dataclass(frozen=True)
class DatasetStats:
    split: str
    n: int
    count: int
    mean_len: float
    std_len: float
    mean_solve_ms: float

    def to_row(self):
        return [
            self.split,
            self.n,
            self.count,
            f"{self.mean_len:.6f}",
            f"{self.std_len:.6f}",
            "nan" if math.isnan(self.mean_solve_ms) else f"{self.mean_solve_ms:.3f}",
        ]


def dataset_stats(dataset):
    """Mean and population std of stored tour lengths, mean solve time (nan when unknown)."""
    if len(dataset) == 0:
        raise InvalidArgumentError("cannot summarize an empty dataset")
    lengths = np.array([tour_length(instance, tour) for instance, tour in dataset.records])
    mean_solve_ms = float(np.mean(dataset.solve_ms)) if dataset.solve_ms else math.nan
    if not dataset.exact:
        logger.warning("TSP%d %s tours are best-known heuristic tours, not proven optima", dataset.n, dataset.split)
    return DatasetStats(
        split=dataset.split,
        n=dataset.n,
        count=len(dataset),
        mean_len=float(np.mean(lengths)),
        std_len=float(np.std(lengths)),
        mean_solve_ms=mean_solve_ms,
    )


def write_stats_csv(rows, path):
    write_csv(STATS_HEADER, [row.to_row() for row in rows], path)
