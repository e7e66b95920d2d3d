"""
Dataset generation: uniform instances in the unit square paired with
exact (or, beyond the exact cap, best-known heuristic) tours.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Tuple

from tqdm.contrib.concurrent import thread_map

from tspgcn.core import Tour, TspInstance
from tspgcn.errors import InvalidArgumentError, SizeLimitError
from tspgcn.oracle import (
    BRUTE_FORCE_MAX_N,
    HELD_KARP_DEFAULT_CAP,
    InsertionSolver,
    TwoOptSolver,
    solve_brute_force,
    solve_held_karp,
)
from tspgcn.utils.rng import SplitMix64

logger = logging.getLogger(__name__)

SPLITS = ("train", "val", "test")
SOLVERS = ("brute", "held_karp", "heuristic")
COORD_DECIMALS = 6
DEFAULT_SPLIT_SIZES = {"train": 10000, "val": 1000, "test": 1000}


@dataclass
class Dataset:
    split: str = field(compare=False)
    n: int
    records: Tuple[Tuple[TspInstance, Tour], ...]
    seed: int = field(default=0, compare=False)
    exact: bool = field(default=True, compare=False)
    solve_ms: Optional[Tuple[float, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.split not in SPLITS:
            raise InvalidArgumentError(f"unknown split {self.split!r}, expected one of {SPLITS}")
        self.records = tuple(self.records)
        for index, (instance, tour) in enumerate(self.records):
            if instance.n != self.n or tour.n != self.n:
                raise InvalidArgumentError(f"record {index} does not have n={self.n} nodes")

    def __len__(self) -> int:
        return len(self.records)

    @property
    def instances(self):
        return [instance for instance, _ in self.records]

    @property
    def tours(self):
        return [tour for _, tour in self.records]


def generate_instance(n: int, rng: SplitMix64) -> TspInstance:
    """
    Draw n points uniformly in the unit square. Coordinates are rounded to
    the 6 decimals the dataset format stores, so a written dataset re-reads
    to exactly the instance the oracle solved.
    """
    if n < 3:
        raise InvalidArgumentError(f"n must be at least 3, got {n}")
    points = []
    for _ in range(n):
        x = round(rng.uniform(), COORD_DECIMALS)
        y = round(rng.uniform(), COORD_DECIMALS)
        points.append((x, y))
    return TspInstance(tuple(points))


def _reference_solver(solver, n, max_exact_n):
    if solver == "brute":
        if n > BRUTE_FORCE_MAX_N:
            raise SizeLimitError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
        return solve_brute_force
    if solver == "held_karp":
        if n > max_exact_n:
            raise SizeLimitError(f"Held-Karp is capped at n <= {max_exact_n}, got n={n}")
        return partial(solve_held_karp, max_n=max_exact_n)
    if solver == "heuristic":
        return TwoOptSolver(InsertionSolver("farthest")).solve
    raise InvalidArgumentError(f"unknown solver {solver!r}, expected one of {SOLVERS}")


def _generate_record(index, n, seed, solve):
    instance = generate_instance(n, SplitMix64.substream(seed, index))
    started = time.perf_counter()
    tour = solve(instance)
    return instance, tour, (time.perf_counter() - started) * 1000.0


def generate_dataset(
    n: int,
    count: int,
    seed: int,
    solver: str = "held_karp",
    split: str = "train",
    max_exact_n: int = HELD_KARP_DEFAULT_CAP,
    threads: int = 1,
    quiet: bool = True,
) -> Dataset:
    if count < 1:
        raise InvalidArgumentError(f"count must be positive, got {count}")
    solve = _reference_solver(solver, n, max_exact_n)
    logger.info("generating %d TSP%d instances (seed=%d, solver=%s)", count, n, seed, solver)
    results = thread_map(
        partial(_generate_record, n=n, seed=seed, solve=solve),
        range(count),
        max_workers=max(1, threads),
        desc=f"TSP{n} {split}",
        unit="inst",
        disable=quiet,
    )
    return Dataset(
        split=split,
        n=n,
        records=tuple((instance, tour) for instance, tour, _ in results),
        seed=seed,
        exact=solver != "heuristic",
        solve_ms=tuple(ms for _, _, ms in results),
    )
