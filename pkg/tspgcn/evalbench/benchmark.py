"""
Benchmark harness: run one method over a dataset and report lengths, gaps
and total wall time. Methods are:

    exact | brute
    nearest_neighbor | nearest_insertion | random_insertion | farthest_insertion
        (each optionally suffixed with +2opt)
    model:greedy | model:beam:<b> | model:beam-shortest:<b>
"""

import logging
import time
from dataclasses import dataclass
from typing import Tuple

from tqdm.contrib.concurrent import thread_map

from tspgcn.core import tour_length
from tspgcn.decode import decode_batch
from tspgcn.errors import InvalidArgumentError
from tspgcn.evalbench.metrics import optimality_gap
from tspgcn.oracle import (
    HELD_KARP_DEFAULT_CAP,
    BruteForceSolver,
    HeldKarpSolver,
    InsertionSolver,
    NearestNeighborSolver,
    TwoOptSolver,
)
from tspgcn.utils.utils import write_csv

logger = logging.getLogger(__name__)

REPORT_HEADER = ("method", "n", "count", "mean_len", "mean_gap_pct", "total_wall_ms", "threads")
BEST_KNOWN_GAP_COLUMN = "mean_gap_vs_best_known_pct"
HEURISTIC_METHODS = ("nearest_neighbor", "nearest_insertion", "random_insertion", "farthest_insertion")
TWO_OPT_SUFFIX = "+2opt"
MODEL_PREFIX = "model"


@dataclass(frozen=True)
class BenchmarkReport:
    method: str
    n: int
    count: int
    lengths: Tuple[float, ...]
    gaps: Tuple[float, ...]
    mean_len: float
    mean_gap_pct: float
    total_wall_ms: float
    threads: int
    reference: str

    def to_row(self):
        return [
            self.method,
            self.n,
            self.count,
            f"{self.mean_len:.6f}",
            f"{self.mean_gap_pct:.4f}",
            f"{self.total_wall_ms:.1f}",
            self.threads,
        ]

    def content(self):
        """Report fields that do not depend on timing."""
        return (self.method, self.n, self.count, self.lengths, self.gaps, self.threads, self.reference)


def build_solver(method, seed=0, max_exact_n=HELD_KARP_DEFAULT_CAP):
    base = method[: -len(TWO_OPT_SUFFIX)] if method.endswith(TWO_OPT_SUFFIX) else method
    solver = None
    if base == "exact":
        solver = HeldKarpSolver(max_exact_n)
    elif base == "brute":
        solver = BruteForceSolver()
    elif base == "nearest_neighbor":
        solver = NearestNeighborSolver()
    elif base.endswith("_insertion") and base in HEURISTIC_METHODS:
        solver = InsertionSolver(base[: -len("_insertion")], seed)
    if solver is None:
        raise InvalidArgumentError(f"unknown method {method!r}")
    if base != method:
        solver = TwoOptSolver(solver)
    return solver


def parse_model_method(method):
    parts = method.split(":")
    if parts[0] != MODEL_PREFIX or len(parts) not in (2, 3):
        raise InvalidArgumentError(f"not a model method: {method!r}")
    decoder = parts[1]
    if decoder == "greedy" and len(parts) == 2:
        return decoder, 1
    if decoder in ("beam", "beam-shortest") and len(parts) == 3:
        try:
            width = int(parts[2])
        except ValueError:
            raise InvalidArgumentError(f"bad beam width in {method!r}") from None
        if width < 1:
            raise InvalidArgumentError(f"beam width must be >= 1 in {method!r}")
        return decoder, width
    raise InvalidArgumentError(f"unknown model method {method!r}")


def model_method(decoder, beam_width):
    return f"{MODEL_PREFIX}:greedy" if decoder == "greedy" else f"{MODEL_PREFIX}:{decoder}:{beam_width}"


def reference_lengths(dataset, threads=1, quiet=True):
    """
    Stored tour lengths when the dataset is exact; otherwise the better of the
    stored tour and farthest insertion + 2-opt, labelled best_known.
    """
    stored = [tour_length(instance, tour) for instance, tour in dataset.records]
    if dataset.exact:
        return stored, "exact"
    heuristic = TwoOptSolver(InsertionSolver("farthest"))
    tours = thread_map(heuristic.solve, dataset.instances, max_workers=max(1, threads),
                       desc="best-known reference", unit="inst", disable=quiet)
    improved = [tour_length(instance, tour) for instance, tour in zip(dataset.instances, tours)]
    return [min(a, b) for a, b in zip(stored, improved)], "best_known"


def benchmark(method, dataset, threads=1, model=None, heatmaps=None, seed=0,
              max_exact_n=HELD_KARP_DEFAULT_CAP, symmetrize=False, quiet=True) -> BenchmarkReport:
    """
    Solve every instance of `dataset` with `method`. Wall time covers the
    whole set (model inference and decoding included). A model trained at
    one size may be evaluated at any other size.
    """
    instances = dataset.instances
    threads = max(1, threads)
    started = time.perf_counter()
    if method.startswith(MODEL_PREFIX + ":"):
        decoder, width = parse_model_method(method)
        if heatmaps is None:
            if model is None:
                raise InvalidArgumentError(f"method {method!r} needs a model checkpoint")
            heatmaps = model.heatmaps(instances)
        tours = decode_batch(heatmaps, decoder, width, instances=instances, symmetrize=symmetrize,
                             threads=threads, quiet=quiet)
    else:
        solver = build_solver(method, seed, max_exact_n)
        tours = list(thread_map(solver.solve, instances, max_workers=threads,
                                desc=method, unit="inst", disable=quiet))
    wall_ms = (time.perf_counter() - started) * 1000.0

    lengths = [tour_length(instance, tour) for instance, tour in zip(instances, tours)]
    references, reference = reference_lengths(dataset, threads, quiet)
    gaps = [optimality_gap(length, ref) for length, ref in zip(lengths, references)]
    report = BenchmarkReport(
        method=method,
        n=dataset.n,
        count=len(dataset),
        lengths=tuple(lengths),
        gaps=tuple(gaps),
        mean_len=sum(lengths) / len(lengths),
        mean_gap_pct=sum(gaps) / len(gaps),
        total_wall_ms=wall_ms,
        threads=threads,
        reference=reference,
    )
    logger.info("%s on TSP%d: mean gap %.3f%% (%s) in %.0f ms", method, dataset.n, report.mean_gap_pct, reference, wall_ms)
    return report


def report_header(reports):
    header = list(REPORT_HEADER)
    if any(report.reference != "exact" for report in reports):
        header[header.index("mean_gap_pct")] = BEST_KNOWN_GAP_COLUMN
    return header


def write_report_csv(reports, path):
    write_csv(report_header(reports), [report.to_row() for report in reports], path)
