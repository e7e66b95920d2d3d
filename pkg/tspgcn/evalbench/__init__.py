from tspgcn.evalbench.benchmark import (
    REPORT_HEADER,
    BenchmarkReport,
    benchmark,
    build_solver,
    model_method,
    parse_model_method,
    reference_lengths,
    write_report_csv,
)
from tspgcn.evalbench.figure import build_figure, export_figure
from tspgcn.evalbench.metrics import mean_gap, optimality_gap
from tspgcn.evalbench.sweep import SWEEP_AXES, sweep, write_sweep_csv

__all__ = [
    "REPORT_HEADER",
    "SWEEP_AXES",
    "BenchmarkReport",
    "benchmark",
    "build_figure",
    "build_solver",
    "export_figure",
    "mean_gap",
    "model_method",
    "optimality_gap",
    "parse_model_method",
    "reference_lengths",
    "sweep",
    "write_report_csv",
    "write_sweep_csv",
]
