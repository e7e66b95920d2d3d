from tspgcn.data.dataset import (
    DEFAULT_SPLIT_SIZES,
    SOLVERS,
    SPLITS,
    Dataset,
    generate_dataset,
    generate_instance,
)
from tspgcn.data.dataset_io import format_record, parse_record, read_dataset, write_dataset
from tspgcn.data.stats import STATS_HEADER, DatasetStats, dataset_stats, write_stats_csv

__all__ = [
    "DEFAULT_SPLIT_SIZES",
    "SOLVERS",
    "SPLITS",
    "STATS_HEADER",
    "Dataset",
    "DatasetStats",
    "dataset_stats",
    "format_record",
    "generate_dataset",
    "generate_instance",
    "parse_record",
    "read_dataset",
    "write_dataset",
    "write_stats_csv",
]
