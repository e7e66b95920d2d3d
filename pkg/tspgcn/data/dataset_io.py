"""
Dataset text format, one instance per line:

    x1 y1 x2 y2 ... xn yn output i1 i2 ... in i1

Coordinates carry 6 fixed decimals; the tour is 1-indexed and closed.
"""

import logging

from tspgcn.core import Tour, TspInstance
from tspgcn.data.dataset import COORD_DECIMALS, Dataset
from tspgcn.errors import InvalidArgumentError, ParseError, TspError
from tspgcn.oracle import HELD_KARP_DEFAULT_CAP
from tspgcn.utils.utils import ensure_parent_dir, format_float, read_lines, write_lines

logger = logging.getLogger(__name__)

OUTPUT_TOKEN = "output"


def format_record(instance, tour):
    coords = " ".join(format_float(c, COORD_DECIMALS) for point in instance.points for c in point)
    order = [i + 1 for i in tour.order]
    order.append(order[0])
    return f"{coords} {OUTPUT_TOKEN} " + " ".join(str(i) for i in order)


def parse_record(line, path="<string>", line_no=1):
    tokens = line.split()
    if OUTPUT_TOKEN not in tokens:
        raise ParseError(path, line_no, f"missing '{OUTPUT_TOKEN}' separator")
    split_at = tokens.index(OUTPUT_TOKEN)
    coord_tokens, tour_tokens = tokens[:split_at], tokens[split_at + 1 :]
    if len(coord_tokens) % 2 != 0:
        raise ParseError(path, line_no, f"odd number of coordinates ({len(coord_tokens)})")
    n = len(coord_tokens) // 2
    if len(tour_tokens) != n + 1:
        raise ParseError(path, line_no, f"expected {n + 1} tour indices for {n} nodes, got {len(tour_tokens)}")
    try:
        values = [float(token) for token in coord_tokens]
        order = [int(token) - 1 for token in tour_tokens]
    except ValueError as e:
        raise ParseError(path, line_no, str(e)) from e
    if order[0] != order[-1]:
        raise ParseError(path, line_no, "tour is not closed (first index must be repeated at the end)")
    try:
        instance = TspInstance(tuple(zip(values[0::2], values[1::2])))
        tour = Tour(order[:-1])
    except InvalidArgumentError as e:
        raise ParseError(path, line_no, str(e)) from e
    return instance, tour


def write_dataset(dataset, path):
    ensure_parent_dir(path)
    write_lines((format_record(instance, tour) for instance, tour in dataset.records), path)
    logger.info("wrote %d records to %s", len(dataset), path)


def read_dataset(path, split="test", seed=0, exact=None, max_exact_n=HELD_KARP_DEFAULT_CAP):
    """
    Read a dataset file. Split, seed and exactness are not part of the file
    format; exactness defaults to n <= max_exact_n.
    """
    records = []
    n = None
    for line_no, line in enumerate(read_lines(path), start=1):
        if not line.strip():
            continue
        instance, tour = parse_record(line, path, line_no)
        if n is None:
            n = instance.n
        elif instance.n != n:
            raise ParseError(path, line_no, f"record has {instance.n} nodes, expected {n}")
        records.append((instance, tour))
    if not records:
        raise ParseError(path, 1, "dataset file contains no records")
    if exact is None:
        exact = n <= max_exact_n
    try:
        return Dataset(split=split, n=n, records=tuple(records), seed=seed, exact=exact)
    except TspError as e:
        raise ParseError(path, 1, str(e)) from e
