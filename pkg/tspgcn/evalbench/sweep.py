"""Beam-width and model-capacity sweeps."""

import logging

from tspgcn.errors import InvalidArgumentError
from tspgcn.evalbench.benchmark import benchmark, model_method, report_header
from tspgcn.model import GcnModel
from tspgcn.utils.utils import write_csv

logger = logging.getLogger(__name__)

SWEEP_AXES = ("beam_width", "l_conv", "h")
VALUE_PLACEHOLDER = "{value}"


def sweep(axis, values, dataset, checkpoint, decoder="beam", beam_width=1, threads=1, quiet=True):
    """
    One benchmark row per value. Beam-width sweeps decode one shared set of
    heat-maps from `checkpoint`. Capacity sweeps (l_conv, h) load
    `checkpoint` with `{value}` replaced by each value.
    """
    if axis not in SWEEP_AXES:
        raise InvalidArgumentError(f"unknown sweep axis {axis!r}, expected one of {SWEEP_AXES}")
    values = list(values)
    if not values:
        return []
    rows = []
    if axis == "beam_width":
        if decoder == "greedy":
            raise InvalidArgumentError("a beam-width sweep needs the beam or beam-shortest decoder")
        heatmaps = GcnModel.load(checkpoint).heatmaps(dataset.instances)
        for width in values:
            report = benchmark(model_method(decoder, int(width)), dataset, threads, heatmaps=heatmaps, quiet=quiet)
            rows.append((axis, width, report))
        return rows

    if VALUE_PLACEHOLDER not in checkpoint:
        raise InvalidArgumentError(f"capacity sweeps need a checkpoint template containing {VALUE_PLACEHOLDER}")
    for value in values:
        model = GcnModel.load(checkpoint.replace(VALUE_PLACEHOLDER, str(value)))
        if getattr(model.config, axis) != int(value):
            logger.warning("checkpoint for %s=%s has %s=%s", axis, value, axis, getattr(model.config, axis))
        report = benchmark(model_method(decoder, beam_width), dataset, threads, model=model, quiet=quiet)
        rows.append((axis, value, report))
    return rows


def write_sweep_csv(rows, path):
    header = ["axis", "value"] + report_header([report for _, _, report in rows])
    write_csv(header, [[axis, value] + report.to_row() for axis, value, report in rows], path)
