"""Three-panel SVG: input graph with the optimal tour, heat-map, predicted tour."""

import logging

import numpy as np
from lxml import etree

from tspgcn.errors import InvalidArgumentError
from tspgcn.utils.utils import ensure_parent_dir

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
PANEL_SIZE = 300.0
PANEL_MARGIN = 20.0
NODE_RADIUS = 4.0
PANEL_IDS = ("panel-input", "panel-heatmap", "panel-prediction")
PANEL_TITLES = ("input + optimal tour", "edge heat-map", "predicted tour")
TOUR_COLORS = {"panel-input": "#2b8a3e", "panel-prediction": "#c92a2a"}


def _fmt(value):
    return "%.2f" % value


def _project(coords, panel):
    """Unit-square coordinates to SVG pixels inside panel `panel`; y grows upward."""
    span = PANEL_SIZE - 2 * PANEL_MARGIN
    x = panel * PANEL_SIZE + PANEL_MARGIN + coords[:, 0] * span
    y = PANEL_SIZE - PANEL_MARGIN - coords[:, 1] * span
    return np.stack([x, y], axis=1)


def _sub(parent, tag, **attrs):
    return etree.SubElement(parent, f"{{{SVG_NS}}}{tag}", {k.replace("_", "-"): str(v) for k, v in attrs.items()})


def _line(group, a, b, css_class, **attrs):
    return _sub(group, "line", x1=_fmt(a[0]), y1=_fmt(a[1]), x2=_fmt(b[0]), y2=_fmt(b[1]), **{"class": css_class}, **attrs)


def _nodes(group, points):
    for index, (x, y) in enumerate(points):
        _sub(group, "circle", cx=_fmt(x), cy=_fmt(y), r=_fmt(NODE_RADIUS), fill="#212529", **{"class": "node", "data-node": index})


def _tour(group, points, tour, color):
    for i, j in tour.edges():
        _line(group, points[i], points[j], "tour-edge", stroke=color, stroke_width="2")


def build_figure(instance, heatmap, pred_tour, opt_tour):
    n = instance.n
    probs = np.asarray(getattr(heatmap, "probs", heatmap), dtype=np.float64)
    if probs.shape != (n, n) or pred_tour.n != n or opt_tour.n != n:
        raise InvalidArgumentError(f"figure inputs disagree on the number of nodes (instance has {n})")

    root = etree.Element(
        f"{{{SVG_NS}}}svg",
        nsmap={None: SVG_NS},
        width=_fmt(3 * PANEL_SIZE),
        height=_fmt(PANEL_SIZE),
        viewBox=f"0 0 {_fmt(3 * PANEL_SIZE)} {_fmt(PANEL_SIZE)}",
    )
    for panel, (panel_id, title) in enumerate(zip(PANEL_IDS, PANEL_TITLES)):
        group = _sub(root, "g", id=panel_id)
        label = _sub(group, "text", x=_fmt(panel * PANEL_SIZE + PANEL_MARGIN), y=_fmt(PANEL_MARGIN * 0.7), font_size="11")
        label.text = title
        points = _project(instance.coords, panel)
        if panel_id == "panel-heatmap":
            # undirected strength of each edge; zero-probability edges are not drawn
            strength = (probs + probs.T) / 2.0
            for i in range(n):
                for j in range(i + 1, n):
                    if strength[i, j] > 0:
                        _line(group, points[i], points[j], "heat-edge", stroke="#1c7ed6",
                              stroke_width="2", stroke_opacity=_fmt(strength[i, j]))
        else:
            _tour(group, points, opt_tour if panel_id == "panel-input" else pred_tour, TOUR_COLORS[panel_id])
        _nodes(group, points)
    return root


def export_figure(instance, heatmap, pred_tour, opt_tour, path):
    """Write the figure to `path`; identical inputs give byte-identical files."""
    root = build_figure(instance, heatmap, pred_tour, opt_tour)
    content = etree.tostring(root, pretty_print=True, xml_declaration=True, encoding="UTF-8")
    try:
        ensure_parent_dir(path)
        with open(path, "wb") as f:
            f.write(content)
    except OSError as e:
        raise OSError(e.errno, f"cannot write figure: {e.strerror}", str(path)) from e
    logger.debug("wrote %d-node figure to %s", instance.n, path)
    return path
