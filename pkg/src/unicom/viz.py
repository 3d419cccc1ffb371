"""Deterministic rendering of communities-by-nodes matrices.

One SVG layout serves every belonging matrix: a top band colors each
column by its home community, rows are communities, cells are shaded by
a value-to-intensity mapping, and each column's best value is
underscored. A dual layout stacks the two node classes of a bipartite
run over a shared community palette. CSV export mirrors the exact cell
values and ordering of the SVG.

Output is plain text assembled in a fixed order with fixed number
formatting, so identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import csv
import io as _io
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from .errors import (
    CommunitySpaceMismatchError,
    ConfigError,
    InconsistentDimensionsError,
    ParseError,
)
from .graphs import LabelMap
from .overlap import (
    FN_LEGITIMACY,
    FN_WEIGHTED_LEGITIMACY,
    OverlapMatrix,
    ThresholdVector,
    best_cells,
    community_thresholds,
    lit_mask,
)

MAPPING_LINEAR = "linear"
MAPPING_THRESHOLD = "per-community-threshold"

PALETTE_GRAYSCALE = "grayscale"
PALETTE_SEQUENTIAL = "sequential-blue"

# Categorical colors for the community band; cycled when k exceeds it.
_BAND_COLORS = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
)


@dataclass(frozen=True)
class RenderSpec:
    """Layout and styling knobs for matrix rendering.

    ``mapping`` selects how values become cell intensity: ``linear``
    scales by the matrix maximum; ``per-community-threshold`` lights
    exactly the cells at or above their community's threshold, leaving
    the rest blank.
    """

    cell_size: int = 18
    palette: str = PALETTE_GRAYSCALE
    mapping: str = MAPPING_LINEAR
    font_size: int = 10
    underline_best: bool = True
    show_values: bool = False
    dual_view: bool = False

    def __post_init__(self):
        if self.cell_size < 4:
            raise ConfigError("cell size must be at least 4 px")
        if self.palette not in (PALETTE_GRAYSCALE, PALETTE_SEQUENTIAL):
            raise ConfigError(f"unknown palette {self.palette!r}")
        if self.mapping not in (MAPPING_LINEAR, MAPPING_THRESHOLD):
            raise ConfigError(f"unknown intensity mapping {self.mapping!r}")
        if self.font_size < 1:
            raise ConfigError("font size must be positive")


def _check_consistent(om: OverlapMatrix, p, labels: LabelMap):
    assignment = list(getattr(p, "assignment", p))
    if len(labels) < max(om.node_indices, default=-1) + 1:
        raise InconsistentDimensionsError("label map does not cover the matrix columns")
    for pos, idx in enumerate(om.node_indices):
        if idx >= len(assignment) or assignment[idx] != om.home[pos]:
            raise InconsistentDimensionsError(
                "partition disagrees with the overlap matrix home communities"
            )


def column_order(om: OverlapMatrix, labels: LabelMap) -> List[int]:
    """Column positions sorted by home community id, then label."""
    return sorted(
        range(om.n),
        key=lambda pos: (om.home[pos], labels.label(om.node_indices[pos])),
    )


def _fmt(x: float) -> str:
    """Shortest decimal that round-trips the float."""
    if math.isnan(x):
        return "nan"
    return repr(x)


def _intensity_grid(om: OverlapMatrix, thresholds: Optional[ThresholdVector], spec: RenderSpec):
    """Map values onto [0, 1] intensities; NaN cells map to None."""
    vals = om.values
    finite = ~np.isnan(vals)
    vmax = float(np.max(vals[finite])) if finite.any() else 0.0
    lit = lit_mask(om, thresholds) if spec.mapping == MAPPING_THRESHOLD else None
    grid: List[List[Optional[float]]] = []
    for c in range(om.k):
        row: List[Optional[float]] = []
        for pos in range(om.n):
            v = vals[c, pos]
            if math.isnan(v):
                row.append(None)
            elif lit is not None and not lit[c, pos]:
                row.append(0.0)
            elif vmax <= 0.0:
                row.append(0.0)
            else:
                row.append(min(max(v, 0.0) / vmax, 1.0))
        grid.append(row)
    return grid


def _cell_fill(intensity: float, spec: RenderSpec) -> str:
    level = int(round(255 * (1.0 - intensity)))
    if spec.palette == PALETTE_GRAYSCALE:
        return f"#{level:02x}{level:02x}{level:02x}"
    # Sequential blue: white at zero toward a saturated blue at max.
    r = int(round(255 - (255 - 28) * intensity))
    g = int(round(255 - (255 - 69) * intensity))
    b = int(round(255 - (255 - 135) * intensity))
    return f"#{r:02x}{g:02x}{b:02x}"


def band_color(c: int) -> str:
    return _BAND_COLORS[c % len(_BAND_COLORS)]


def _thresholds_for(om: OverlapMatrix, p, spec: RenderSpec) -> Optional[ThresholdVector]:
    if spec.mapping != MAPPING_THRESHOLD:
        return None
    if om.function not in (FN_LEGITIMACY, FN_WEIGHTED_LEGITIMACY):
        raise ConfigError(
            "per-community-threshold mapping needs a legitimacy-family matrix"
        )
    return community_thresholds(om, p)


def _render_block(out: List[str], om: OverlapMatrix, p, labels: LabelMap,
                  spec: RenderSpec, x0: int, y0: int) -> Tuple[int, int]:
    """Append one matrix block's SVG elements; return its (width, height)."""
    order = column_order(om, labels)
    thresholds = _thresholds_for(om, p, spec)
    grid = _intensity_grid(om, thresholds, spec)
    best = best_cells(om) if spec.underline_best else None

    cs = spec.cell_size
    fs = spec.font_size
    gutter = 4 * fs
    label_area = 6 * fs
    band_h = max(cs // 2, 4)
    mx = x0 + gutter
    my = y0 + label_area + band_h

    for c in range(om.k):
        out.append(
            f'<text x="{mx - 4}" y="{my + c * cs + cs - (cs - fs) // 2}" '
            f'text-anchor="end" font-size="{fs}">c{c}</text>'
        )
    for col, pos in enumerate(order):
        x = mx + col * cs
        lab = escape(labels.label(om.node_indices[pos]))
        out.append(
            f'<text x="{x + cs // 2}" y="{y0 + label_area - 4}" font-size="{fs}" '
            f'text-anchor="start" transform="rotate(-60 {x + cs // 2} {y0 + label_area - 4})">{lab}</text>'
        )
        out.append(
            f'<rect x="{x}" y="{y0 + label_area}" width="{cs}" height="{band_h}" '
            f'fill="{band_color(om.home[pos])}"/>'
        )
        for c in range(om.k):
            y = my + c * cs
            cell = grid[c][pos]
            if cell is None:
                out.append(
                    f'<rect x="{x}" y="{y}" width="{cs}" height="{cs}" fill="#ffffff" stroke="#cccccc"/>'
                )
                out.append(
                    f'<line x1="{x}" y1="{y}" x2="{x + cs}" y2="{y + cs}" stroke="#cccccc"/>'
                )
                continue
            out.append(
                f'<rect x="{x}" y="{y}" width="{cs}" height="{cs}" '
                f'fill="{_cell_fill(cell, spec)}" stroke="#cccccc"/>'
            )
            if spec.show_values:
                shade = "#000000" if cell < 0.5 else "#ffffff"
                out.append(
                    f'<text x="{x + cs // 2}" y="{y + cs - (cs - fs) // 2}" font-size="{fs}" '
                    f'text-anchor="middle" fill="{shade}">{escape(f"{om.values[c, pos]:.3g}")}</text>'
                )
            if best is not None and best[c, pos]:
                out.append(
                    f'<line x1="{x + 2}" y1="{y + cs - 2}" x2="{x + cs - 2}" y2="{y + cs - 2}" '
                    f'stroke="#d62728" stroke-width="2"/>'
                )
    width = gutter + len(order) * cs + fs
    height = label_area + band_h + om.k * cs + fs
    return width, height


def _document(body: List[str], width: int, height: int) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}" font-family="monospace">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def render_matrix(om: OverlapMatrix, p, labels: LabelMap, spec: Optional[RenderSpec] = None) -> str:
    """Render one belonging matrix as a standalone SVG document.

    Columns are ordered by home community id then label; a top band
    colors each column by home community; each column's best defined
    value is underscored (all maximal cells on ties).
    """
    spec = spec or RenderSpec()
    _check_consistent(om, p, labels)
    body: List[str] = []
    width, height = _render_block(body, om, p, labels, spec, 0, 0)
    return _document(body, width, height)


def render_dual(om_u: OverlapMatrix, om_v: OverlapMatrix, p, labels: LabelMap,
                spec: Optional[RenderSpec] = None) -> str:
    """Render both node classes stacked in one document.

    The two matrices must share a community id space; they then share
    the band palette and community row ordering.
    """
    spec = spec or RenderSpec()
    if om_u.k != om_v.k:
        raise CommunitySpaceMismatchError(
            f"matrices live in different community spaces ({om_u.k} vs {om_v.k})"
        )
    _check_consistent(om_u, p, labels)
    _check_consistent(om_v, p, labels)
    body: List[str] = []
    w1, h1 = _render_block(body, om_u, p, labels, spec, 0, 0)
    w2, h2 = _render_block(body, om_v, p, labels, spec, 0, h1 + spec.cell_size)
    return _document(body, max(w1, w2), h1 + spec.cell_size + h2)


def export_csv(om: OverlapMatrix, p, labels: LabelMap,
               thresholds: Optional[ThresholdVector] = None) -> str:
    """Serialize the matrix to CSV in the SVG's exact cell order.

    Header row holds node labels; each data row is a community id
    followed by the exact values (shortest round-trip decimals) and,
    when thresholds are supplied, a trailing threshold column.
    """
    _check_consistent(om, p, labels)
    order = column_order(om, labels)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["community"] + [labels.label(om.node_indices[pos]) for pos in order]
    if thresholds is not None:
        if len(thresholds) != om.k:
            raise InconsistentDimensionsError("one threshold per community required")
        header.append("threshold")
    writer.writerow(header)
    for c in range(om.k):
        row = [str(c)] + [_fmt(float(om.values[c, pos])) for pos in order]
        if thresholds is not None:
            row.append(_fmt(thresholds[c]))
        writer.writerow(row)
    return buf.getvalue()


def import_csv(text: str):
    """Parse an :func:`export_csv` document back into its parts.

    Returns (column labels, community ids, values array, thresholds or
    None). Values round-trip bit-exactly because export uses shortest
    round-trip decimals.
    """
    rows = list(csv.reader(_io.StringIO(text)))
    if not rows or not rows[0] or rows[0][0] != "community":
        raise ParseError("not an overlap CSV: missing community header")
    header = rows[0]
    has_threshold = header[-1] == "threshold"
    labels = header[1 : -1 if has_threshold else len(header)]
    ids = []
    values = []
    thresholds = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError("row width does not match header", line=lineno)
        try:
            ids.append(int(row[0]))
            cells = [float(x) for x in row[1:]]
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if has_threshold:
            thresholds.append(cells.pop())
        values.append(cells)
    arr = np.array(values, dtype=float) if values else np.zeros((0, len(labels)))
    thr = ThresholdVector(values=tuple(thresholds)) if has_threshold else None
    return labels, ids, arr, thr
