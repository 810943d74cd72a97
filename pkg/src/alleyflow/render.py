"""SVG output: flow maps and matrix heatmaps.

Both renderers build the document as text with fixed number formatting and a
fixed element order, so identical input gives byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptyMatrix, MissingCategory
from .flow import CATEGORIES, AlleyCategory
from .netmodel import WalkwayGraph

# cool -> hot anchor colours
PALETTES = {
    "heat": ((49, 54, 149), (69, 117, 180), (171, 217, 233), (254, 224, 144), (244, 109, 67), (165, 0, 38)),
    "gray": ((0, 0, 0), (255, 255, 255)),
    "blue-red": ((33, 102, 172), (247, 247, 247), (178, 24, 43)),
}
NEUTRAL = "#d0d0d0"


@dataclass(frozen=True)
class RenderSpec:
    widths: tuple[float, float, float, float] = (1.0, 2.5, 4.5, 7.0)
    dash_low: bool = True
    palette: str = "heat"
    padding: int = 30
    scale: float = 8.0      # pixels per metre on maps
    cell: int = 12          # pixels per heatmap cell
    labels: bool = True

    def __post_init__(self):
        if len(self.widths) != 4 or any(b <= a for a, b in zip(self.widths, self.widths[1:])):
            raise ValueError(f"stroke widths must be 4 strictly increasing values, got {self.widths}")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}; choose from {sorted(PALETTES)}")


def _f(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def ramp(t: float, palette: str = "heat") -> str:
    """Hex colour at position ``t`` in [0, 1] of a piecewise-linear palette."""
    anchors = np.asarray(PALETTES[palette], dtype=float)
    t = min(max(float(t), 0.0), 1.0)
    pos = t * (len(anchors) - 1)
    k = min(int(pos), len(anchors) - 2)
    frac = pos - k
    rgb = anchors[k] + (anchors[k + 1] - anchors[k]) * frac
    return "#" + "".join(f"{int(round(c)):02x}" for c in rgb)


def render_network_svg(
    graph: WalkwayGraph,
    categories: Sequence[AlleyCategory],
    spec: RenderSpec = RenderSpec(),
) -> str:
    """Alley map with stroke width by flow category; low alleys dashed."""
    by_pair = {frozenset((c.source, c.target)): c for c in categories}
    xy = graph.coords
    xmin, ymin = xy.min(axis=0)
    xmax, ymax = xy.max(axis=0)
    pad, s = spec.padding, spec.scale
    width = (xmax - xmin) * s + 2 * pad
    height = (ymax - ymin) * s + 2 * pad

    def px(k):
        x, y = xy[k]
        # screen y grows downwards
        return pad + (x - xmin) * s, pad + (ymax - y) * s

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" fill="#ffffff"/>',
        '<g id="alleys" stroke="#303030" stroke-linecap="round">',
    ]
    for i, j in graph.alleys():
        a, b = graph.nodes[i].id, graph.nodes[j].id
        cat = by_pair.get(frozenset((a, b)))
        if cat is None:
            raise MissingCategory(f"alley {a}-{b} has no category")
        level = CATEGORIES.index(cat.category)
        (x1, y1), (x2, y2) = px(i), px(j)
        dash = ' stroke-dasharray="6 4"' if spec.dash_low and cat.category == "low" else ""
        out.append(
            f'<line class="{cat.category}" data-alley="{escape(a)}-{escape(b)}" data-total="{cat.total}" '
            f'x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke-width="{_f(spec.widths[level])}"{dash}/>'
        )
    out.append("</g>")
    if spec.labels:
        out.append('<g id="nodes" font-family="sans-serif" font-size="9" fill="#000000">')
        for k, node in enumerate(graph.nodes):
            x, y = px(k)
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5"/>')
            out.append(f'<text x="{_f(x + 4)}" y="{_f(y - 4)}">{escape(node.id)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cell_colors(matrix: np.ndarray, palette: str = "heat", mask: np.ndarray | None = None) -> list[list[str]]:
    """Colour per cell: finite values scaled linearly min->max, the rest neutral."""
    M = np.asarray(matrix, dtype=float)
    if M.size == 0:
        raise EmptyMatrix("matrix is empty")
    show = np.isfinite(M)
    if mask is not None:
        show &= ~np.asarray(mask, dtype=bool)
    if show.any():
        lo, hi = float(M[show].min()), float(M[show].max())
    else:
        lo = hi = 0.0
    span = hi - lo
    colors = []
    for r in range(M.shape[0]):
        row = []
        for c in range(M.shape[1]):
            if not show[r, c]:
                row.append(NEUTRAL)
            else:
                row.append(ramp(0.0 if span == 0 else (M[r, c] - lo) / span, palette))
        colors.append(row)
    return colors


def render_heatmap_svg(
    matrix: np.ndarray,
    labels: Sequence[str] | None = None,
    spec: RenderSpec = RenderSpec(),
    mask: np.ndarray | None = None,
) -> str:
    """One rectangle per cell, rows and columns in node order.

    ``inf`` cells and cells flagged in ``mask`` are drawn neutral grey.
    """
    colors = cell_colors(matrix, spec.palette, mask)
    nr, nc = len(colors), len(colors[0])
    cell = spec.cell
    margin = spec.padding + (24 if labels is not None and spec.labels else 0)
    width, height = margin + nc * cell + spec.padding, margin + nr * cell + spec.padding
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        '<g id="cells" shape-rendering="crispEdges">',
    ]
    for r in range(nr):
        for c in range(nc):
            out.append(
                f'<rect x="{margin + c * cell}" y="{margin + r * cell}" width="{cell}" '
                f'height="{cell}" fill="{colors[r][c]}"/>'
            )
    out.append("</g>")
    if labels is not None and spec.labels:
        out.append('<g id="labels" font-family="sans-serif" font-size="8" fill="#000000">')
        half = cell / 2
        for k, lab in enumerate(labels):
            out.append(
                f'<text x="{margin - 3}" y="{_f(margin + k * cell + half + 3)}" '
                f'text-anchor="end">{escape(lab)}</text>'
            )
            out.append(
                f'<text x="{_f(margin + k * cell + half)}" y="{margin - 4}" '
                f'text-anchor="middle">{escape(lab)}</text>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
