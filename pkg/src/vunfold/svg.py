"""SVG rendering of planar strip layouts.

Coordinates are written in layout units (9 significant digits) inside a group
that flips the y axis, so "up" in the layout is up on screen and the numbers
in the file match the JSON layout document.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import LayoutError
from .strip_layout import StripLayout


def fmt(x: float) -> str:
    s = f"{float(x):.9g}"
    return "0" if s == "-0" else s


@dataclass(frozen=True)
class SvgOptions:
    stroke: str = "#1f1f1f"
    stroke_width: float = 1.0
    fill: str = "#f2c14e"
    fill_alt: str = "#5fa8d3"
    fill_by_parity: bool = True
    show_strips: bool = False
    labels: bool = False
    count_label: bool = False
    pixels_per_unit: float = 60.0
    margin: float = 0.25


def render_svg(lay: StripLayout, options: SvgOptions | None = None, vertex_names=None) -> str:
    """Return the SVG document for a planar layout."""
    opt = options or SvgOptions()
    if lay.dim != 2:
        raise LayoutError(f"SVG output needs a planar layout, this one is {lay.dim}-dimensional")
    if not lay.placements:
        raise LayoutError("empty layout")
    pts = np.concatenate([q.coords for q in lay.placements])
    xmin, ymin = pts.min(axis=0)
    xmax, ymax = pts.max(axis=0)
    m = opt.margin * max(1.0, ymax - ymin)
    label_room = m * 4 if opt.count_label else 0.0
    vx, vy = xmin - m - label_room, -ymax - m
    vw, vh = (xmax - xmin) + 2 * m + label_room, (ymax - ymin) + 2 * m
    ppu = opt.pixels_per_unit
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(vw * ppu)}" height="{fmt(vh * ppu)}" '
        f'viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">',
        f'<g id="unfolding" transform="scale(1,-1)" stroke="{escape(opt.stroke)}" '
        f'stroke-width="{fmt(opt.stroke_width)}" stroke-linejoin="round" '
        f'vector-effect="non-scaling-stroke">',
    ]
    if opt.show_strips:
        xs = sorted({x for q in lay.placements for x in q.interval})
        y0, y1 = ymin - m / 2, ymax + m / 2
        for x in xs:
            out.append(f'<line class="strip" x1="{fmt(x)}" y1="{fmt(y0)}" x2="{fmt(x)}" '
                       f'y2="{fmt(y1)}" stroke="#9a9a9a" stroke-dasharray="4 3" '
                       f'vector-effect="non-scaling-stroke"/>')
    for i, q in enumerate(lay.placements):
        fill = opt.fill_alt if (opt.fill_by_parity and i % 2) else opt.fill
        pts_s = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in q.coords)
        out.append(f'<polygon class="facet" data-facet="{q.facet}" data-strip="{i}" '
                   f'fill="{fill}" points="{pts_s}" vector-effect="non-scaling-stroke"/>')
    out.append("</g>")
    size = 0.18 * max(1.0, ymax - ymin) ** 0.5
    if opt.labels:
        out.append(f'<g id="labels" font-family="sans-serif" font-size="{fmt(size)}" '
                   f'text-anchor="middle" fill="#000">')
        for q in lay.placements:
            for v, (x, y) in zip(q.vertices, q.coords):
                name = vertex_names[v] if vertex_names is not None else str(v)
                out.append(f'<text x="{fmt(x)}" y="{fmt(-y)}">{escape(name)}</text>')
        out.append("</g>")
    if opt.count_label:
        cy = -(ymin + ymax) / 2
        out.append(f'<text class="count" x="{fmt(xmin - m)}" y="{fmt(cy)}" '
                   f'font-family="sans-serif" font-size="{fmt(size * 2)}" text-anchor="end" '
                   f'dominant-baseline="middle">{len(lay.placements)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(lay: StripLayout, path, options: SvgOptions | None = None, vertex_names=None) -> None:
    Path(path).write_text(render_svg(lay, options, vertex_names))
