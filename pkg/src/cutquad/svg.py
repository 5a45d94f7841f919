"""Plain SVG renderings of 2D partitions and point distributions."""

from __future__ import annotations

import numpy as np

from .octree import Partition
from .quadrature import QuadratureScheme
from .tessellation import CellKind

PANEL = 420  # pixels per panel
MARGIN = 30


def _xy(p: Partition, x, offset):
    t = (np.asarray(x, dtype=float) - np.asarray(p.element.origin)) / p.element.size
    # y axis points up
    return offset + MARGIN + t[..., 0] * PANEL, MARGIN + (1 - t[..., 1]) * PANEL


def _polygon(p, verts, offset, style):
    xs, ys = _xy(p, verts, offset)
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(xs, ys))
    return f'<polygon points="{pts}" {style}/>'


def _panel(p: Partition, scheme: QuadratureScheme | None, offset: float, title: str) -> list:
    out = []
    e = p.element
    sq = e.vertices()[[0, 2, 3, 1]]
    out.append(_polygon(p, sq, offset, 'fill="#f4f4f4" stroke="#000" stroke-width="1.5"'))
    for s in p.subcells:
        if s.kind is CellKind.BOX:
            v = s.cell.vertices()[[0, 2, 3, 1]]
            out.append(_polygon(p, v, offset, 'fill="#dff0d8" stroke="#555" stroke-width="0.6"'))
        else:
            out.append(_polygon(p, s.cell.vertices, offset,
                                'fill="#d9e8f5" stroke="#777" stroke-width="0.3"'))
    for a, b in p.boundary_facets:
        (x1, x2), (y1, y2) = _xy(p, np.array([a, b]), offset)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   'stroke="#1f5fbf" stroke-width="1.2"/>')
    if scheme is not None and scheme.total:
        wmax = scheme.weights.max()
        xs, ys = _xy(p, scheme.points, offset)
        for x, y, w in zip(xs, ys, scheme.weights):
            r = 0.6 + 3.0 * np.sqrt(max(w, 0.0) / wmax)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="#c0392b"/>')
        # per-cell point counts on the preserved boxes
        for c, s in enumerate(p.subcells):
            if s.kind is CellKind.BOX:
                n = scheme.offsets[c + 1] - scheme.offsets[c]
                cx, cy = _xy(p, s.cell.center, offset)
                size = max(6, min(14, 0.25 * s.cell.size / e.size * PANEL))
                out.append(f'<text x="{cx:.2f}" y="{cy:.2f}" font-size="{size:.1f}" '
                           f'text-anchor="middle" fill="#333">{n}</text>')
        title = f"{title} ({scheme.total} points)"
    out.append(f'<text x="{offset + MARGIN:.1f}" y="{MARGIN - 10}" font-size="14">{title}</text>')
    return out


def render(p: Partition, panels) -> str:
    """SVG with one panel per ``(scheme or None, title)`` pair."""
    if p.dim != 2:
        raise ValueError("SVG output is only available in two dimensions")
    width = len(panels) * (PANEL + 2 * MARGIN)
    height = PANEL + 2 * MARGIN
    body = []
    for i, (scheme, title) in enumerate(panels):
        body += _panel(p, scheme, i * (PANEL + 2 * MARGIN), title)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>'] + body + ["</svg>"]) + "\n"
