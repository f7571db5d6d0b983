"""SVG rendering of a region family's complex. Presentation only."""
from __future__ import annotations

from typing import Optional

from .construction import RegionFamily

PALETTE = ["#e6550d", "#3182bd", "#31a354", "#756bb1", "#636363", "#de2d26", "#fd8d3c", "#6baed6"]


def render_family(family: RegionFamily, highlight: Optional[int] = None, size: int = 640) -> str:
    """Cells of the complex, triangles shaded, and set ``highlight`` (0-based) overlaid."""
    cx = family.complex
    pts = {c.id: c.point for c in cx.cells if c.dim == 0 and c.point is not None}
    if not pts:
        raise ValueError("complex has no coordinates to draw")
    xs = [float(p.x) for p in pts.values()]
    ys = [float(p.y) for p in pts.values()]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1.0
    pad = 20

    def sx(p):
        return pad + (float(p.x) - x0) / span * (size - 2 * pad)

    def sy(p):
        return size - pad - (float(p.y) - y0) / span * (size - 2 * pad)

    members = family.sets[highlight] if highlight is not None else frozenset()
    colour = PALETTE[(highlight or 0) % len(PALETTE)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<rect width="100%" height="100%" fill="white"/>']
    for c in cx.cells:
        if c.dim != 2:
            continue
        poly = cx.polygon(c.id)
        if any(v not in pts for v in poly):
            continue
        coords = " ".join(f"{sx(pts[v]):.2f},{sy(pts[v]):.2f}" for v in poly)
        if c.id in members:
            fill = colour
            opacity = "0.55"
        elif c.tag and c.tag[0] in ("subtri", "flag"):
            fill, opacity = "#fdd0a2", "0.6"
        else:
            fill, opacity = "#f7f7f7", "1"
        out.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity}" '
                   f'stroke="#bdbdbd" stroke-width="0.5"/>')
    for c in cx.cells:
        if c.dim != 1:
            continue
        u, v = c.boundary
        if u not in pts or v not in pts:
            continue
        kind = c.tag[0] if c.tag else ""
        width = "1.6" if kind in ("line", "half") else "0.6"
        stroke = colour if c.id in members and highlight is not None else "#252525"
        if kind == "frame":
            stroke = "#969696"
        out.append(f'<line x1="{sx(pts[u]):.2f}" y1="{sy(pts[u]):.2f}" x2="{sx(pts[v]):.2f}" '
                   f'y2="{sy(pts[v]):.2f}" stroke="{stroke}" stroke-width="{width}"/>')
    if highlight is not None:
        out.append(f'<text x="{pad}" y="{pad - 6}" font-family="sans-serif" font-size="12">'
                   f'{family.names[highlight]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
