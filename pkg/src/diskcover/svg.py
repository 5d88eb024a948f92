"""Deterministic SVG rendering of a covering, optionally with its Voronoi cells."""

from __future__ import annotations

from .geom import Covering

PX_PER_RADIUS = 100.0
MARGIN = 1.1  # radii of padding around the rectangle, enough to show every disk touching it


def _num(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_svg(c: Covering, cells=None) -> str:
    """SVG 1.1 text: rectangle, then disks by index, then cells by site index.

    The y axis is flipped so that the rectangle's origin is at the lower left.
    Disks parked far from the rectangle are left out of the view box but
    still emitted, so element counts match the covering.
    """
    w, h = c.rect.width, c.rect.height
    s = PX_PER_RADIUS
    pad = MARGIN * s
    width, height = w * s + 2 * pad, h * s + 2 * pad

    def tx(x: float) -> str:
        return _num(pad + x * s)

    def ty(y: float) -> str:
        return _num(pad + (h - y) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f'<rect x="{tx(0.0)}" y="{ty(h)}" width="{_num(w * s)}" height="{_num(h * s)}" '
        'fill="none" stroke="black" stroke-width="2"/>',
    ]
    for i, (x, y) in enumerate(c.centers):
        out.append(
            f'<circle id="disk-{i}" cx="{tx(x)}" cy="{ty(y)}" r="{_num(s)}" '
            'fill="steelblue" fill-opacity="0.15" stroke="steelblue" stroke-width="1"/>'
        )
    if cells is not None:
        for cell in sorted(cells, key=lambda cl: cl.site_index):
            pts = " ".join(f"{tx(x)},{ty(y)}" for x, y in cell.polygon.vertices)
            out.append(
                f'<polygon id="cell-{cell.site_index}" points="{pts}" fill="none" stroke="darkred" stroke-width="1"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
