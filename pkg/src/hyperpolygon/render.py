"""SVG pictures of polygons in the Poincare disk.

A point ``x`` of the hyperboloid maps to ``(x1, x2) / (1 + x0)`` in the
unit disk. Edges and the inscribed circle are drawn as polylines through
points sampled on the hyperboloid, so geodesics come out as circular arcs
without any special casing.
"""

from dataclasses import dataclass

import numpy as np

from hyperpolygon.developing import frame_at
from hyperpolygon.exceptions import InvalidInput

#: blank border around the disk, in pixels
MARGIN_PX = 8
#: height of one line of the duals table, in pixels
LINE_PX = 14


@dataclass(frozen=True)
class RenderOptions:
    """Picture settings.

    ``recenter`` moves the vertex barycenter of the polygon to the center
    of the disk before drawing, which keeps large polygons away from the
    rim where they would be squeezed.
    """

    width_px: int = 512
    samples_per_edge: int = 32
    draw_incircle: bool = True
    draw_duals_table: bool = False
    recenter: bool = True

    def __post_init__(self):
        if int(self.width_px) != self.width_px or self.width_px < 64:
            raise InvalidInput("width_px must be an integer of at least 64")
        if int(self.samples_per_edge) != self.samples_per_edge or self.samples_per_edge < 8:
            raise InvalidInput("samples_per_edge must be an integer of at least 8")


def poincare(x):
    """Poincare disk coordinates of hyperboloid points (last axis of size 3)."""
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / (1.0 + x[..., :1])


def geodesic_points(a, b, count):
    """``count`` points evenly spaced along the segment from ``a`` to ``b``."""
    s = np.linspace(0.0, 1.0, count)[:, None]
    d = float(np.arccosh(max(1.0, -(-a[0] * b[0] + a[1:] @ b[1:]))))
    if d < 1e-12:
        return np.repeat(a[None, :], count, axis=0)
    return (np.sinh((1.0 - s) * d) * a + np.sinh(s * d) * b) / np.sinh(d)


def circle_points(center, radius, count):
    """``count + 1`` points on the circle (closed: last equals first)."""
    m = frame_at(center)
    phi = np.linspace(0.0, 2 * np.pi, count + 1)[:, None]
    u, w = m[:, 1], m[:, 2]
    return np.cosh(radius) * m[:, 0] + np.sinh(radius) * (np.cos(phi) * u + np.sin(phi) * w)


def to_pixels(disk, width_px):
    """Pixel coordinates of disk points; the y axis points up in the picture."""
    half = width_px / 2.0
    scale = half - MARGIN_PX
    disk = np.asarray(disk, dtype=float)
    return np.stack([half + scale * disk[..., 0], half - scale * disk[..., 1]], axis=-1)


def _fmt(x):
    s = format(float(x), ".3f")
    return "0.000" if s == "-0.000" else s


def _points_attr(pixels):
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pixels)


def polygon_paths(p, options=None, circle=None):
    """Sampled pixel polylines ``(edges, circle)`` as drawn by :func:`render_svg`.

    ``edges`` is a list of ``samples_per_edge x 2`` arrays, ``circle`` an
    array or ``None``.
    """
    options = RenderOptions() if options is None else options
    g = p.centering if options.recenter else np.eye(3)
    vertices = p.vertices @ g.T
    n = p.n
    edges = []
    for i in range(n):
        pts = geodesic_points(vertices[i - 1], vertices[i], options.samples_per_edge)
        edges.append(to_pixels(poincare(pts), options.width_px))
    ring = None
    if circle is not None and options.draw_incircle:
        center, radius = circle
        count = options.samples_per_edge * n
        pts = circle_points(g @ np.asarray(center, dtype=float), radius, count)
        ring = to_pixels(poincare(pts), options.width_px)
    return edges, ring


def render_svg(p, options=None, circle=None):
    """SVG 1.1 document showing ``p`` in the Poincare disk.

    Parameters
    ----------
    p : Polygon
    options : RenderOptions, optional
    circle : (ndarray, float), optional
        Center and radius of a circle to draw, normally the inscribed one.

    Returns
    -------
    str
    """
    options = RenderOptions() if options is None else options
    w = options.width_px
    edges, ring = polygon_paths(p, options, circle)
    rows = p.n + 1 if options.draw_duals_table else 0
    height = w + rows * LINE_PX + (MARGIN_PX if rows else 0)
    half = w / 2.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{height}" '
        f'viewBox="0 0 {w} {height}">',
        f'<rect x="0" y="0" width="{w}" height="{height}" fill="white"/>',
        f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(half - MARGIN_PX)}" '
        'fill="none" stroke="black" stroke-width="1"/>',
        '<g id="edges" fill="none" stroke="navy" stroke-width="1.5">',
    ]
    for i, pix in enumerate(edges):
        out.append(f'<polyline id="edge-{i}" points="{_points_attr(pix)}"/>')
    out.append("</g>")
    if ring is not None:
        out.append(
            f'<polyline id="incircle" fill="none" stroke="darkred" stroke-width="1" '
            f'points="{_points_attr(ring)}"/>'
        )
    if rows:
        out.append('<g id="duals" font-family="monospace" font-size="11" fill="black">')
        y = w + LINE_PX
        out.append(f'<text x="{MARGIN_PX}" y="{y}">edge  length  dual (x0, x1, x2)</text>')
        for i in range(p.n):
            y += LINE_PX
            e = p.duals[i]
            out.append(
                f'<text x="{MARGIN_PX}" y="{y}">{i:4d}  {_fmt(p.lengths[i])}  '
                f"({_fmt(e[0])}, {_fmt(e[1])}, {_fmt(e[2])})</text>"
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
