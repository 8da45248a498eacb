"""Drawings: SVG output and crossing counts on the sampled curves."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np
import shapely

from .routing import RoutingGraph


@dataclass
class DrawingStats:
    power_edges: int = 0
    groups: int = 0
    crossings: int = 0
    routing_planar: bool = True
    runtime_ms: float = 0.0

    def __post_init__(self):
        if self.crossings < 0:
            raise ValueError("crossings must be non-negative")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Drawing:
    """Positions of routing nodes, one sampled polyline per spline path, leaf labels."""

    positions: dict
    edges: list  # [(SplinePath, polyline ndarray (k, 2))]
    vertex_labels: dict
    stats: DrawingStats = field(default_factory=DrawingStats)
    routing: Optional[RoutingGraph] = None

    def __post_init__(self):
        for path, poly in self.edges:
            missing = [c for c in path.control_ids if c not in self.positions]
            if missing:
                raise ValueError(f"control ids {missing} have no position")
            if len(poly) == 0:
                raise ValueError("empty polyline")


# --- crossings -------------------------------------------------------------

def _segments(polylines) -> tuple:
    segs, owner = [], []
    for k, poly in enumerate(polylines):
        poly = np.asarray(poly, dtype=float)
        if len(poly) < 2:
            continue
        s = np.hstack([poly[:-1], poly[1:]])
        segs.append(s)
        owner.append(np.full(len(s), k))
    if not segs:
        return np.zeros((0, 4)), np.zeros(0, dtype=int)
    return np.vstack(segs), np.concatenate(owner)


def _dedupe(segs: np.ndarray, owner: np.ndarray, quantum: float):
    """Merge segments that coincide within ``quantum``; returns unique segments and owner sets."""
    keep = np.hypot(segs[:, 2] - segs[:, 0], segs[:, 3] - segs[:, 1]) > quantum
    segs, owner = segs[keep], owner[keep]
    # orient each segment so its endpoints are in lexicographic order
    flip = (segs[:, 0] > segs[:, 2]) | ((segs[:, 0] == segs[:, 2]) & (segs[:, 1] > segs[:, 3]))
    segs = np.where(flip[:, None], segs[:, [2, 3, 0, 1]], segs)
    key = np.round(segs / quantum).astype(np.int64)
    _, first, inverse = np.unique(key, axis=0, return_index=True, return_inverse=True)
    owners = [set() for _ in range(len(first))]
    for u, o in zip(inverse.ravel().tolist(), owner.tolist()):
        owners[u].add(o)
    return segs[first], [frozenset(s) for s in owners]


def _proper_crossings(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Mask of segment pairs (rows of a, b) that cross at a single interior point.

    Endpoint touches and collinear overlaps (any endpoint within ``tol`` of
    the other segment's supporting line) are not crossings.
    """
    p1, p2, p3, p4 = a[:, :2], a[:, 2:], b[:, :2], b[:, 2:]

    def side(o, e, q):
        d = e - o
        length = np.hypot(d[:, 0], d[:, 1])
        cross = d[:, 0] * (q[:, 1] - o[:, 1]) - d[:, 1] * (q[:, 0] - o[:, 0])
        return cross / length

    d1, d2 = side(p3, p4, p1), side(p3, p4, p2)
    d3, d4 = side(p1, p2, p3), side(p1, p2, p4)
    clear = (np.abs(d1) > tol) & (np.abs(d2) > tol) & (np.abs(d3) > tol) & (np.abs(d4) > tol)
    return clear & (d1 * d2 < 0) & (d3 * d4 < 0)


def count_polyline_crossings(polylines, rel_tol: float = 1e-9) -> int:
    """Transversal crossings between polylines belonging to different curves.

    Segments shared by several curves (coinciding within the tolerance) are
    counted once, as a bundle.
    """
    segs, owner = _segments(polylines)
    if len(segs) < 2:
        return 0
    extent = float(np.ptp(segs.reshape(-1, 2), axis=0).max())
    tol = rel_tol * max(extent, 1.0)
    segs, owners = _dedupe(segs, owner, tol)
    if len(segs) < 2:
        return 0
    tree = shapely.STRtree(shapely.box(np.minimum(segs[:, 0], segs[:, 2]), np.minimum(segs[:, 1], segs[:, 3]),
                                       np.maximum(segs[:, 0], segs[:, 2]), np.maximum(segs[:, 1], segs[:, 3])))
    left, right = tree.query(tree.geometries, predicate="intersects")
    upper = left < right
    left, right = left[upper], right[upper]
    hit = _proper_crossings(segs[left], segs[right], tol)
    count = 0
    for i, j in zip(left[hit].tolist(), right[hit].tolist()):
        oi, oj = owners[i], owners[j]
        if len(oi) == 1 and oi == oj:
            continue  # a curve against itself
        count += 1
    return count


def count_crossings(d: Drawing, rel_tol: float = 1e-9) -> int:
    return count_polyline_crossings([poly for _, poly in d.edges], rel_tol)


# --- SVG -----------------------------------------------------------------

def _fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _view_box(points: np.ndarray, margin: float = 0.05) -> tuple:
    """Bounding box of ``points`` grown by ``margin`` of its larger side."""
    if len(points) == 0:
        lo, size = np.zeros(2), np.ones(2)
    else:
        lo = points.min(axis=0)
        size = points.max(axis=0) - lo
        if size.max() == 0:
            lo, size = lo - 0.5, np.ones(2)
    pad = margin * float(size.max())
    return lo[0] - pad, lo[1] - pad, size[0] + 2 * pad, size[1] + 2 * pad


def render_svg(d: Drawing, debug_overlay: bool = False, width: int = 800,
               node_radius: float = 0.12, stroke: float = 0.03, font_size: float = 0.22) -> str:
    """SVG 1.1 document: a path per spline, a circle and label per leaf.

    Sizes are in layout units (one default edge length). With
    ``debug_overlay`` the junctions and power edges of ``d.routing`` are
    drawn as well.
    """
    leaves = sorted(d.vertex_labels)
    pts = [np.asarray(poly) for _, poly in d.edges]
    pts += [np.array([d.positions[v]]) for v in leaves]
    if debug_overlay and d.routing is not None:
        pts += [np.array([d.positions[v]]) for v in d.routing.nodes]
    allpts = np.vstack(pts) if pts else np.zeros((0, 2))
    x0, y0, w, h = _view_box(allpts)
    r, sw, fs = node_radius, stroke, font_size
    height = max(1, int(round(width * h / w)))

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
           f'<g fill="none" stroke="#335" stroke-width="{_fmt(sw)}" stroke-opacity="0.6">']
    for path, poly in d.edges:
        a, b = path.endpoints
        coords = " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in np.asarray(poly))
        out.append(f'<path class="edge e{a}-{b}" d="M {coords}"/>')
    out.append("</g>")

    if debug_overlay and d.routing is not None:
        rg = d.routing
        out.append(f'<g stroke="#c33" stroke-width="{_fmt(sw)}" stroke-dasharray="{_fmt(4 * sw)}">')
        for i, j in sorted(rg.power_edges):
            (xa, ya), (xb, yb) = d.positions[i], d.positions[j]
            out.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}"/>')
        out.append("</g>")
        out.append('<g fill="#c33">')
        for v in rg.junctions():
            x, y = d.positions[v]
            out.append(f'<rect class="junction j{v}" x="{_fmt(x - r / 2)}" y="{_fmt(y - r / 2)}" '
                       f'width="{_fmt(r)}" height="{_fmt(r)}"/>')
        out.append("</g>")

    out.append(f'<g font-family="sans-serif" font-size="{_fmt(fs)}">')
    for v in leaves:
        x, y = d.positions[v]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="#fff" stroke="#000" '
                   f'stroke-width="{_fmt(sw)}"/>')
        out.append(f'<text x="{_fmt(x + r)}" y="{_fmt(y - r)}">{escape(str(d.vertex_labels[v]))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
