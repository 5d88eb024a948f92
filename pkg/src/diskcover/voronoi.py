"""Voronoi cells of disk centers clipped to the rectangle, and the planar net they form.

Each cell is built by clipping the rectangle with the perpendicular
bisector half-planes of the other sites, nearest first, stopping once the
bisector of the next site is farther than the current cell's radius.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .bounds import avg_sides_bound, epsilon_n
from .exceptions import DegenerateSitesError, TopologyError
from .geom import ConvexPolygon, Covering, Rect, polygon_area

__all__ = [
    "CellList",
    "NetStats",
    "VoronoiCell",
    "avg_sides_bound",
    "epsilon_n",
    "net_stats",
    "voronoi_cells",
]

logger = logging.getLogger(__name__)

MERGE_TOL = 1e-9


@dataclass
class VoronoiCell:
    site_index: int
    polygon: ConvexPolygon
    sides: int
    boundary_side_lengths: list[float]
    area: float
    is_corner: bool = False

    @property
    def on_boundary(self) -> bool:
        return bool(self.boundary_side_lengths)


class CellList(list):
    """List of nonempty cells; ``empty`` holds the indices of sites whose cell vanished."""

    def __init__(self, cells=(), empty=()):
        super().__init__(cells)
        self.empty = list(empty)


@dataclass
class NetStats:
    v: int
    e: int
    n: int
    side_histogram: dict[int, int]
    sum_sides: int
    boundary_cell_count: int
    boundary_edge_lengths: list[float]
    avg_sides: float
    corner_cells: list[int] = field(default_factory=list)

    @property
    def euler_characteristic(self) -> int:
        return self.v - self.e + self.n


def _clip(poly: list[tuple[float, float]], p, q) -> list[tuple[float, float]]:
    """Keep the part of ``poly`` at least as close to ``p`` as to ``q``."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    mx, my = 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])
    scale = math.hypot(dx, dy)
    vals = [((x - mx) * dx + (y - my) * dy) / scale for x, y in poly]
    if all(v <= MERGE_TOL * 1e-3 for v in vals):
        return poly
    out = []
    m = len(poly)
    for k in range(m):
        a, b = poly[k], poly[(k + 1) % m]
        fa, fb = vals[k], vals[(k + 1) % m]
        if fa <= 0.0:
            out.append(a)
        if (fa < 0.0 < fb) or (fb < 0.0 < fa):
            t = fa / (fa - fb)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


def _clean(poly: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Drop near-duplicate and collinear vertices."""
    pts: list[tuple[float, float]] = []
    for p in poly:
        if not pts or math.dist(p, pts[-1]) > MERGE_TOL:
            pts.append(p)
    if len(pts) > 1 and math.dist(pts[0], pts[-1]) <= MERGE_TOL:
        pts.pop()
    k = 0
    while len(pts) >= 3 and k < len(pts):
        a, b, c = pts[k - 1], pts[k], pts[(k + 1) % len(pts)]
        # |cross| / |ac| is the distance of b from the line through a and c.
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(cross) <= MERGE_TOL * math.dist(a, c):
            pts.pop(k)
            k = max(k - 1, 0)
        else:
            k += 1
    return pts


def _boundary_side(a, b, rect: Rect) -> bool:
    w, h = rect.width, rect.height
    for ax, ref in ((0, 0.0), (0, w), (1, 0.0), (1, h)):
        if abs(a[ax] - ref) <= MERGE_TOL and abs(b[ax] - ref) <= MERGE_TOL:
            return True
    return False


def _is_rect_corner(p, rect: Rect) -> bool:
    return (abs(p[0]) <= MERGE_TOL or abs(p[0] - rect.width) <= MERGE_TOL) and (
        abs(p[1]) <= MERGE_TOL or abs(p[1] - rect.height) <= MERGE_TOL
    )


def voronoi_cells(c: Covering) -> CellList:
    """Voronoi cells of the disk centers, clipped to the rectangle."""
    centers = c.centers
    n = c.n
    if n < 1:
        raise DegenerateSitesError("at least one site is required")
    tree = cKDTree(centers)
    if tree.query_pairs(r=1e-12):
        raise DegenerateSitesError("duplicate disk centers")
    rect = c.rect
    corners = [tuple(p) for p in rect.corners()]
    order = np.argsort(
        np.hypot(centers[:, None, 0] - centers[None, :, 0], centers[:, None, 1] - centers[None, :, 1]), axis=1
    )
    cells = []
    empty = []
    for i in range(n):
        p = tuple(centers[i])
        poly = corners
        reach = max(math.hypot(x - p[0], y - p[1]) for x, y in poly)
        for j in order[i, 1:]:
            q = centers[j]
            d = math.hypot(q[0] - p[0], q[1] - p[1])
            if d / 2.0 > reach + MERGE_TOL:
                break
            poly = _clip(poly, p, q)
            if len(poly) < 3:
                break
            reach = max(math.hypot(x - p[0], y - p[1]) for x, y in poly)
        poly = _clean(poly)
        if len(poly) < 3 or polygon_area(poly) <= MERGE_TOL**2:
            empty.append(i)
            continue
        verts = np.array(poly)
        m = len(poly)
        boundary = [
            math.dist(poly[k], poly[(k + 1) % m]) for k in range(m) if _boundary_side(poly[k], poly[(k + 1) % m], rect)
        ]
        cells.append(
            VoronoiCell(
                site_index=i,
                polygon=ConvexPolygon(verts),
                sides=m,
                boundary_side_lengths=boundary,
                area=polygon_area(verts),
                is_corner=any(_is_rect_corner(v, rect) for v in poly),
            )
        )
    if empty:
        logger.warning("sites with empty Voronoi cells: %s", empty)
    return CellList(cells, empty)


def _merge_vertices(points: np.ndarray) -> np.ndarray:
    """Union-find labels for points closer than ``MERGE_TOL``."""
    parent = np.arange(points.shape[0])

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in cKDTree(points).query_pairs(r=MERGE_TOL):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = np.array([find(a) for a in range(points.shape[0])])
    _, labels = np.unique(roots, return_inverse=True)
    return labels


def net_stats(cells: list[VoronoiCell], rect: Rect) -> NetStats:
    """Planar-graph statistics of the Voronoi net and the counting identities they satisfy."""
    n = len(cells)
    if n == 0:
        raise TopologyError("no cells")
    all_pts = np.vstack([cell.polygon.vertices for cell in cells])
    labels = _merge_vertices(all_pts)
    coords: dict[int, np.ndarray] = {}
    faces = []
    start = 0
    for cell in cells:
        m = len(cell.polygon)
        ids = [int(x) for x in labels[start : start + m]]
        for vid, pt in zip(ids, all_pts[start : start + m]):
            coords.setdefault(vid, pt)
        start += m
        face = [vid for k, vid in enumerate(ids) if vid != ids[k - 1]]
        faces.append(face)

    corner_ids = {vid for vid, pt in coords.items() if _is_rect_corner(pt, rect)}
    # Fuse collinear edges: a degree-2 vertex that is not a rectangle corner is spurious.
    while True:
        edges = Counter()
        for face in faces:
            for k in range(len(face)):
                edges[frozenset((face[k - 1], face[k]))] += 1
        degree = Counter()
        for edge in edges:
            for vid in edge:
                degree[vid] += 1
        spurious = {vid for vid, deg in degree.items() if deg == 2 and vid not in corner_ids}
        if not spurious:
            break
        faces = [[vid for vid in face if vid not in spurious] for face in faces]

    if any(len(face) < 3 for face in faces):
        raise TopologyError("a cell collapsed below three sides after vertex merging")
    if any(cnt > 2 for cnt in edges.values()):
        raise TopologyError("an edge is shared by more than two cells")

    boundary_lengths = []
    for edge, cnt in edges.items():
        if cnt == 1:
            a, b = (coords[vid] for vid in edge)
            if not _boundary_side(a, b, rect):
                raise TopologyError("an interior edge belongs to a single cell")
            boundary_lengths.append(float(math.dist(a, b)))

    v = len(degree)
    e = len(edges)
    sides = [len(face) for face in faces]
    hist = dict(sorted(Counter(sides).items()))
    sum_sides = sum(sides)
    boundary_cells = sum(
        1
        for face in faces
        if any(edges[frozenset((face[k - 1], face[k]))] == 1 for k in range(len(face)))
    )
    stats = NetStats(
        v=v,
        e=e,
        n=n,
        side_histogram=hist,
        sum_sides=sum_sides,
        boundary_cell_count=boundary_cells,
        boundary_edge_lengths=sorted(boundary_lengths),
        avg_sides=sum_sides / n,
        corner_cells=[cell.site_index for cell in cells if cell.is_corner],
    )
    if stats.euler_characteristic != 1:
        raise TopologyError(f"Euler identity fails: v - e + n = {stats.euler_characteristic}")
    if e > 3 * n + 1:
        raise TopologyError(f"edge bound fails: e = {e} > 3n + 1 = {3 * n + 1}")
    if 2 * e > 6 * n + 2 or sum_sides > 2 * e or (n >= 2 and sum_sides == 2 * e):
        raise TopologyError(f"side count bound fails: sum e_i = {sum_sides}, e = {e}, n = {n}")
    return stats
