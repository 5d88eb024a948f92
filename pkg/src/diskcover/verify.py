"""Certified decision procedure for "do these unit disks cover this rectangle?".

The rectangle is split into near-square boxes which are refined as a
quadtree.  A box is accepted when

* all four of its corners lie in one disk (a disk is convex), or
* it meets at most ``UNION_MAX`` disks and every arc of their boundary
  circles inside the box is covered by some *other* disk.  If the union
  left a hole in the box, the hole's boundary would contain a point lying
  on exactly one circle and outside every other disk, so arc coverage
  certifies the box.  This is what lets tight coverings (hexagonal lattice
  triple points, square-chain junctions) be certified at all.

A box whose center lies outside every disk (checked in exact rational
arithmetic) yields an ``Uncovered`` verdict with that center as witness.
Boxes that shrink below the resolution without being settled make the
verdict ``Undecided``.

Acceptance forgives binary64 noise: squared distances may exceed 1 by
``COVER_TOL`` and arc coverage gaps up to ``ARC_TOL`` radians are closed.
Witnesses carry no tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .exceptions import DomainError
from .geom import Covering, Point

COVER_TOL = 1e-12
ARC_TOL = 1e-9
UNION_MAX = 8
DEFAULT_EPS = 1e-3
MAX_INITIAL_BOXES = 4096

TWO_PI = 2.0 * math.pi


class Status(str, enum.Enum):
    COVERED = "Covered"
    UNCOVERED = "Uncovered"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class CoverageVerdict:
    status: Status
    witness: Optional[Point]
    resolution: float
    cells: int = 0

    def __post_init__(self):
        if (self.status is Status.UNCOVERED) != (self.witness is not None):
            raise ValueError("a witness is required exactly when the verdict is Uncovered")

    @property
    def covered(self) -> bool:
        return self.status is Status.COVERED


def strictly_outside_all(q, centers: np.ndarray) -> bool:
    """Exact test that ``q`` lies outside every closed unit disk."""
    qx, qy = float(q[0]), float(q[1])
    if centers.shape[0] == 0:
        return True
    d2 = (centers[:, 0] - qx) ** 2 + (centers[:, 1] - qy) ** 2
    # Far disks are decided by floats; only near-boundary ones need rationals.
    if np.any(d2 < 1.0 - 1e-9):
        return False
    fx, fy = Fraction(qx), Fraction(qy)
    for cx, cy in centers[d2 <= 1.0 + 1e-9]:
        dx = fx - Fraction(float(cx))
        dy = fy - Fraction(float(cy))
        if dx * dx + dy * dy <= 1:
            return False
    return True


def _arcs_in_box(c, box) -> list[tuple[float, float]]:
    """Angle intervals in ``[0, 2pi]`` where the unit circle around ``c`` lies in ``box``."""
    cx, cy = c
    x0, y0, x1, y1 = box
    cuts = [0.0, TWO_PI]
    for x in (x0, x1):
        dx = x - cx
        if abs(dx) <= 1.0:
            t = math.acos(dx)
            cuts.extend((t % TWO_PI, (-t) % TWO_PI))
    for y in (y0, y1):
        dy = y - cy
        if abs(dy) <= 1.0:
            t = math.asin(dy)
            cuts.extend((t % TWO_PI, (math.pi - t) % TWO_PI))
    cuts.sort()
    arcs: list[tuple[float, float]] = []
    slack = 1e-12
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= ARC_TOL:
            continue
        m = 0.5 * (a + b)
        px, py = cx + math.cos(m), cy + math.sin(m)
        if x0 - slack <= px <= x1 + slack and y0 - slack <= py <= y1 + slack:
            if arcs and a - arcs[-1][1] <= ARC_TOL:
                arcs[-1] = (arcs[-1][0], b)
            else:
                arcs.append((a, b))
    return arcs


def _covering_intervals(i: int, centers: np.ndarray) -> list[tuple[float, float]]:
    """Angle intervals of circle ``i`` that lie inside the other disks."""
    ci = centers[i]
    out = []
    for j in range(centers.shape[0]):
        if j == i:
            continue
        dx, dy = centers[j, 0] - ci[0], centers[j, 1] - ci[1]
        d = math.hypot(dx, dy)
        if d >= 2.0 or d == 0.0:
            continue
        phi = math.atan2(dy, dx) % TWO_PI
        alpha = math.acos(d / 2.0) + ARC_TOL
        lo, hi = phi - alpha, phi + alpha
        if lo < 0.0:
            out.append((lo + TWO_PI, TWO_PI))
            out.append((0.0, hi))
        elif hi > TWO_PI:
            out.append((lo, TWO_PI))
            out.append((0.0, hi - TWO_PI))
        else:
            out.append((lo, hi))
    out.sort()
    return out


def _first_gap(arc, intervals) -> Optional[float]:
    """Angle inside ``arc`` not covered by ``intervals`` (sorted), or None."""
    a, b = arc
    cur = a
    for s, e in intervals:
        if s > cur:
            return 0.5 * (cur + min(s, b))
        if e > cur:
            cur = e
            if cur >= b:
                return None
    if cur >= b:
        return None
    return 0.5 * (cur + b)


def _union_test(box, centers: np.ndarray):
    """Arc-coverage certificate for ``box``.

    Returns ``(True, None)`` when certified, otherwise ``(False, q)`` with
    ``q`` a candidate witness point (possibly None).
    """
    for i in range(centers.shape[0]):
        arcs = _arcs_in_box(centers[i], box)
        if not arcs:
            continue
        intervals = _covering_intervals(i, centers)
        for arc in arcs:
            t = _first_gap(arc, intervals)
            if t is None:
                continue
            size = max(box[2] - box[0], box[3] - box[1])
            ux, uy = math.cos(t), math.sin(t)
            for h in (1e-3 * size, 1e-6 * size, 1e-9):
                qx = centers[i, 0] + (1.0 + h) * ux
                qy = centers[i, 1] + (1.0 + h) * uy
                if box[0] <= qx <= box[2] and box[1] <= qy <= box[3]:
                    return False, (qx, qy)
            return False, None
    return True, None


def _initial_boxes(w: float, h: float) -> np.ndarray:
    """Near-square boxes tiling the rectangle, at most ``MAX_INITIAL_BOXES`` of them."""
    if w >= h:
        m = min(MAX_INITIAL_BOXES, max(1, math.ceil(w / h - 1e-12)))
        xs = np.linspace(0.0, w, m + 1)
        xs[-1] = w
        return np.column_stack([xs[:-1], np.zeros(m), xs[1:], np.full(m, h)])
    m = min(MAX_INITIAL_BOXES, max(1, math.ceil(h / w - 1e-12)))
    ys = np.linspace(0.0, h, m + 1)
    ys[-1] = h
    return np.column_stack([np.zeros(m), ys[:-1], np.full(m, w), ys[1:]])


def verify(c: Covering, eps: float = DEFAULT_EPS) -> CoverageVerdict:
    """Decide whether the disks of ``c`` cover its rectangle.

    ``eps`` is the smallest box side the subdivision may reach.
    """
    if not eps > 0:
        raise DomainError(f"resolution must be positive, got {eps}")
    w, h = c.rect.width, c.rect.height
    if c.n == 0:
        return CoverageVerdict(Status.UNCOVERED, Point(0.0, 0.0), max(w, h))
    centers = np.unique(c.centers, axis=0)
    cx = centers[:, 0][None, :]
    cy = centers[:, 1][None, :]

    boxes = _initial_boxes(w, h)
    resolution = float(np.max(np.maximum(boxes[:, 2] - boxes[:, 0], boxes[:, 3] - boxes[:, 1])))
    cells = 0
    undecided = False
    while boxes.shape[0]:
        cells += boxes.shape[0]
        x0, y0, x1, y1 = (boxes[:, k][:, None] for k in range(4))
        # Nearest point of each box to each center decides whether they meet.
        nx = np.clip(cx, x0, x1) - cx
        ny = np.clip(cy, y0, y1) - cy
        touching = nx * nx + ny * ny <= 1.0 + COVER_TOL
        fx = np.maximum(np.abs(cx - x0), np.abs(cx - x1))
        fy = np.maximum(np.abs(cy - y0), np.abs(cy - y1))
        inside_one = np.any(fx * fx + fy * fy <= 1.0 + COVER_TOL, axis=1)

        mx = 0.5 * (boxes[:, 0] + boxes[:, 2])
        my = 0.5 * (boxes[:, 1] + boxes[:, 3])
        cd2 = (cx - mx[:, None]) ** 2 + (cy - my[:, None]) ** 2
        center_out = ~np.any(cd2 <= 1.0, axis=1)

        split = []
        for k in np.flatnonzero(~inside_one):
            box = boxes[k]
            if center_out[k] and strictly_outside_all((mx[k], my[k]), centers):
                return CoverageVerdict(Status.UNCOVERED, Point(float(mx[k]), float(my[k])), resolution, cells)
            near = centers[touching[k]]
            if near.shape[0] <= UNION_MAX:
                ok, q = _union_test(box, near)
                if ok:
                    continue
                if q is not None and strictly_outside_all(q, centers):
                    return CoverageVerdict(Status.UNCOVERED, Point(float(q[0]), float(q[1])), resolution, cells)
            if max(box[2] - box[0], box[3] - box[1]) < eps:
                undecided = True
                continue
            split.append(box)

        if not split:
            break
        parents = np.array(split)
        xm = 0.5 * (parents[:, 0] + parents[:, 2])
        ym = 0.5 * (parents[:, 1] + parents[:, 3])
        a, b, e, f = parents.T
        boxes = np.concatenate(
            [
                np.column_stack([a, b, xm, ym]),
                np.column_stack([xm, b, e, ym]),
                np.column_stack([a, ym, xm, f]),
                np.column_stack([xm, ym, e, f]),
            ]
        )
        resolution = min(resolution, float(np.max(np.maximum(boxes[:, 2] - boxes[:, 0], boxes[:, 3] - boxes[:, 1]))))

    status = Status.UNDECIDED if undecided else Status.COVERED
    return CoverageVerdict(status, None, resolution, cells)


def scale_to_cover(
    c: Covering,
    tol: float = 1e-6,
    eps: float = DEFAULT_EPS,
    *,
    guess: float = 1.0,
    floor: float = 0.0,
    verifier: Callable[[Covering, float], CoverageVerdict] = verify,
) -> float:
    """Largest factor ``s`` (to within ``tol``) such that the rectangle scaled by
    ``s`` about its center is certified Covered.

    Covered is assumed monotone under shrinking about the center.  Returns 0
    when not even a rectangle of side ``tol`` times the original is covered,
    or when ``floor > 0`` and the factor ``floor`` is not covered (the caller
    only cares about answers above ``floor``).
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    def ok(s: float) -> bool:
        return verifier(c.scaled(s), eps).covered

    if 0.0 < floor < guess and not ok(floor):
        return 0.0
    if ok(guess):
        lo = guess
        step = 2.0 * tol
        hi = lo + step
        while ok(hi):
            lo = hi
            step *= 4.0
            hi = lo + step
            if hi > 1e6:
                return lo
    else:
        hi = guess
        lo = guess - 2.0 * tol
        step = 2.0 * tol
        while lo > tol and not ok(lo):
            hi = lo
            step *= 4.0
            lo = hi - step
        if lo <= tol:
            lo = tol
            if not ok(lo):
                return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def sample_check(c: Covering, samples: int = 10_000, seed: int = 0) -> bool:
    """Uniform random points of the rectangle all lie in some disk (up to ``COVER_TOL``).

    Independent of the subdivision; a cheap sanity check on Covered verdicts.
    """
    rng = np.random.default_rng(seed)
    pts = rng.random((samples, 2)) * np.array([c.rect.width, c.rect.height])
    pts = np.vstack([pts, c.rect.corners()])
    ok = np.zeros(pts.shape[0], dtype=bool)
    for chunk in np.array_split(np.arange(c.n), max(1, c.n // 64)):
        d = pts[:, None, :] - c.centers[chunk][None, :, :]
        ok |= np.any(np.einsum("ijk,ijk->ij", d, d) <= 1.0 + COVER_TOL, axis=1)
    return bool(np.all(ok))
