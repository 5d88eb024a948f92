"""Planar primitives and closed-form chord/polygon formulas.

All lengths are measured in units of the disk radius, which is fixed at 1.
Disks are closed: a point on the boundary circle is covered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exceptions import DomainError, InvalidPolygonError, NumericError

# Rounding excursions of sqrt/arccos arguments up to this size are clamped;
# anything larger is a genuine misuse and raises.
CLAMP_TOL = 1e-12

# Relative cross-product floor below which three polygon vertices count as collinear.
COLLINEAR_TOL = 1e-12


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Disk:
    """Closed unit disk; the radius is not stored."""

    center: Point

    @property
    def radius(self) -> float:
        return 1.0


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle ``[0, width] x [0, height]``."""

    width: float
    height: float

    def __post_init__(self):
        if not (math.isfinite(self.width) and math.isfinite(self.height)):
            raise DomainError("rectangle dimensions must be finite")
        if self.width <= 0 or self.height <= 0:
            raise DomainError(f"rectangle dimensions must be positive, got {self.width} x {self.height}")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.width + self.height)

    @property
    def center(self) -> Point:
        return Point(self.width / 2.0, self.height / 2.0)

    def corners(self) -> np.ndarray:
        """Counterclockwise corners starting at the origin."""
        w, h = self.width, self.height
        return np.array([[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]])


@dataclass
class Covering:
    """A rectangle together with the centers of ``n`` unit disks.

    Whether the disks actually cover the rectangle is not an invariant;
    use :func:`diskcover.verify.verify` to certify it.
    """

    rect: Rect
    centers: np.ndarray = field(repr=False)

    def __post_init__(self):
        centers = np.asarray(self.centers, dtype=float)
        if centers.ndim == 1 and centers.size == 0:
            centers = centers.reshape(0, 2)
        if centers.ndim != 2 or centers.shape[1] != 2:
            raise DomainError(f"centers must have shape (n, 2), got {centers.shape}")
        if not np.all(np.isfinite(centers)):
            raise DomainError("disk centers must be finite")
        self.centers = centers

    @classmethod
    def from_disks(cls, rect: Rect, disks: Iterable[Disk]) -> "Covering":
        return cls(rect, np.array([[d.center.x, d.center.y] for d in disks], dtype=float).reshape(-1, 2))

    @property
    def n(self) -> int:
        return int(self.centers.shape[0])

    @property
    def disks(self) -> list[Disk]:
        return [Disk(Point(float(x), float(y))) for x, y in self.centers]

    @property
    def area(self) -> float:
        return self.rect.area

    def scaled(self, s: float) -> "Covering":
        """Scale the rectangle by ``s`` about its center, keeping the disks fixed.

        The result is re-anchored at the origin, so the disk centers shift.
        """
        if s <= 0:
            raise DomainError(f"scale factor must be positive, got {s}")
        w, h = self.rect.width, self.rect.height
        shift = np.array([(s - 1.0) * w / 2.0, (s - 1.0) * h / 2.0])
        return Covering(Rect(s * w, s * h), self.centers + shift)

    def with_dims(self, width: float, height: float) -> "Covering":
        """Replace the rectangle by one of the given size sharing the same center."""
        shift = np.array([(width - self.rect.width) / 2.0, (height - self.rect.height) / 2.0])
        return Covering(Rect(width, height), self.centers + shift)


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with counterclockwise vertices."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidPolygonError(f"a polygon needs at least 3 vertices, got shape {v.shape}")
        nxt = np.roll(v, -1, axis=0)
        edges = nxt - v
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(lengths == 0.0):
            raise InvalidPolygonError("polygon has repeated consecutive vertices")
        e_next = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * e_next[:, 1] - edges[:, 1] * e_next[:, 0]
        scale = lengths * np.roll(lengths, -1)
        if np.any(cross < -COLLINEAR_TOL * scale):
            raise InvalidPolygonError("polygon is not convex and counterclockwise")
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def area(self) -> float:
        return polygon_area(self)


def _as_vertices(p) -> np.ndarray:
    if isinstance(p, ConvexPolygon):
        return p.vertices
    v = np.asarray(p, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise InvalidPolygonError(f"a polygon needs at least 3 vertices, got shape {v.shape}")
    return v


def polygon_area(p: ConvexPolygon | Sequence[Sequence[float]]) -> float:
    """Shoelace area of a polygon (absolute value)."""
    v = _as_vertices(p)
    x, y = v[:, 0], v[:, 1]
    return abs(0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def clamp_sqrt(value, tol: float = CLAMP_TOL):
    """``sqrt`` that forgives negative rounding noise down to ``-tol``."""
    arr = np.asarray(value, dtype=float)
    if np.any(arr < -tol):
        raise NumericError(f"negative radicand {float(np.min(arr)):.3e} beyond tolerance")
    out = np.sqrt(np.maximum(arr, 0.0))
    return float(out) if out.ndim == 0 else out


def clamp_arccos(value, tol: float = CLAMP_TOL):
    """``arccos`` that forgives excursions beyond [-1, 1] up to ``tol``."""
    arr = np.asarray(value, dtype=float)
    if np.any(np.abs(arr) > 1.0 + tol):
        raise NumericError(f"arccos argument {float(np.max(np.abs(arr))):.17g} outside [-1, 1]")
    out = np.arccos(np.clip(arr, -1.0, 1.0))
    return float(out) if out.ndim == 0 else out


def regular_polygon_area(i: int) -> float:
    """Area ``K_i`` of the regular ``i``-gon inscribed in the unit circle."""
    if i < 3:
        raise DomainError(f"a polygon needs at least 3 sides, got {i}")
    return (i / 2.0) * math.sin(2.0 * math.pi / i)


def _check_chord(length, low_open: bool):
    arr = np.asarray(length, dtype=float)
    bad = (arr <= 0.0) if low_open else (arr < 0.0)
    if np.any(bad | (arr > 2.0) | ~np.isfinite(arr)):
        interval = "(0, 2]" if low_open else "[0, 2]"
        raise DomainError(f"chord length must lie in {interval}")
    return arr


def chord_triangle_area(length):
    """Area of the triangle spanned by the center and a chord of the unit circle."""
    ell = _check_chord(length, low_open=True)
    out = ell / 4.0 * clamp_sqrt(4.0 - ell * ell)
    return float(out) if np.ndim(out) == 0 else out


def central_angle(length):
    """Angle subtended at the center by a chord of the given length."""
    ell = _check_chord(length, low_open=False)
    return clamp_arccos(1.0 - ell * ell / 2.0)


def shared_chord(l1, l2):
    """Length of the side shared by two adjacent boundary cells with boundary sides ``l1``, ``l2``."""
    a = _check_chord(l1, low_open=True)
    b = _check_chord(l2, low_open=True)
    inner = clamp_sqrt((4.0 - a * a) * (4.0 - b * b))
    out = clamp_sqrt((4.0 - a * b + inner) / 2.0)
    return float(out) if np.ndim(out) == 0 else out


def point_in_disk(q, d: Disk | Point | Sequence[float]) -> bool:
    """Closed-disk membership by squared distance."""
    c = d.center if isinstance(d, Disk) else d
    dx = q[0] - c[0]
    dy = q[1] - c[1]
    return dx * dx + dy * dy <= 1.0
