"""Explicit coverings: the square chain and hexagonal lattices.

Hexagonal lattice layout: centers at ``(sqrt(3) i + (j mod 2) sqrt(3)/2, 3 j / 2)``
for ``i`` in ``range(cols)`` and ``j`` in ``range(rows)``.  Two neighbours in a
row sit ``sqrt(3)`` apart, so their circles cross at height ``1/2`` above and
below the row line.  The inscribed hexagons therefore tile a band of height
``3 rows / 2 - 1/2`` and width ``sqrt(3) cols - sqrt(3)/2``, which is the
rectangle used here.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConstructionTooSmallError, DomainError
from .geom import Covering, Rect

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Where discarded disks are parked: far from any rectangle we build.
_PARKING_OFFSET = 1e6


@dataclass
class ConstructionReport:
    covering: Covering
    k: int | None
    disks_used: int
    disks_discarded: int
    area: float
    area_formula_value: float
    name: str = ""
    rows: int | None = None
    cols: int | None = None

    @property
    def n(self) -> int:
        return self.disks_used + self.disks_discarded

    def metadata(self) -> dict:
        meta = {"construction": self.name, "disks_used": self.disks_used, "disks_discarded": self.disks_discarded}
        if self.k is not None:
            meta["k"] = self.k
        return meta


def _check_positive_int(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _park(count: int, rect: Rect) -> np.ndarray:
    """Centers for discarded disks, far to the right of the rectangle."""
    xs = rect.width + _PARKING_OFFSET + 4.0 * np.arange(count)
    return np.column_stack([xs, np.full(count, rect.height / 2.0)])


def square_chain(n: int) -> ConstructionReport:
    """``n`` squares of side ``sqrt(2)`` in a row, each inscribed in its own disk."""
    n = _check_positive_int("n", n)
    side = SQRT2
    rect = Rect(n * side, side)
    centers = np.column_stack([(np.arange(n) + 0.5) * side, np.full(n, side / 2.0)])
    return ConstructionReport(Covering(rect, centers), None, n, 0, rect.area, 2.0 * n, "square-chain")


def hex_dims(rows: int, cols: int) -> tuple[float, float]:
    """(width, height) of the rectangle covered by a ``rows x cols`` hexagonal lattice."""
    return SQRT3 * cols - SQRT3 / 2.0, 1.5 * rows - 0.5


def hex_area_formula(k: int) -> float:
    return (1.5 * k - 0.5) * (SQRT3 * k - SQRT3 / 2.0)


def _lattice(rows: int, cols: int) -> Covering:
    i, j = np.meshgrid(np.arange(cols), np.arange(rows), indexing="xy")
    i, j = i.ravel(), j.ravel()
    pts = np.column_stack([SQRT3 * i + (j % 2) * (SQRT3 / 2.0), 1.5 * j])
    width, height = hex_dims(rows, cols)
    # Center the rectangle on the bounding box of the centers.
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    mid = 0.5 * (lo + hi)
    offset = np.array([width / 2.0, height / 2.0]) - mid
    return Covering(Rect(width, height), pts + offset)


def _certify(cov: Covering, k_used: int) -> Covering:
    """Nudge the lattice against the rectangle until the verifier certifies it."""
    from .verify import verify

    if verify(cov).covered:
        return cov
    steps = [d * 1e-3 for d in range(-5, 6)]
    for dx in steps:
        for dy in steps:
            moved = Covering(cov.rect, cov.centers + np.array([dx, dy]))
            if verify(moved).covered:
                logger.info("lattice with %d disks certified after nudge (%g, %g)", k_used, dx, dy)
                return moved
    logger.warning("lattice with %d disks could not be certified Covered", k_used)
    return cov


def hex_lattice(k: int) -> ConstructionReport:
    """``k x k`` hexagonal covering lattice with its rectangle."""
    k = _check_positive_int("k", k)
    cov = _certify(_lattice(k, k), k * k)
    return ConstructionReport(cov, k, k * k, 0, cov.rect.area, hex_area_formula(k), "hex", k, k)


def largest_square_below(n: int) -> int:
    """``floor(sqrt(n))``; its square lies in ``(n - 2 sqrt(n), n]``."""
    n = _check_positive_int("n", n)
    return math.isqrt(n)


def _with_discards(report: ConstructionReport, n: int) -> ConstructionReport:
    extra = n - report.disks_used
    if extra == 0:
        return report
    cov = report.covering
    centers = np.vstack([cov.centers, _park(extra, cov.rect)])
    report.covering = Covering(cov.rect, centers)
    report.disks_discarded = extra
    return report


def hex_construction_for_n(n: int) -> ConstructionReport:
    """Hexagonal lattice on the largest square number of disks not above ``n``.

    Unused disks are parked far outside the rectangle so ``n`` is preserved.
    """
    n = _check_positive_int("n", n)
    return _with_discards(hex_lattice(largest_square_below(n)), n)


def anisotropic_lattice(n: int, c1: float) -> ConstructionReport:
    """Lattice with ``floor(c1 sqrt n)`` rows and ``floor(sqrt(n) / c1)`` columns.

    Rows are the 3/2-pitch direction, matching the coefficient pairing
    ``(9 sqrt3 / 4) c1 + 2 sqrt3 c2`` of the deficit estimate.
    """
    n = _check_positive_int("n", n)
    if not c1 > 0:
        raise DomainError(f"c1 must be positive, got {c1}")
    root = math.sqrt(n)
    # The guard keeps exact products such as sqrt(2/3) * sqrt(600) = 20 from flooring to 19.
    rows = math.floor(c1 * root + 1e-9)
    cols = math.floor(root / c1 + 1e-9)
    if rows < 1 or cols < 1:
        raise ConstructionTooSmallError(f"c1={c1} gives a {rows} x {cols} lattice for n={n}")
    if rows * cols > n:
        raise ConstructionTooSmallError(f"{rows} x {cols} lattice needs more than n={n} disks")
    cov = _certify(_lattice(rows, cols), rows * cols)
    width, height = hex_dims(rows, cols)
    report = ConstructionReport(cov, None, rows * cols, 0, cov.rect.area, width * height, "aniso", rows, cols)
    return _with_discards(report, n)
