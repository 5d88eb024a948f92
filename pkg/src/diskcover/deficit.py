"""Per-boundary-cell deficit functions and their minimization.

``f(x, y)`` is the deficit contributed by a boundary cell whose side on the
rectangle has length ``x`` when the preceding boundary cell's side has
length ``y``, after the side count has been eliminated.  ``f_tilde`` moves
half of the ``-(x/4) sqrt(4 - x^2)`` term onto the neighbour, which leaves
every cyclic sum unchanged.  ``g`` equals ``f_tilde`` on ``x + y >= 2`` and
its lower convex envelope on ``x + y < 2``.

With the perimeter ``P`` fixed, ``omega`` boundary cells of common side
``ell = P / omega`` contribute ``omega (K6 - K5 + g(ell, ell))``, so the
quantity minimized over the grid is the deficit per unit of boundary
length, ``(K6 - K5 + g(x, y)) / ((x + y) / 2)``.

All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .bounds import K_GAP
from .exceptions import DomainError
from .geom import clamp_arccos, clamp_sqrt

INV_4_SQRT2 = 1.0 / (4.0 * math.sqrt(2.0))
GRID_MARGIN = 0.05


def _check_sides(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for v in (x, y):
        if np.any((v <= 0.0) | (v > 2.0) | ~np.isfinite(v)):
            raise DomainError("side lengths must lie in (0, 2]")
    return x, y


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def _shared_chord_triangle(x, y):
    """Area of the center triangle on the chord shared by the two cells."""
    root = clamp_sqrt((4.0 - x * x) * (4.0 - y * y))
    return INV_4_SQRT2 * clamp_sqrt(2.0 * (x * x + y * y) - x * x * y * y + x * y * root)


def _sine_term(x, y):
    root = clamp_sqrt((4.0 - x * x) * (4.0 - y * y))
    angle = clamp_arccos((x * y - root) / 4.0) + clamp_arccos(1.0 - x * x / 2.0)
    return np.sin(angle / 2.0)


def f(x, y):
    """Deficit of a boundary cell with own side ``x`` and preceding side ``y``."""
    x, y = _check_sides(x, y)
    out = -x / 4.0 * clamp_sqrt(4.0 - x * x) - _shared_chord_triangle(x, y) + _sine_term(x, y)
    return _scalar(out)


def f_tilde(x, y):
    """``f`` with half of the own-side triangle shifted onto the neighbour."""
    x, y = _check_sides(x, y)
    out = (
        -x / 8.0 * clamp_sqrt(4.0 - x * x)
        - y / 8.0 * clamp_sqrt(4.0 - y * y)
        - _shared_chord_triangle(x, y)
        + _sine_term(x, y)
    )
    return _scalar(out)


def diagonal_closed_form(ell):
    """``f_tilde(ell, ell) = 1 - (ell / 2) sqrt(4 - ell^2)``."""
    ell = np.asarray(ell, dtype=float)
    return _scalar(1.0 - ell / 2.0 * clamp_sqrt(4.0 - ell * ell))


def cyclic_sum(func, sides) -> float:
    """``sum_i func(sides[i], sides[i - 1])`` over a cyclic sequence."""
    s = np.asarray(sides, dtype=float)
    return float(np.sum(func(s, np.roll(s, 1))))


def _grid(step: float, lo: float = 0.0, hi: float = 2.0) -> np.ndarray:
    """Points ``k * step`` inside ``[lo, hi]`` (computed from integers, no drift)."""
    k0 = math.ceil(lo / step - 1e-9)
    k1 = math.floor(hi / step + 1e-9)
    pts = np.arange(k0, k1 + 1) * step
    pts = pts[(pts > 0.0) & (pts <= 2.0)]
    return pts


def symmetry_deviation(grid_step: float) -> float:
    """``sup |f_tilde(x, y) - f_tilde(y, x)|`` over the grid on ``[0.05, 1.95]^2``."""
    if not 0.0 < grid_step <= 0.1:
        raise DomainError(f"grid step must lie in (0, 0.1], got {grid_step}")
    g = _grid(grid_step, GRID_MARGIN, 2.0 - GRID_MARGIN)
    X, Y = np.meshgrid(g, g, indexing="ij")
    F = f_tilde(X, Y)
    return float(np.max(np.abs(F - F.T)))


def negative_gradient_check(grid_step: float) -> bool:
    """Both central-difference partials of ``f_tilde`` are negative on
    ``{x, y >= 0.05, x + y < 1.95}``."""
    if not 0.0 < grid_step <= 0.05:
        raise DomainError(f"grid step must lie in (0, 0.05], got {grid_step}")
    g = _grid(grid_step, GRID_MARGIN, 2.0 - GRID_MARGIN)
    X, Y = np.meshgrid(g, g, indexing="ij")
    mask = X + Y < 2.0 - GRID_MARGIN - 1e-12
    x, y = X[mask], Y[mask]
    h = 1e-6
    dx = (f_tilde(x + h, y) - f_tilde(x - h, y)) / (2.0 * h)
    dy = (f_tilde(x, y + h) - f_tilde(x, y - h)) / (2.0 * h)
    return bool(np.all(dx < 1e-9) and np.all(dy < 1e-9))


def _row_conjugate(values: np.ndarray, points: np.ndarray, slopes: np.ndarray, chunk: int = 32) -> np.ndarray:
    """``out[i, k] = max_j (slopes[k] * points[j] - values[i, j])``."""
    out = np.empty((values.shape[0], slopes.size))
    sp = slopes[None, :, None] * points[None, None, :]
    for a in range(0, values.shape[0], chunk):
        block = values[a : a + chunk]
        out[a : a + chunk] = np.max(sp - block[:, None, :], axis=2)
    return out


def lower_convex_envelope(F: np.ndarray, xs: np.ndarray, ys: np.ndarray, n_slopes: int = 256) -> np.ndarray:
    """Discrete biconjugate of ``F`` sampled on ``xs x ys``; ``+inf`` entries lie outside the domain.

    The two-dimensional conjugate is computed one axis at a time.  The result
    is a convex function that is ``<= F`` at every finite sample, exact up to
    the slope resolution.
    """
    finite = np.isfinite(F)
    if finite.sum() < 3:
        raise DomainError("degenerate grid: fewer than three finite samples")
    with np.errstate(invalid="ignore"):
        gx, gy = np.gradient(np.where(finite, F, np.nan), xs, ys)
    s1 = np.linspace(np.nanpercentile(gx, 0.5), np.nanpercentile(gx, 99.5), n_slopes)
    s2 = np.linspace(np.nanpercentile(gy, 0.5), np.nanpercentile(gy, 99.5), n_slopes)
    # conjugate: Fs[k1, k2] = max_{i,j} s1 x_i + s2 y_j - F[i, j]
    inner = _row_conjugate(F, ys, s2)
    Fs = _row_conjugate(-inner.T, xs, s1).T
    # biconjugate: G[i, j] = max_{k1,k2} s1 x_i + s2 y_j - Fs[k1, k2]
    inner = _row_conjugate(Fs, s2, ys)
    return _row_conjugate(-inner.T, s1, xs).T


@dataclass(frozen=True)
class MinimizationResult:
    grid_resolution: float
    diag_argmin: float
    diag_min_value: float
    diag_min_rate: float
    full_grid_min_value: float
    full_grid_min_rate: float
    full_grid_argmin: tuple[float, float]
    symmetry_sup_deviation: float
    envelope_min_in_symmetric_region: bool
    envelope_max_excess: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["full_grid_argmin"] = list(self.full_grid_argmin)
        return d


def _first_argmin(values: np.ndarray) -> tuple[int, ...]:
    # np.argmin returns the first occurrence in C order: ties go to the smallest index.
    return np.unravel_index(int(np.argmin(values)), values.shape)


def convex_envelope_g(grid_step: float, n_slopes: int = 256) -> MinimizationResult:
    """Grid minimization of the boundary-cell deficit with ``g`` in place of ``f_tilde``.

    ``*_min_value`` fields report the per-cell deficit ``K6 - K5 + g`` at the
    argmin of the per-length rate ``(K6 - K5 + g) / ((x + y) / 2)``; the
    ``*_min_rate`` fields report the rate itself.
    """
    if not 0.0 < grid_step <= 0.05:
        raise DomainError(f"grid step must lie in (0, 0.05], got {grid_step}")
    g = _grid(grid_step)
    if g.size < 3:
        raise DomainError("degenerate grid")
    X, Y = np.meshgrid(g, g, indexing="ij")
    F = f_tilde(X, Y)
    closed = X + Y <= 2.0 + 1e-12
    G_tri = lower_convex_envelope(np.where(closed, F, np.inf), g, g, n_slopes)
    below = X + Y < 2.0 - 1e-12
    G = np.where(below, G_tri, F)
    excess = float(np.max(np.where(closed, G_tri - F, -np.inf)))

    per_cell = K_GAP + G
    rate = per_cell / ((X + Y) / 2.0)
    i, j = _first_argmin(rate)
    diag = np.arange(g.size)
    d = int(np.argmin(rate[diag, diag]))
    return MinimizationResult(
        grid_resolution=grid_step,
        diag_argmin=float(g[d]),
        diag_min_value=float(per_cell[d, d]),
        diag_min_rate=float(rate[d, d]),
        full_grid_min_value=float(per_cell[i, j]),
        full_grid_min_rate=float(rate[i, j]),
        full_grid_argmin=(float(X[i, j]), float(Y[i, j])),
        symmetry_sup_deviation=float(np.max(np.abs(F - F.T))),
        envelope_min_in_symmetric_region=bool(X[i, j] + Y[i, j] >= 2.0),
        envelope_max_excess=excess,
    )


def perimeter_deficit(omega: float, perimeter: float, lam: float | None = None) -> float:
    """``omega lam - (P / 2) sqrt(4 - (P / omega)^2)``: total deficit of ``omega`` equal boundary cells."""
    from .bounds import LAMBDA

    lam = LAMBDA if lam is None else lam
    u = perimeter / omega
    if not 0.0 < u <= 2.0:
        raise DomainError(f"boundary side P / omega must lie in (0, 2], got {u}")
    return omega * lam - perimeter / 2.0 * math.sqrt(4.0 - u * u)
