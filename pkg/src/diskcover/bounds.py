"""Bound evaluators and the named constants of the two area theorems.

Notation: ``K_i`` is the area of the regular ``i``-gon inscribed in the unit
circle, ``R(n) = 2 (K6 - K5)(sqrt(2n) - 1)`` is the side-count penalty and
``Delta(n) = (3 sqrt3 / 2) n - S_n`` is the deficit of the best covered area
against the hexagonal density.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .exceptions import DomainError, NumericError
from .geom import regular_polygon_area

K5 = regular_polygon_area(5)
K6 = regular_polygon_area(6)
K_GAP = K6 - K5
LAMBDA = K_GAP + 1.0

HEX_DENSITY = 1.5 * math.sqrt(3.0)  # = K6, area per disk of the hexagonal covering

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def epsilon_n(n: int) -> float:
    """``2 sqrt(2/n) - 2/n``, how far the mean side count of the net stays below 6."""
    n = _check_n(n)
    return 2.0 * math.sqrt(2.0 / n) - 2.0 / n


def avg_sides_bound(n: int) -> float:
    """Upper bound ``6 - 2 sqrt(2/n) + 2/n`` on the mean number of sides of a Voronoi cell."""
    n = _check_n(n)
    return 6.0 - 2.0 * math.sqrt(2.0 / n) + 2.0 / n


def R_n(n: int) -> float:
    """Side-count penalty ``2 (K6 - K5)(sqrt(2n) - 1)``."""
    n = _check_n(n)
    return 2.0 * K_GAP * (math.sqrt(2.0 * n) - 1.0)


def theorem1_upper(n: int) -> float:
    """Strict upper bound ``K6 n - R(n)`` on the area coverable by ``n`` unit disks."""
    n = _check_n(n)
    return K6 * n - R_n(n)


def delta_n(n: int, area: float) -> float:
    """Deficit of ``area`` against the hexagonal density, ``(3 sqrt3 / 2) n - area``."""
    n = _check_n(n)
    if area < 0:
        raise DomainError(f"area must be non-negative, got {area}")
    return HEX_DENSITY * n - area


def psi_refinement(psi: float) -> float:
    """Improvement factor ``(sqrt(psi) + 1/sqrt(psi)) / 2`` for side ratio ``psi``."""
    if not psi > 0:
        raise DomainError(f"side ratio must be positive, got {psi}")
    r = math.sqrt(psi)
    return 0.5 * (r + 1.0 / r)


def eta(y: float) -> float:
    """``sin y - y cos y``; increasing on ``[0, pi]``."""
    if not 0.0 <= y <= math.pi:
        raise DomainError(f"eta is defined on [0, pi], got {y}")
    return math.sin(y) - y * math.cos(y)


def rho(theta: float, x: float) -> float:
    """``x sin(2 pi / x) - (x - 2) sin((2 pi - theta) / (x - 2))``."""
    if not 0.0 < theta <= math.pi:
        raise DomainError(f"theta must lie in (0, pi], got {theta}")
    if not x >= 3.0:
        raise DomainError(f"x must be at least 3, got {x}")
    return x * math.sin(2.0 * math.pi / x) - (x - 2.0) * math.sin((2.0 * math.pi - theta) / (x - 2.0))


def rho_derivative(theta: float, x: float) -> float:
    """``d rho / dx = eta(2 pi / x) - eta((2 pi - theta) / (x - 2))`` for ``x >= 4``."""
    if not x >= 4.0:
        raise DomainError(f"the derivative form needs x >= 4, got {x}")
    return eta(2.0 * math.pi / x) - eta((2.0 * math.pi - theta) / (x - 2.0))


def rho_min(theta: float) -> tuple[float, float]:
    """Minimizer ``4 pi / theta`` of ``rho_theta`` over ``x >= 4`` and the minimum ``2 sin(theta / 2)``."""
    if not 0.0 < theta <= math.pi:
        raise DomainError(f"theta must lie in (0, pi], got {theta}")
    x_star = 4.0 * math.pi / theta
    value = rho(theta, x_star)
    closed = 2.0 * math.sin(theta / 2.0)
    if abs(value - closed) > 1e-12:
        raise NumericError(f"rho({theta}, {x_star}) = {value} differs from 2 sin(theta/2) = {closed}")
    if rho(theta, 3.0) < value:
        raise NumericError("rho at x = 3 falls below the x >= 4 minimum")
    return x_star, value


def golden_section_min(func, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 500) -> tuple[float, float]:
    """Minimize a unimodal ``func`` on ``[lo, hi]``; returns ``(x, func(x))``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = func(d)
    candidates = [(fc, c), (fd, d), (func(lo), lo), (func(hi), hi)]
    fx, x = min(candidates)
    return x, fx


def bisect_root(func, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 400) -> float:
    """Root of ``func`` on ``[lo, hi]`` by plain bisection; requires a sign change."""
    flo, fhi = func(lo), func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        if fm == 0.0 or hi - lo <= tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rho_numeric_min(theta: float, lo: float = 4.0, hi: float = 200.0) -> tuple[float, float]:
    """Numeric minimum of ``rho_theta`` on ``[lo, hi]`` without the closed form.

    The value comes from golden-section search.  The location is refined by
    bisecting the stationarity condition ``eta(2 pi / x) = eta((2 pi - theta) / (x - 2))``,
    because ``rho`` is too flat near its minimum for the search alone to pin it.
    """
    _, value = golden_section_min(lambda x: rho(theta, x), lo, hi)
    dlo = rho_derivative(theta, lo)
    if dlo >= 0.0:
        return lo, min(value, rho(theta, lo))
    x = bisect_root(lambda t: rho_derivative(theta, t), lo, hi, tol=1e-13)
    return x, min(value, rho(theta, x))


def sextic(u: float, lam: float) -> float:
    return u**6 + 4.0 * lam * lam * u * u - 16.0 * lam * lam


def solve_u0(lam: float = LAMBDA) -> float:
    """Root in ``(0, 2)`` of ``u^6 + 4 lam^2 u^2 - 16 lam^2``, the optimal boundary side length."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    return bisect_root(lambda u: sextic(u, lam), 0.0, 2.0, tol=1e-12)


def per_cell_deficit(u: float, lam: float = LAMBDA) -> float:
    """``lam - (u / 2) sqrt(4 - u^2)``: deficit per boundary cell with boundary side ``u``."""
    return lam - 0.5 * u * math.sqrt(4.0 - u * u)


@dataclass(frozen=True)
class ConstantsReport:
    K5: float
    K6: float
    lam: float
    u0: float
    per_cell_min: float
    alpha_lower: float
    alpha_upper: float
    beta_lower: float
    beta_upper: float
    naive_lower: float
    sharper_lower: float
    hex_deficit_coefficient: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    def table(self) -> str:
        """Fixed-format ``name value`` table, one constant per line."""
        rows = [
            ("K5", self.K5),
            ("K6", self.K6),
            ("lambda", self.lam),
            ("u0", self.u0),
            ("per_cell_min", self.per_cell_min),
            ("naive_lower", self.naive_lower),
            ("sharper_lower", self.sharper_lower),
            ("alpha_lower", self.alpha_lower),
            ("alpha_upper", self.alpha_upper),
            ("beta_lower", self.beta_lower),
            ("beta_upper", self.beta_upper),
            ("hex_deficit_coefficient", self.hex_deficit_coefficient),
        ]
        return "\n".join(f"{name} {value:.7f}" for name, value in rows)


def constants() -> ConstantsReport:
    u0 = solve_u0(LAMBDA)
    per_cell = per_cell_deficit(u0, LAMBDA)
    lower = 2.0 * math.sqrt(K6) * per_cell
    return ConstantsReport(
        K5=K5,
        K6=K6,
        lam=LAMBDA,
        u0=u0,
        per_cell_min=per_cell,
        alpha_lower=lower,
        alpha_upper=3.0 / math.sqrt(2.0),
        beta_lower=lower,
        beta_upper=2.0 + 5.0 * math.sqrt(3.0) / 4.0,
        naive_lower=2.0 * math.sqrt(2.0) * K_GAP,
        sharper_lower=2.0 * math.sqrt(K6) * K_GAP,
        hex_deficit_coefficient=17.0 * math.sqrt(3.0) / 4.0,
    )


def anisotropic_constant(c1: float) -> float:
    """``(sqrt3 / 2)(3 c1 / 2 + 1 / c1)``, the sqrt(n) deficit coefficient of the ``c1`` lattice."""
    if not c1 > 0:
        raise DomainError(f"c1 must be positive, got {c1}")
    return (math.sqrt(3.0) / 2.0) * (1.5 * c1 + 1.0 / c1)
