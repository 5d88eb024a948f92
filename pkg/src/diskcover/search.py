"""Simulated-annealing search for large rectangles coverable by ``n`` unit disks.

The state is a certified covering.  A move perturbs a few disk centers with
Gaussian steps, or contracts the whole layout slightly toward the rectangle
center (which closes holes that perturbations open in tight lattices).  The
rectangle is then re-fitted with ``scale_to_cover`` and the move is accepted
by the Metropolis rule on area.  Every state ever held is certified Covered,
so the best one is too.

The budget counts verifier calls.  The Metropolis threshold is drawn before
the re-fit, which lets a hopeless candidate be rejected after a single call.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .bounds import HEX_DENSITY, delta_n, theorem1_upper
from .constructions import hex_construction_for_n, square_chain
from .exceptions import DomainError, InfeasibleStartError
from .geom import Covering, Rect
from .verify import DEFAULT_EPS, scale_to_cover, verify

logger = logging.getLogger(__name__)

INITS = ("square_chain", "hex", "random")
FIT_TOL = 1e-6
CONTRACT_PROB = 0.2
ASPECT_STEP = 0.05
DISPLAY_RANGE = (0.727384, 4.165064)


@dataclass(frozen=True)
class SearchConfig:
    n: int
    budget: int
    seed: int
    aspect_free: bool | None = None
    init: str | None = None
    perturb_scale: float = 0.1
    anneal_decay: float = 0.999

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if isinstance(self.budget, bool) or int(self.budget) != self.budget or self.budget < 1:
            raise DomainError(f"budget must be a positive integer, got {self.budget!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.init is not None and self.init not in INITS:
            raise DomainError(f"init must be one of {INITS}, got {self.init!r}")
        if not self.perturb_scale > 0:
            raise DomainError(f"perturb_scale must be positive, got {self.perturb_scale}")
        if not 0.0 < self.anneal_decay < 1.0:
            raise DomainError(f"anneal_decay must lie in (0, 1), got {self.anneal_decay}")

    @property
    def resolved_aspect_free(self) -> bool:
        return self.n >= 6 if self.aspect_free is None else bool(self.aspect_free)

    @property
    def resolved_init(self) -> str:
        if self.init is not None:
            return self.init
        return "square_chain" if self.n <= 5 else "hex"


@dataclass
class SearchResult:
    best: Covering
    area: float
    history: list[tuple[int, float]]
    bound_flags: dict[str, bool]
    rng: dict = field(default_factory=dict)
    verifier_calls: int = 0
    accepted: int = 0
    replica: int = 0

    def as_dict(self) -> dict:
        return {
            "n": self.best.n,
            "area": self.area,
            "rect": {"w": self.best.rect.width, "h": self.best.rect.height},
            "history": [list(h) for h in self.history],
            "bound_flags": dict(self.bound_flags),
            "rng": dict(self.rng),
            "verifier_calls": self.verifier_calls,
            "accepted": self.accepted,
            "replica": self.replica,
        }


class _BudgetExhausted(Exception):
    pass


class _CountingVerifier:
    def __init__(self, budget: int):
        self.budget = budget
        self.calls = 0

    def __call__(self, c: Covering, eps: float = DEFAULT_EPS):
        if self.calls >= self.budget:
            raise _BudgetExhausted
        self.calls += 1
        return verify(c, eps)


def bound_flags(n: int, area: float) -> dict[str, bool]:
    return {
        "ge_2n": area >= 2.0 * n - 1e-9,
        "lt_hex_density": area < HEX_DENSITY * n,
        "lt_theorem1_upper": area < theorem1_upper(n),
    }


def bound_audit(r: SearchResult) -> dict:
    """Area-bound checks on a result, plus ``Delta(n) / sqrt(n)`` for display."""
    n = r.best.n
    out: dict = dict(bound_flags(n, r.area))
    ratio = delta_n(n, r.area) / math.sqrt(n)
    out["delta_over_sqrt_n"] = ratio
    out["delta_in_display_range"] = DISPLAY_RANGE[0] <= ratio <= DISPLAY_RANGE[1]
    return out


def _initial(cfg: SearchConfig, rng: np.random.Generator) -> Covering:
    kind = cfg.resolved_init
    if kind == "square_chain":
        return square_chain(cfg.n).covering
    if kind == "hex":
        return hex_construction_for_n(cfg.n).covering
    side = math.sqrt(2.0 * cfg.n)
    centers = rng.random((cfg.n, 2)) * side
    mid = np.array([side / 2.0, side / 2.0])
    # Put the rectangle center on a disk center so that some rescaling is always covered.
    nearest = centers[np.argmin(np.hypot(*(centers - mid).T))]
    return Covering(Rect(side, side), centers + (mid - nearest))


def _contract(c: Covering, q: float) -> Covering:
    mid = np.array([c.rect.width / 2.0, c.rect.height / 2.0])
    return Covering(c.rect, mid + q * (c.centers - mid))


def _fit(c: Covering, verifier, floor: float = 0.0) -> Covering | None:
    s = scale_to_cover(c, FIT_TOL, DEFAULT_EPS, guess=1.0, floor=floor, verifier=verifier)
    if s <= 0.0 or (floor > 0.0 and s < floor):
        return None
    return c.scaled(s)


def _aspect_descent(c: Covering, verifier) -> Covering:
    """Coordinate descent on the aspect ratio at fixed disk layout."""
    best = c
    step = ASPECT_STEP
    while step > 1e-3:
        improved = False
        for r in (math.exp(step), math.exp(-step)):
            w, h = best.rect.width * r, best.rect.height / r
            # Any improvement needs scale at least 1 at the new aspect, so 1 is the floor.
            cand = _fit(best.with_dims(w, h), verifier, floor=1.0 - 1e-12)
            if cand is not None and cand.area > best.area:
                best, improved = cand, True
                break
        if not improved:
            step /= 2.0
    return best


def maximize_area(cfg: SearchConfig, *, progress=None, replica: int = 0) -> SearchResult:
    """Anneal from the configured initial covering; deterministic given ``cfg``.

    ``progress`` is called with ``(iteration, best_area)`` whenever the best improves.
    """
    bitgen = np.random.PCG64(int(cfg.seed))
    rng = np.random.Generator(bitgen)
    verifier = _CountingVerifier(cfg.budget)
    aspect_free = cfg.resolved_aspect_free

    def record(it: int, area: float):
        history.append((it, area))
        if progress is not None:
            progress(it, area)

    history: list[tuple[int, float]] = []
    start = _initial(cfg, rng)
    try:
        if verifier(start).covered:
            current = start
        else:
            current = _fit(start, verifier)
            if current is None:
                raise InfeasibleStartError(f"no covered rescaling of the {cfg.resolved_init} start")
    except _BudgetExhausted:
        raise InfeasibleStartError(f"budget {cfg.budget} exhausted before a feasible covering was found") from None

    best = current
    temperature = 0.01 * current.area
    sigma = cfg.perturb_scale
    accepted = 0
    it = 0
    try:
        if aspect_free:
            current = best = _aspect_descent(current, verifier)
        record(0, best.area)
        while True:
            it += 1
            if rng.random() < CONTRACT_PROB:
                cand = _contract(current, 1.0 - abs(rng.normal(0.0, sigma / 10.0)))
            else:
                k = int(rng.integers(1, min(3, cfg.n) + 1))
                idx = rng.choice(cfg.n, size=k, replace=False)
                centers = current.centers.copy()
                centers[idx] += rng.normal(0.0, sigma, size=(k, 2))
                cand = Covering(current.rect, centers)
            # Metropolis threshold: accept iff area >= current + T ln u.
            u = rng.random()
            target = current.area + temperature * math.log(u) if u > 0.0 else 0.0
            floor = math.sqrt(target / current.area) if target > 0.0 else 0.0
            fitted = _fit(cand, verifier, floor=floor)
            if fitted is None:
                continue
            if aspect_free:
                fitted = _aspect_descent(fitted, verifier)
            current = fitted
            accepted += 1
            temperature *= cfg.anneal_decay
            sigma *= cfg.anneal_decay
            if current.area > best.area:
                best = current
                record(it, best.area)
    except _BudgetExhausted:
        if not history:
            record(0, best.area)

    return SearchResult(
        best=best,
        area=best.area,
        history=history,
        bound_flags=bound_flags(cfg.n, best.area),
        rng={"bit_generator": "PCG64", "numpy": np.__version__, "seed": int(cfg.seed)},
        verifier_calls=verifier.calls,
        accepted=accepted,
        replica=replica,
    )


def replica_seeds(seed: int, replicas: int) -> list[int]:
    """Independent 64-bit seeds derived from ``seed`` with ``SeedSequence.spawn``."""
    children = np.random.SeedSequence(int(seed)).spawn(replicas)
    return [int(ch.generate_state(1, dtype=np.uint64)[0]) for ch in children]


def _run_replica(args):
    cfg, index = args
    return maximize_area(cfg, replica=index)


def multi_start(cfg: SearchConfig, replicas: int, workers: int = 1) -> SearchResult:
    """Run independent replicas and keep the best (ties go to the lowest replica index)."""
    if replicas < 1:
        raise DomainError(f"replicas must be positive, got {replicas}")
    jobs = [(replace(cfg, seed=s), i) for i, s in enumerate(replica_seeds(cfg.seed, replicas))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_replica, jobs))
    else:
        results = [_run_replica(job) for job in jobs]
    return max(results, key=lambda r: (r.area, -r.replica))
