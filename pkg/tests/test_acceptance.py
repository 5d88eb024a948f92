"""Acceptance criteria 1 to 10, each at its stated tolerance and runtime limit.

Run with ``pytest tests/test_acceptance.py`` (the PASS/FAIL lines appear in the
terminal summary) or ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _fixtures import construction_fixtures, perturbed_coverings  # noqa: E402

from diskcover import bounds, deficit  # noqa: E402
from diskcover.cli import main as cli_main  # noqa: E402
from diskcover.constructions import hex_area_formula, hex_lattice, square_chain  # noqa: E402
from diskcover.io import CoveringDocument  # noqa: E402
from diskcover.search import SearchConfig, maximize_area  # noqa: E402
from diskcover.verify import sample_check, verify  # noqa: E402
from diskcover.voronoi import net_stats, voronoi_cells  # noqa: E402

RESULTS: dict[int, str] = {}


def check(name, ok, detail=""):
    return (name, bool(ok), detail)


def criterion_1():
    c = bounds.constants()
    return [
        check("alpha_lower", abs(c.alpha_lower - 0.727384) <= 1e-4, f"{c.alpha_lower:.7f}"),
        check("alpha_upper", abs(c.alpha_upper - 2.1213203) <= 1e-6, f"{c.alpha_upper:.7f}"),
        check("beta_upper", abs(c.beta_upper - 4.1650635) <= 1e-6, f"{c.beta_upper:.7f}"),
        check("u0", abs(c.u0 - 1.484490) <= 1e-5, f"{c.u0:.7f}"),
        check("per_cell_min", abs(c.per_cell_min - 0.225635) <= 1e-4, f"{c.per_cell_min:.7f}"),
        check("naive_lower", abs(c.naive_lower - 0.6234560) <= 1e-6, f"{c.naive_lower:.7f}"),
    ]


def criterion_2():
    out = []
    reports = [square_chain(n) for n in range(1, 101)] + [hex_lattice(k) for k in range(1, 11)]
    for r in reports:
        n = r.disks_used
        label = f"{r.name}({r.k if r.k else n})"
        out.append(check(f"{label} 2n<=area", 2 * n <= r.area + 1e-12, f"area {r.area:.6f} vs 2n {2 * n}"))
        out.append(check(f"{label} area<K6 n", r.area < bounds.HEX_DENSITY * n))
        out.append(check(f"{label} area<K6 n-R(n)", r.area < bounds.theorem1_upper(n)))
    return out


def criterion_3():
    out = []
    for n in range(1, 21):
        out.append(check(f"square_chain({n})", verify(square_chain(n).covering, 1e-3).covered))
    for k in range(1, 7):
        r = hex_lattice(k)
        out.append(check(f"hex_lattice({k}) Covered", verify(r.covering, 1e-3).covered))
        out.append(check(f"hex_lattice({k}) area", abs(r.area - hex_area_formula(k)) <= 1e-9, f"{r.area:.12f}"))
    return out


def criterion_4():
    out = []
    for i, c in enumerate(construction_fixtures() + perturbed_coverings()):
        cells = voronoi_cells(c)
        s = net_stats(cells, c.rect)
        n = s.n
        ok = s.v - s.e + n == 1 and s.e <= 3 * n + 1
        if n >= 2:
            ok = ok and s.sum_sides < 2 * s.e <= 6 * n + 2
        ok = ok and max(s.boundary_edge_lengths) <= 2.0 + 1e-9
        total = sum(cell.area for cell in cells)
        ok = ok and abs(total - c.rect.area) <= 1e-6 * c.rect.area
        out.append(check(f"fixture {i} (n={c.n})", ok, f"v={s.v} e={s.e} n={n}"))
    return out


def criterion_5():
    out = []
    # 30 values in (0.1, pi]
    for theta in np.linspace(0.1, math.pi, 31)[1:]:
        theta = float(theta)
        x, value = bounds.rho_numeric_min(theta, 4.0, 200.0)
        closed = 2 * math.sin(theta / 2)
        x_star = 4 * math.pi / theta
        rho3 = bounds.rho(theta, 3.0)
        ok = (
            abs(value - closed) <= 1e-9
            and abs(x - x_star) <= 1e-6
            and abs(rho3 - (3 * math.sqrt(3) / 2 + math.sin(theta))) <= 1e-12
            and rho3 >= closed
        )
        out.append(check(f"theta={theta:.4f}", ok, f"x={x:.9f} vs {x_star:.9f}, value err {abs(value - closed):.1e}"))
    return out


def criterion_6():
    ell = np.linspace(2 / 1000, 2.0, 1000)
    diag = float(np.max(np.abs(deficit.f_tilde(ell, ell) - deficit.diagonal_closed_form(ell))))
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        sides = rng.uniform(1e-3, 2.0, int(rng.integers(3, 13)))
        worst = max(worst, abs(deficit.cyclic_sum(deficit.f, sides) - deficit.cyclic_sum(deficit.f_tilde, sides)))
    return [
        check("diagonal identity", diag < 1e-12, f"max err {diag:.2e}"),
        check("cyclic shift identity", worst < 1e-12, f"max err {worst:.2e}"),
    ]


def criterion_7():
    dev = deficit.symmetry_deviation(0.005)
    return [check("symmetry deviation", dev < 1e-7, f"{dev:.2e}")]


def criterion_8():
    step = 1e-3
    r = deficit.convex_envelope_g(step)
    x, y = r.full_grid_argmin
    ell = 0.5 * (x + y)
    return [
        check("argmin in x+y>=2", r.envelope_min_in_symmetric_region, f"argmin ({x:.3f}, {y:.3f})"),
        check("argmin on diagonal", abs(x - y) <= step + 1e-12),
        check("ell_min", abs(ell - 1.484490) <= 5e-3, f"{ell:.4f}"),
        check("minimum value", abs(r.full_grid_min_value - 0.225635) <= 1e-3, f"{r.full_grid_min_value:.6f}"),
        check("negative gradients", deficit.negative_gradient_check(0.01)),
    ]


def _search_checks(n, area, best):
    certified = verify(best, 1e-3).covered and sample_check(best, samples=100_000, seed=n)
    sandwich = 2 * n <= area + 1e-12 and area < bounds.HEX_DENSITY * n and area < bounds.theorem1_upper(n)
    return certified, sandwich


def criterion_9():
    out = []
    for n in range(1, 6):
        r = maximize_area(SearchConfig(n=n, budget=20_000, seed=1000 + n))
        certified, sandwich = _search_checks(n, r.area, r.best)
        ok = 2 * n - 1e-3 <= r.area <= 2 * n + 1e-3 and certified and sandwich
        out.append(check(f"n={n}", ok, f"area {r.area:.9f}"))
    r = maximize_area(SearchConfig(n=25, budget=2_000, seed=1025, init="hex"))
    certified, sandwich = _search_checks(25, r.area, r.best)
    out.append(check("n=25 hex", r.area >= 54.5595 and certified and sandwich, f"area {r.area:.7f}"))
    return out


def criterion_10(tmp: Path):
    h = tmp / "h.json"
    cells_svg, plain_a, plain_b = tmp / "cells.svg", tmp / "a.svg", tmp / "b.svg"
    codes = {
        "construct": cli_main(["construct", "--type", "hex", "--k", "3", "--out", str(h)]),
        "verify": cli_main(["verify", str(h), "--eps", "1e-3"]),
        "voronoi": cli_main(["voronoi", str(h), "--svg", str(cells_svg)]),
        "render": cli_main(["render", str(h), "--out", str(plain_a)]),
        "render again": cli_main(["render", str(h), "--out", str(plain_b)]),
    }
    out = [check(f"{stage} exit 0", code == 0, f"exit {code}") for stage, code in codes.items()]
    text = h.read_text()
    doc = CoveringDocument.loads(text)
    c = hex_lattice(3).covering
    lossless = doc.dumps() == text and np.array_equal(doc.disks, c.centers) and doc.rect == c.rect
    out.append(check("JSON round trip", lossless))
    cells_again = tmp / "cells2.svg"
    cli_main(["render", str(h), "--out", str(cells_again), "--cells"])
    same = plain_a.read_bytes() == plain_b.read_bytes() and cells_svg.read_bytes() == cells_again.read_bytes()
    out.append(check("SVG byte-deterministic", same))
    return out


LIMITS = {1: 1, 2: 10, 3: 60, 4: 30, 5: 5, 6: 5, 7: 10, 8: 60, 9: 60, 10: 5}


def evaluate(number: int, tmp: Path | None = None):
    func = globals()[f"criterion_{number}"]
    t0 = time.perf_counter()
    checks = func(tmp) if number == 10 else func()
    elapsed = time.perf_counter() - t0
    checks.append(check("runtime", elapsed < LIMITS[number], f"{elapsed:.2f}s < {LIMITS[number]}s"))
    failed = [c for c in checks if not c[1]]
    status = "PASS" if not failed else "FAIL"
    summary = f"criterion {number}: {status} ({len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f}s)"
    if failed:
        summary += "; failing: " + ", ".join(f"{name} [{detail}]" if detail else name for name, _, detail in failed[:4])
        if len(failed) > 4:
            summary += f" and {len(failed) - 4} more"
    return not failed, summary


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, tmp_path):
    ok, summary = evaluate(number, tmp_path)
    RESULTS[number] = summary
    print(summary)
    assert ok, summary


if __name__ == "__main__":
    import tempfile

    all_ok = True
    with tempfile.TemporaryDirectory() as d:
        for k in range(1, 11):
            ok, line = evaluate(k, Path(d))
            all_ok &= ok
            print(line, flush=True)
    sys.exit(0 if all_ok else 1)
