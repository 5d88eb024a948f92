"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or failed computation, 2 usage or
format error, 3 undecided verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import bounds, constructions, deficit, search, voronoi
from .exceptions import DiskCoverError, SchemaError
from .io import CoveringDocument, ReportDocument, read_covering, write_text
from .svg import render_svg
from .verify import DEFAULT_EPS, Status, verify

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3

logger = logging.getLogger("diskcover")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _write_report(path, kind: str, payload: dict) -> None:
    if path:
        write_text(path, ReportDocument(kind, payload).dumps())


def cmd_construct(args) -> int:
    if args.type == "square-chain":
        if args.n is None:
            raise _Usage("square-chain needs --n")
        report = constructions.square_chain(args.n)
    elif args.type == "hex":
        if args.k is not None:
            report = constructions.hex_lattice(args.k)
        elif args.n is not None:
            report = constructions.hex_construction_for_n(args.n)
        else:
            raise _Usage("hex needs --k or --n")
    else:
        if args.n is None:
            raise _Usage("aniso needs --n")
        report = constructions.anisotropic_lattice(args.n, args.c1)
    doc = CoveringDocument.from_covering(report.covering, report.metadata())
    write_text(args.out, doc.dumps())
    c = report.covering
    print(f"{report.name}: {c.n} disks, rect {c.rect.width:.4f} x {c.rect.height:.4f}, area {report.area:.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    c = read_covering(args.input).to_covering()
    v = verify(c, args.eps)
    payload = {"status": v.status.value, "resolution": v.resolution, "cells": v.cells}
    if v.witness is not None:
        payload["witness"] = {"x": v.witness.x, "y": v.witness.y}
    _write_report(args.report, "verdict", payload)
    print(f"status {v.status.value}")
    if v.status is Status.UNCOVERED:
        print(f"witness {v.witness.x:.12f} {v.witness.y:.12f}")
        return EXIT_NEGATIVE
    if v.status is Status.UNDECIDED:
        print(f"resolution {v.resolution:.3g}")
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_voronoi(args) -> int:
    c = read_covering(args.input).to_covering()
    cells = voronoi.voronoi_cells(c)
    stats = voronoi.net_stats(cells, c.rect)
    payload = {
        "v": stats.v,
        "e": stats.e,
        "n": stats.n,
        "side_histogram": {str(k): v for k, v in stats.side_histogram.items()},
        "sum_sides": stats.sum_sides,
        "avg_sides": stats.avg_sides,
        "avg_sides_bound": voronoi.avg_sides_bound(stats.n),
        "boundary_cell_count": stats.boundary_cell_count,
        "boundary_edge_lengths": stats.boundary_edge_lengths,
        "empty_cells": list(cells.empty),
    }
    _write_report(args.report, "netstats", payload)
    print(f"v {stats.v} e {stats.e} n {stats.n} euler {stats.euler_characteristic}")
    print(f"avg_sides {stats.avg_sides:.6f} bound {voronoi.avg_sides_bound(stats.n):.6f}")
    print("sides " + " ".join(f"{k}:{v}" for k, v in stats.side_histogram.items()))
    print(f"boundary_cells {stats.boundary_cell_count}")
    if args.svg:
        write_text(args.svg, render_svg(c, cells))
    return EXIT_OK


def cmd_render(args) -> int:
    c = read_covering(args.input).to_covering()
    cells = voronoi.voronoi_cells(c) if args.cells else None
    write_text(args.out, render_svg(c, cells))
    return EXIT_OK


def cmd_constants(args) -> int:
    report = bounds.constants()
    _write_report(args.report, "constants", report.as_dict())
    print(report.table())
    return EXIT_OK


def cmd_minimize(args) -> int:
    result = deficit.convex_envelope_g(args.grid)
    _write_report(args.report, "minimization", result.as_dict())
    for key, value in result.as_dict().items():
        if isinstance(value, list):
            value = " ".join(f"{v:.6f}" for v in value)
        elif isinstance(value, float):
            value = f"{value:.9g}"
        print(f"{key} {value}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    n = args.n
    print(f"2n {2 * n}")
    print(f"hex_density_n {bounds.HEX_DENSITY * n:.5f}")
    print(f"R(n) {bounds.R_n(n):.5f}")
    print(f"theorem1_upper {bounds.theorem1_upper(n):.5f}")
    print(f"epsilon_n {bounds.epsilon_n(n):.6f}")
    if args.psi is not None:
        print(f"psi_refinement {bounds.psi_refinement(args.psi):.6f}")
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = search.SearchConfig(
        n=args.n,
        budget=args.budget,
        seed=args.seed,
        init=args.init,
        aspect_free={"auto": None, "yes": True, "no": False}[args.aspect_free],
    )

    def stream(iteration: int, area: float) -> None:
        print(json.dumps({"iteration": iteration, "best_area": area}), flush=True)

    if args.replicas > 1:
        result = search.multi_start(cfg, args.replicas, workers=args.workers)
        for iteration, area in result.history:
            stream(iteration, area)
    else:
        result = search.maximize_area(cfg, progress=stream)
    audit = search.bound_audit(result)
    summary = result.as_dict()
    summary["audit"] = audit
    print(json.dumps({"final": summary}), flush=True)
    if args.out:
        meta = {"construction": "search", "seed": args.seed, "init": cfg.resolved_init}
        write_text(args.out, CoveringDocument.from_covering(result.best, meta).dumps())
    if args.report:
        _write_report(args.report, "search", summary)
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diskcover", description="Rectangles covered by unit disks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write an explicit covering")
    p.add_argument("--type", required=True, choices=["square-chain", "hex", "aniso"])
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--c1", type=_positive_float, default=math.sqrt(2.0 / 3.0), help="row factor for aniso")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify coverage of a covering file")
    p.add_argument("input")
    p.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("voronoi", help="Voronoi net statistics")
    p.add_argument("input")
    p.add_argument("--svg", help="also render the covering with its cells")
    p.add_argument("--report")
    p.set_defaults(func=cmd_voronoi)

    p = sub.add_parser("render", help="render a covering as SVG")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--cells", action="store_true", help="overlay Voronoi cells")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("constants", help="print the named constants")
    p.add_argument("--report")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("minimize", help="grid minimization of the boundary-cell deficit")
    p.add_argument("--grid", type=_positive_float, default=1e-3)
    p.add_argument("--report")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("bounds", help="evaluate the area bounds for n disks")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--psi", type=_positive_float)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="annealing search for a large covered rectangle")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--budget", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--init", choices=search.INITS)
    p.add_argument("--aspect-free", choices=["auto", "yes", "no"], default="auto")
    p.add_argument("--replicas", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiskCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
