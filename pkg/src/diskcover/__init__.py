"""Rectangles covered by unit disks: constructions, certified verification,
Voronoi nets, area bounds and a stochastic search."""

from .bounds import constants, theorem1_upper
from .constructions import hex_lattice, square_chain
from .geom import Covering, Disk, Rect
from .verify import CoverageVerdict, Status, scale_to_cover, verify

__all__ = [
    "CoverageVerdict",
    "Covering",
    "Disk",
    "Rect",
    "Status",
    "constants",
    "hex_lattice",
    "scale_to_cover",
    "square_chain",
    "theorem1_upper",
    "verify",
]
