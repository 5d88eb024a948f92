"""Shared covering fixtures for the tests."""

import numpy as np

from diskcover.constructions import hex_lattice, square_chain
from diskcover.geom import Covering
from diskcover.verify import scale_to_cover


def construction_fixtures():
    return [square_chain(n).covering for n in range(1, 21)] + [hex_lattice(k).covering for k in range(1, 7)]


def perturbed_coverings(count=20, seed=20240601, sigma=0.05, contract=0.9):
    """Perturbed constructions turned back into certified coverings.

    Centers get Gaussian noise, the layout is contracted toward the rectangle
    center to close the holes the noise opens, and the rectangle is re-fitted.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        base = (hex_lattice(2 + i % 5) if i % 2 == 0 else square_chain(3 + i)).covering
        mid = np.array([base.rect.width / 2, base.rect.height / 2])
        noisy = base.centers + rng.normal(0.0, sigma, base.centers.shape)
        c = Covering(base.rect, mid + contract * (noisy - mid))
        out.append(c.scaled(scale_to_cover(c)))
    return out
