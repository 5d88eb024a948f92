"""Exception hierarchy shared by every module of the package."""


class DiskCoverError(Exception):
    """Base class for all errors raised by diskcover."""


class DomainError(DiskCoverError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(DiskCoverError, ArithmeticError):
    """A floating-point excursion too large to be rounding noise."""


class InvalidPolygonError(DiskCoverError, ValueError):
    pass


class DegenerateSitesError(DiskCoverError, ValueError):
    """Two or more disk centers coincide."""


class TopologyError(DiskCoverError):
    """The Voronoi net is not a consistent planar graph."""


class ConstructionTooSmallError(DiskCoverError, ValueError):
    pass


class InfeasibleStartError(DiskCoverError):
    """A search never reached a certified covering."""


class SchemaError(DiskCoverError, ValueError):
    """A JSON document does not follow the expected schema."""
