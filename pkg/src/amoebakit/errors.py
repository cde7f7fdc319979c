"""Exception types shared across the package."""


class AmoebakitError(Exception):
    """Base class for all package-specific errors."""


class TorusDomainError(AmoebakitError, ValueError):
    """A coordinate of an evaluation point is zero; only torus points are valid."""


class DegenerateFiberError(AmoebakitError, ValueError):
    """A fiber restriction collapsed to the zero polynomial (the fixed value
    lies on a coordinate-aligned component)."""


class DegenerateSupportError(AmoebakitError, ValueError):
    """The support of a tropical polynomial is a single point."""


class OnAmoebaError(AmoebakitError, ValueError):
    """Order computation was requested at a point on or near the amoeba."""


class NonConvergentIntersectionError(AmoebakitError, RuntimeError):
    """Perturbation directions disagree; the stable intersection did not converge."""


class WindowMismatchError(AmoebakitError, ValueError):
    """Two rasters with different windows or resolutions were combined."""


class QuadratureError(AmoebakitError, RuntimeError):
    """Quadrature too coarse for the requested quantity."""


class GenericityError(AmoebakitError, RuntimeError):
    """A genericity condition required by the analysis is violated."""


class UnresolvedComponentError(AmoebakitError, RuntimeError):
    """A complement component's order could not be determined from the raster."""
