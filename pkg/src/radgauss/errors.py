"""Exception hierarchy shared by all modules."""


class RadGaussError(Exception):
    """Base class for library errors."""


class DomainError(RadGaussError, ValueError):
    """A numeric argument is outside the domain of the function (e.g. NaN)."""


class InvalidWeightsError(RadGaussError, ValueError):
    """Weight vector is empty or identically zero."""


class SizeError(RadGaussError, ValueError):
    """Problem size exceeds what an exact method supports."""


class ArgumentError(RadGaussError, ValueError):
    """Inconsistent or missing arguments."""


class DegenerateError(RadGaussError, ValueError):
    """The requested decomposition does not exist for this input."""


class RegionError(RadGaussError, ValueError):
    """A box lies outside the region on which a claim is stated."""
