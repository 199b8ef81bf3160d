"""Exception hierarchy shared by every module."""


class HardySpectaError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateMap(HardySpectaError, ValueError):
    """Coefficients with ``ad - bc`` numerically zero."""


class IdentityMap(HardySpectaError, ValueError):
    """The identity fixes every point and belongs to no symbol class."""


class NotSelfMap(HardySpectaError, ValueError):
    """The map does not send the unit disc into itself."""


class InvalidExponent(HardySpectaError, ValueError):
    """Hardy exponent outside the supported range."""


class UnsupportedClass(HardySpectaError, ValueError):
    """No closed form is cataloged for this symbol class."""


class NumericOnlyRegion(HardySpectaError, ValueError):
    """Set operations requested on a region with no closed form."""


class InadmissibleGenerator(HardySpectaError, ValueError):
    """Eigenfunction generator outside its strip or half-plane."""


class NotCataloged(HardySpectaError, ValueError):
    """The (class, direction) pair has no cataloged answer."""


class ZeroFunction(HardySpectaError, ValueError):
    """A nonzero function was required."""


class NumericalUnderflow(HardySpectaError, ArithmeticError):
    """Iterated norms left the representable range."""


class NonCommuting(HardySpectaError, ValueError):
    """Two symbols that do not commute under composition."""


class IllConditioned(HardySpectaError, ArithmeticError):
    """Gram system too ill-conditioned to trust."""
