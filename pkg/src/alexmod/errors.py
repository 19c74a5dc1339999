"""Exception hierarchy.  Every error raised on purpose by the package derives from :class:`AlexmodError`."""


class AlexmodError(ValueError):
    """Base class."""


class InputError(AlexmodError):
    """Malformed body specification or configuration."""


class DimensionMismatch(AlexmodError):
    pass


class UnboundedBody(AlexmodError):
    pass


class EmptyInterior(AlexmodError):
    pass


class PointNotInterior(AlexmodError):
    pass


class BaseNotInterior(PointNotInterior):
    pass


class OriginNotInterior(AlexmodError):
    pass


class DegenerateHull(AlexmodError):
    pass


class QuadratureNotConverged(AlexmodError):
    pass


class DeltaExceedsInradius(AlexmodError):
    pass


class InsufficientPoints(AlexmodError):
    pass


class CurveTooNarrow(AlexmodError):
    pass


class DomainError(AlexmodError):
    pass


class PoleNotNearest(AlexmodError):
    pass


class DeltaTooLarge(AlexmodError):
    pass


class PointOutsideDomain(AlexmodError):
    pass


class CollinearDegeneracy(AlexmodError):
    pass


class EmptyCurveRange(AlexmodError):
    pass
