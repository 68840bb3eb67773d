"""Exception types shared across the geometry kernel."""


class GeometryError(Exception):
    """Base class for all errors raised by this package."""


class NotDistinct(GeometryError):
    """Two points are too close together to be treated as distinct."""


class NotGreater(GeometryError):
    """Length subtraction requested where the minuend does not exceed the subtrahend."""


class NotOnSphere(GeometryError):
    """Point does not lie on the sphere within the membership tolerance."""


class Concentric(GeometryError):
    """Sphere centers coincide; touching predicates are undefined for this pair."""


class NotTouching(GeometryError):
    """The spheres do not touch."""


class BaseMismatch(GeometryError):
    """Tangent constraints are anchored at different base points."""


class FrontMismatch(GeometryError):
    """Fronts differ in sample count, order, or topology."""


class NotOnFront(GeometryError):
    """Point is not one of the front's samples."""


class CausticExceeded(GeometryError):
    """Propagation distance reaches the focusing limit; the sample map stops being injective."""


class TooFewSamples(GeometryError):
    """Not enough samples to represent or analyze the front."""


class BadPrimitive(GeometryError):
    """Primitive description is malformed or has invalid parameters."""


class DimensionError(GeometryError):
    """Operation is not supported in this ambient dimension."""


class ParseError(GeometryError):
    """Scenario file is missing or is not valid JSON."""


class ValidationError(GeometryError):
    """Scenario violates the schema; the message carries the offending field path."""
