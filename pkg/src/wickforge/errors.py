"""Exception types shared across the package."""


class WickforgeError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(WickforgeError):
    """A matrix expected to be Hermitian (within tolerance) is not."""


class DimensionMismatch(WickforgeError):
    """Operators with incompatible dimensions were combined."""


class SizeLimit(WickforgeError):
    """A requested sector exceeds the configured dimension cap."""


class NoBraid(WickforgeError):
    """A quotient construction was requested for a system without a braid operator."""


class NotWellDefined(WickforgeError):
    """Creation/annihilation do not preserve the braid ideal, so they do not descend."""


class SpeciesOutOfRange(WickforgeError):
    """A generator refers to a species index outside 1..N."""


class ExpressionSyntaxError(WickforgeError):
    """Operator-expression text does not conform to the grammar.

    The zero-based character offset of the offending token is stored in
    ``position``.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidParams(WickforgeError):
    """Preset parameters violate their constraints."""
