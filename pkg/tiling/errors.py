"""Error types raised by the tiling engine."""


class TilekitError(Exception):
    """Base class for every error the engine raises on purpose."""


class MixedRadicals(TilekitError):
    """Two operands carry different square-free radicals."""

    def __init__(self, d1: int, d2: int):
        super().__init__(f"cannot combine sqrt({d1}) and sqrt({d2}) in one computation")
        self.radicals = (d1, d2)


class DivisionByZero(TilekitError, ZeroDivisionError):
    pass


class ScalarParseError(TilekitError, ValueError):
    """A scalar string does not follow the grammar."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class NonRationalMatrix(TilekitError, ValueError):
    pass


class Singular(TilekitError, ValueError):
    pass


class NotAnEigenvalue(TilekitError, ValueError):
    pass


class NotDiagonalizable(TilekitError, ValueError):
    pass


class ZeroVector(TilekitError, ValueError):
    pass


class NotExpanded(TilekitError, IndexError):
    pass


class NonDiagonal(TilekitError, ValueError):
    """Exact set images are only available for diagonal matrices."""


class NotCovered(TilekitError):
    """Part of a set never meets the reference tile inside the search window."""

    def __init__(self, message: str, uncovered_measure=None):
        super().__init__(message)
        self.uncovered_measure = uncovered_measure


class CapExceeded(TilekitError):
    """No admissible power was found up to the cap."""

    def __init__(self, cap: int, message: str = ""):
        super().__init__(message or f"no packing power found up to cap {cap}")
        self.cap = cap


class BadSpectrum(TilekitError, ValueError):
    pass


class SeedNotPacking(TilekitError):
    pass


class SeedNotMultTile(TilekitError):
    pass


class NoRectangularDomain(TilekitError):
    """The lattice has no lattice vector along a coordinate axis."""


class InvalidInput(TilekitError, ValueError):
    """A matrix, lattice, set or window description could not be read."""


class InvariantViolation(TilekitError, AssertionError):
    """An exact self-check failed; this indicates a bug, not bad input."""


__all__ = [
    "TilekitError",
    "MixedRadicals",
    "DivisionByZero",
    "ScalarParseError",
    "NonRationalMatrix",
    "Singular",
    "NotAnEigenvalue",
    "NotDiagonalizable",
    "ZeroVector",
    "NotExpanded",
    "NonDiagonal",
    "NotCovered",
    "CapExceeded",
    "BadSpectrum",
    "SeedNotPacking",
    "SeedNotMultTile",
    "NoRectangularDomain",
    "InvalidInput",
    "InvariantViolation",
]
