"""Exception types raised across the library."""


class ArrlogError(Exception):
    """Base class for all arrlog errors."""


# -- arrangements -----------------------------------------------------------

class ZeroForm(ArrlogError):
    """A linear form with all coefficients zero was supplied."""


class DuplicateHyperplane(ArrlogError):
    """Two supplied forms are proportional, i.e. define the same hyperplane."""


class RankTooLow(ArrlogError):
    """The arrangement rank is below what the operation requires."""


class NotMember(ArrlogError):
    """The named hyperplane does not belong to the arrangement."""


class SingularTransform(ArrlogError):
    """The coordinate change matrix is not invertible."""


class RankCollapse(ArrlogError):
    """Deleting the hyperplane drops the rank below 2."""


# -- derivation solving -----------------------------------------------------

class MissingCoordinateTriangle(ArrlogError):
    """The operation needs the first three forms to be x, y, z."""


class CapExceeded(ArrlogError):
    """The degree search ran past its cap; this indicates an internal bug."""


class NotLogarithmic(ArrlogError):
    """The supplied derivation is not logarithmic for the arrangement."""


class DegreeSumMismatch(ArrlogError):
    """Derivation degrees do not sum to the number of hyperplanes."""


class AllZeroCoefficients(ArrlogError):
    """A coefficient vector that must be nonzero was identically zero."""


class PencilLike(ArrlogError):
    """The maximal coatom multiplicity exceeds s-2, so the split F = g*h
    would leave deg(h) < 2."""


# -- catalog ----------------------------------------------------------------

class WrongFamily(ArrlogError):
    """A family identifier outside the expected set was supplied."""


class InvalidParams(ArrlogError):
    """Family parameters violate a stated constraint; the message names it."""


class NotDecomposable(ArrlogError):
    """No decomposition of the requested shape exists."""


# -- graphs -----------------------------------------------------------------

class EmptyGraph(ArrlogError):
    """The graph has no edges."""


class TooFewEdges(ArrlogError):
    """The graph has fewer than two edges."""


# -- parsing ----------------------------------------------------------------

class ParseError(ArrlogError):
    """Malformed input text; carries the offending position when known."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NonlinearTerm(ParseError):
    """The expression contains a term of degree other than one."""
