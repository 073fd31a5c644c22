"""Exception types shared across the package."""


class RankWeightsError(Exception):
    """Base class for all library errors."""


class NotPrime(RankWeightsError):
    """The characteristic given for a field is not a prime number."""


class NotIrreducible(RankWeightsError):
    """A defining polynomial failed the irreducibility check."""


class DimensionMismatch(RankWeightsError):
    """Operands live in incompatible ambient spaces or fields."""


class SingularMatrix(RankWeightsError):
    """A matrix that must be invertible is singular."""


class RankOutOfRange(RankWeightsError):
    """A subcode dimension r outside 0..k was requested."""


class EmptyCode(RankWeightsError):
    """An operation that needs k >= 1 was applied to the zero code."""


class Infeasible(RankWeightsError):
    """An exact enumeration would exceed the configured cutoff.

    Raised instead of ever sampling or approximating.  Carries the
    offending computation so callers can report it.
    """

    def __init__(self, what: str, needed: int, cutoff: int):
        self.what = what
        self.needed = needed
        self.cutoff = cutoff
        super().__init__(
            f"{what}: would scan {needed} words, cutoff is {cutoff}"
        )


class ParseError(RankWeightsError):
    """A code file is malformed; carries line/position diagnostics."""

    def __init__(self, message: str, line: int | None = None, pos: int | None = None):
        self.line = line
        self.pos = pos
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", entry {pos}" if pos is not None else "") + ")"
        super().__init__(message + where)
