"""Exception hierarchy shared across the package.

Three families matter for the CLI exit codes: parse problems, size-cap
refusals and domain (parameter) violations.
"""


class DepboundsError(Exception):
    """Base class for all package errors."""


class ParseError(DepboundsError):
    """Malformed input file or JSON payload."""


class CapExceeded(DepboundsError):
    """Input too large for the enumeration-exact code paths."""


class DomainError(DepboundsError, ValueError):
    """Parameter outside the documented domain of an operation."""


# --- distribution construction / manipulation ---

class NegativeProbability(DomainError):
    pass


class MassNotOne(DomainError):
    pass


class DuplicateOutcome(DomainError):
    pass


class EmptyIndexSet(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class SupportTooLarge(CapExceeded):
    pass


# --- alpha computations ---

class OverlappingIndexSets(DomainError):
    pass


class TooManyVariables(CapExceeded):
    pass


# --- covers ---

class BlocksDoNotCover(DomainError):
    pass


class LpDidNotConverge(DepboundsError):
    pass


# --- bound evaluators ---

class NonpositiveT(DomainError):
    pass


class NonpositiveLambda(DomainError):
    pass


class InvalidChi(DomainError):
    pass


class LambdaOutOfRange(DomainError):
    pass


class InvalidP(DomainError):
    pass


class DomainViolation(DomainError):
    pass


class BlockMismatch(DomainError):
    pass


# --- generators ---

class GraphTooLarge(CapExceeded):
    pass


class LatticeTooLarge(CapExceeded):
    pass


class IndexSetTooSmall(DomainError):
    pass


class NoUniqueStationary(DomainError):
    pass


class TooLong(CapExceeded):
    pass


class WindowTooLarge(DomainError):
    pass


# --- monte carlo harness ---

class EmptyGrid(DomainError):
    pass


class GridMismatch(DomainError):
    pass
