"""
Exception hierarchy for matrixless.

Three families map onto CLI exit codes:
- HypothesisViolation (2): the symbols break an assumption of the method
- NumericalFailure (3): a solver could not deliver the requested accuracy
- ArtifactError (4): persisted tables or caches are unreadable or mismatched

Argument errors additionally derive from ValueError and exit with 1.
"""
from __future__ import annotations


class MatrixlessError(Exception):
    """Base class for all matrixless errors."""

    exit_code: int = 1


# =============================================================================
# Argument / precondition errors
# =============================================================================

class InvalidSymbolError(MatrixlessError, ValueError):
    """Coefficient list cannot be turned into a cosine polynomial."""


class InvalidGridError(MatrixlessError, ValueError):
    """Nested grid parameters violate n_1 >= K + 5, K >= 1."""


class OrderTooSmallError(MatrixlessError, ValueError):
    """Matrix order does not exceed the bandwidth of the symbol."""


class LevelOutOfRangeError(MatrixlessError, ValueError):
    """Requested level k is outside 1..K."""


class OutOfRangeError(MatrixlessError, ValueError):
    """Angle outside [0, pi]."""


class PrecisionError(MatrixlessError, ValueError):
    """Unsupported precision specification."""


# =============================================================================
# Hypothesis violations (exit 2)
# =============================================================================

class HypothesisViolation(MatrixlessError):
    """The symbol pair does not satisfy the hypotheses of the method."""

    exit_code = 2


class NotMonotoneError(HypothesisViolation):
    """f = l/g is not strictly increasing on (0, pi)."""


class NonPositiveSymbolError(HypothesisViolation):
    """g is not positive on (0, pi)."""


class SymbolDivisionError(HypothesisViolation, ZeroDivisionError):
    """|g(theta)| fell below the configured floor while evaluating f."""


# =============================================================================
# Numerical failures (exit 3)
# =============================================================================

class NumericalFailure(MatrixlessError):
    """A numerical kernel failed to deliver a result."""

    exit_code = 3


class PivotBreakdownError(NumericalFailure):
    """A pivot of the banded LDL^T factorization underflowed the floor."""


class NonConvergenceError(NumericalFailure):
    """Iteration cap reached; tolerance too tight for the working precision."""


class NoBracketError(NumericalFailure):
    """Target value lies outside the range (m_f, M_f)."""


class SingularSystemError(NumericalFailure):
    """Extrapolation system is singular (grid corruption)."""


class NodeComputationError(MatrixlessError):
    """A per-node precompute pipeline failed; wraps the cause with coordinates."""

    def __init__(self, cause: Exception, *, level: int, order: int, index: int):
        self.cause = cause
        self.level = level
        self.order = order
        self.index = index
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"level k={level}, order n={order}, index j={index}: {cause}")


# =============================================================================
# Artifact errors (exit 4)
# =============================================================================

class ArtifactError(MatrixlessError):
    """Persisted artifact could not be used."""

    exit_code = 4


class DigestMismatchError(ArtifactError):
    """Expansion table was computed for a different symbol pair."""


class TableFormatError(ArtifactError):
    """Expansion table or cache document is malformed."""
