"""Shared error taxonomy.

Every failure mode that callers are expected to catch has its own class so the
CLI can map them to structured error documents and nonzero exit codes.
"""


class WalkenumError(Exception):
    """Base class for all package errors."""


class ParseError(WalkenumError):
    """Malformed JSON input (step sets, polynomials, recurrences, classes)."""


class InvalidStep(WalkenumError):
    """A step violates the basic shape constraints (dx < 0, zero weight, (0,0))."""


class DuplicateStep(WalkenumError):
    """Two steps share the same (dx, dy) displacement."""


class InfeasibleWidth(WalkenumError):
    """Vertical steps admit a zero-length loop inside the bounded band."""


class VerticalLoop(WalkenumError):
    """Vertical steps in both directions for a class with unbounded range."""


class InfiniteCount(WalkenumError):
    """Some length has infinitely many walks (e.g. free walks with a vertical step)."""


class SingularSystem(WalkenumError):
    """A linear system over Q(t) has no unique solution."""


class PoleAtZero(WalkenumError):
    """Rational function has a pole at t = 0, so no power-series expansion."""


class NonConvergence(WalkenumError):
    """Vector iteration failed to reach a fixed point within the sweep budget."""


class IterationDiverges(WalkenumError):
    """Single-polynomial iteration failed to stabilize a coefficient in time."""


class MissingLinearTerm(WalkenumError):
    """Single-polynomial iteration requires a linear term with nonzero constant coefficient."""


class EliminationFailed(WalkenumError):
    """No basis element free of auxiliary variables was found."""


class ResourceExceeded(WalkenumError):
    """A degree or term-count budget was hit during basis computation."""


class DivisionMismatch(WalkenumError):
    """Fitted annihilator does not divide the candidate polynomial."""


class NoAnnihilatorWithinBounds(WalkenumError):
    """No lower-degree annihilator was found within the fitting bounds."""


class SingularReduction(WalkenumError):
    """Minimal polynomial shares a factor with its F-derivative (not squarefree)."""


class InsufficientTerms(WalkenumError):
    """Too few sequence terms for the requested fit or verification."""


class NotFound(WalkenumError):
    """Recurrence search exhausted its (order, degree) budget without a fit."""


class LeadingZero(WalkenumError):
    """Leading recurrence coefficient vanishes at some n, so unrolling stalls."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"leading coefficient vanishes at n = {n}")


class NoPositiveRealRoot(WalkenumError):
    """Polynomial has no root in (0, infinity)."""


class NonIntegralCoefficients(WalkenumError):
    """b-file output requires integer terms."""


class MixedXSteps(WalkenumError):
    """Laurent constant-term oracle needs every step to advance x by exactly 1."""
