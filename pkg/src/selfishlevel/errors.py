"""Exception taxonomy shared across the package.

Everything derives from GameError so callers (and the CLI) can catch one
base class.  Structural problems with a game map to exit code 2 in the
CLI; ExplosionGuard maps to exit code 3.
"""

from __future__ import annotations


class GameError(Exception):
    """Base class for all errors raised by this package."""


# --- game construction / validation ---------------------------------------

class PlayerCountTooSmall(GameError):
    """A strategic game needs at least two players."""


class EmptyStrategySet(GameError):
    """Every player must have at least one strategy."""


class DuplicateLabel(GameError):
    """Strategy labels must be unique within a player."""


class DimensionMismatch(GameError):
    """Payoff tensor shape does not match the strategy sets."""


class IndexOutOfRange(GameError, IndexError):
    """A player or strategy index is outside the game's bounds."""


# --- analysis preconditions ------------------------------------------------

class NotImproving(GameError):
    """The deviation does not strictly improve the deviating player."""


class NotStableOptimum(GameError):
    """The profile is not a stable social optimum of the game."""


# --- transforms ------------------------------------------------------------

class NegativeAlpha(GameError):
    """Altruism levels must be non-negative."""


class NonPositiveScale(GameError):
    """Payoff scaling requires a strictly positive factor."""


class ParamOutOfRange(GameError):
    """A parameter violates its documented range."""


# --- family generators -----------------------------------------------------

class ExplosionGuard(GameError):
    """The joint-strategy space exceeds the configured cell cap."""


class InfeasibleParams(GameError):
    """No instance exists for the requested parameters."""


# --- closed forms ----------------------------------------------------------

class ZeroLinearCoefficients(GameError):
    """Discrepancy needs at least one non-zero linear delay coefficient."""


class OutOfDeviationRange(GameError):
    """The deviation lies outside the range the closed form covers."""


class MissingDiscrepancy(GameError):
    """The singleton congestion bound needs a maximum discrepancy value."""


class UnknownFamily(GameError):
    """No closed-form result is known for this family."""


# --- game documents --------------------------------------------------------

class GameDocumentError(GameError):
    """Base class for game-document parse errors."""


class DocumentSyntaxError(GameDocumentError):
    """Malformed document text; carries line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class MissingProfile(GameDocumentError):
    """Sparse payoff list does not cover every joint strategy."""


class DuplicateProfile(GameDocumentError):
    """Sparse payoff list mentions a joint strategy twice."""


class ZeroDenominator(GameDocumentError):
    """A rational literal has denominator zero."""
