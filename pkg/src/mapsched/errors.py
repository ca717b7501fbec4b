"""Exception types shared across the package."""

from __future__ import annotations


class MapschedError(Exception):
    """Base class for all package-specific failures."""


class InvalidInstanceError(MapschedError):
    """An instance (or instance document) violates its invariants."""


class InvalidSchemaError(MapschedError):
    """A mapping schema is structurally unusable for the given instance.

    Raised for out-of-range indices, kind mismatches, malformed documents,
    and for operations whose precondition requires a schema that passes
    validation.  ``pair``, when set, names the first uncovered pair that
    triggered the failure.
    """

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class InfeasibleInstanceError(MapschedError):
    """Some required pair cannot fit any reducer at the given capacity."""


class InstanceTooLargeError(MapschedError):
    """The instance exceeds the exhaustive oracle's size guard."""


class HeuristicInapplicableError(MapschedError):
    """A constructive heuristic cannot place some input within its bin budget.

    ``side`` is ``"x"`` or ``"y"`` for grid covers, ``None`` for all-to-all.
    """

    def __init__(self, message: str, side: str | None = None):
        super().__init__(message)
        self.side = side
