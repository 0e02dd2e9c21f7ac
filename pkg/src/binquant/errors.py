"""Semantic exceptions shared across the quantizer library."""

from __future__ import annotations


class QuantizerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(QuantizerError, ValueError):
    """A model, prior, threshold vector, or channel spec violates its contract."""


class DegenerateChannelError(QuantizerError):
    """The correct-decision masses sit at machine 0/1, so the stationarity
    function has no usable value at this level (logs would be unbounded).

    Carries the offending level and masses so callers can move inward.
    """

    def __init__(self, level: float, correct0: float, correct1: float):
        self.level = level
        self.correct0 = correct0
        self.correct1 = correct1
        super().__init__(
            f"degenerate channel at level a={level!r}: f={correct0!r}, g={correct1!r} "
            f"within 1e-12 of {{0, 1}}"
        )


class NoSignChangeError(QuantizerError):
    """The stationarity function keeps one sign over the whole admissible
    range, so no optimum can be bracketed.  ``diagnosis`` explains why."""

    def __init__(self, diagnosis: str):
        self.diagnosis = diagnosis
        super().__init__(diagnosis)


class NotConvergedError(QuantizerError):
    """Bisection exceeded its iteration budget before reaching tolerance."""
