"""Exception types shared across the package."""

from __future__ import annotations


class BHTuranError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(BHTuranError):
    """An input exceeds the size supported by an exact routine."""


class ParameterError(BHTuranError, ValueError):
    """A constructor or operation received parameters outside its domain."""


class Graph6Error(BHTuranError, ValueError):
    """Malformed graph6 text. ``offset`` is the 0-based byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ConvergenceError(BHTuranError):
    """Power iteration did not reach the requested residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message}; last residual {residual:.3e}")
        self.residual = residual


class CertificateMismatch(BHTuranError, ValueError):
    """A Perron certificate does not belong to the graph it was paired with."""
