"""
Error hierarchy for ToriCount.

Every library failure is one of three kinds: a mathematical domain violation,
malformed input, or an exceeded resource cap. The CLI maps all of them to the
same JSON error envelope.
"""

from __future__ import annotations

from typing import Optional


class ToriCountError(Exception):
    """Base class for all ToriCount errors."""

    kind: str = "internal"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        """Return the JSON error envelope body."""
        return {"kind": self.kind, "message": self.message}


class DomainError(ToriCountError, ValueError):
    """Raised when arguments lie outside the mathematical domain of an operation."""

    kind = "domain"


class InputError(ToriCountError, ValueError):
    """Raised for malformed or inconsistent input (bad tables, parse failures)."""

    kind = "input"


class ResourceLimitError(ToriCountError, RuntimeError):
    """
    Raised when a computation would exceed a configured cap.

    Attributes:
        cap: Name of the configuration key that was exceeded
        limit: Value of the cap at the time of the failure
    """

    kind = "resource"

    def __init__(self, message: str, cap: str, limit: Optional[int] = None):
        super().__init__(f"{message} (cap {cap}={limit})" if limit is not None else f"{message} (cap {cap})")
        self.cap = cap
        self.limit = limit
