"""Exception types shared across the package."""

from __future__ import annotations

from .scalars import DivisionByZero


class QBorcherdsError(Exception):
    pass


class DatumAxiomError(QBorcherdsError):
    """A Borcherds-Cartan datum violates one of its axioms.

    ``axiom`` is a short stable tag such as ``"zero-pattern"``.
    """

    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


class ParseError(QBorcherdsError):
    pass


class DepthExceeded(QBorcherdsError):
    pass


class DomainError(QBorcherdsError, ValueError):
    pass


class NotExhausted(QBorcherdsError):
    """A module still has nonzero weight spaces at the truncation depth."""


__all__ = [
    "QBorcherdsError",
    "DatumAxiomError",
    "ParseError",
    "DepthExceeded",
    "DomainError",
    "NotExhausted",
    "DivisionByZero",
]
