"""Exception types shared across the package.

Each carries a short machine-readable ``code`` that the command line
reports alongside the message.
"""

from __future__ import annotations

__all__ = ["PeisError", "PreconditionError", "PoleError", "PrecisionError", "NotIntegralError"]


class PeisError(Exception):
    code = "error"


class PreconditionError(PeisError, ValueError):
    """An input violates a documented precondition."""

    code = "precondition"


class PoleError(PeisError, ArithmeticError):
    """The requested value sits on a pole (a regularizer vanishes)."""

    code = "pole"


class PrecisionError(PeisError, ArithmeticError):
    """Not enough p-adic or truncation precision to decide the answer."""

    code = "precision"


class NotIntegralError(PeisError, ArithmeticError):
    """Data that should define an integral object turned out non-integral.

    ``witness`` describes the offending combination.
    """

    code = "precondition"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
