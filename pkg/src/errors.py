# src/errors.py
"""
Exception types shared by the tree, word, algebra and bijection modules.

Domain/precondition problems derive from ValueError, algorithmic failures
from RuntimeError. The CLI maps LiteralSyntaxError to exit code 2 and
everything else here to exit code 1.
"""

from __future__ import annotations


class TreeDomainError(ValueError):
    """An operation was called outside its domain."""


class ArityMismatchError(TreeDomainError):
    def __init__(self, left: int, right: int):
        super().__init__(f"arity mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class UnsupportedPatternError(TreeDomainError):
    pass


class PreconditionError(TreeDomainError):
    """Bijection input outside the avoidance class it is defined on."""

    def __init__(self, message: str, occurrence: str | None = None):
        super().__init__(message)
        self.occurrence = occurrence


class LiteralSyntaxError(ValueError):
    def __init__(self, message: str, offset: int | None = None, hint: str = ""):
        text = message if offset is None else f"{message} at byte {offset}"
        if hint:
            text += f" (expected {hint})"
        super().__init__(text)
        self.offset = offset
        self.hint = hint


class MalformedWordSetError(LiteralSyntaxError):
    pass


class DivergenceError(RuntimeError):
    pass


class DegeneracyError(RuntimeError):
    pass


class InconsistencyError(RuntimeError):
    pass


class ReportFormatError(ValueError):
    pass
