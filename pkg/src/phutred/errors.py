"""Shared exception types for the reduction pipeline."""


class QbfSyntaxError(ValueError):
    """Malformed formula text. Carries line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class FormError(ValueError):
    """Structurally valid input that violates the restricted formula class."""


class ResourceError(RuntimeError):
    """A configured size or node cap was exceeded."""


class IllegalMove(ValueError):
    """A move that fails validation against the current position."""


class LayoutError(RuntimeError):
    """The board compiler could not satisfy one of its own invariants."""


class SemanticsError(RuntimeError):
    """A gap or crossing cell admits jumps off its line's corridor."""


class ReplayError(RuntimeError):
    """A scripted board line was rejected by the rules engine."""
