"""Exception hierarchy shared by the library and the command line.

The command line maps these exceptions to exit codes: parse and
certificate errors are usage errors (2), resource limits are 3, and
inconsistencies are internal bugs reported as verification failures (1).
"""

from __future__ import annotations


class UdboundError(Exception):
    """Base class of all errors raised by udbound."""


class ParseError(UdboundError, ValueError):
    """Raised when a polynomial, word or group spec cannot be parsed.

    Attributes:
        text (str): The input that failed to parse.
        position (int): Zero-based offset of the offending character.
        expected (tuple[str, ...]): Descriptions of the tokens that would
            have been accepted at `position`.

    """

    def __init__(
        self,
        message: str,
        text: str,
        position: int,
        expected: tuple[str, ...] = (),
    ) -> None:
        self.message = message
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(self.describe())

    def describe(self) -> str:
        """Return the message with the input and a caret under the error."""
        lines = [f"{self.message} at position {self.position}"]
        if self.expected:
            lines[0] += f" (expected {', '.join(self.expected)})"
        lines.append(f"  {self.text}")
        lines.append("  " + " " * self.position + "^")
        return "\n".join(lines)


class ResourceLimitError(UdboundError, RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""

    def __init__(self, what: str, limit: int, size: int) -> None:
        self.limit = limit
        self.size = size
        msg = f"{what} exceeds the configured cap: {size} > {limit}"
        super().__init__(msg)


class InconsistencyError(UdboundError, ArithmeticError):
    """Raised when an exact identity that must hold fails.

    This signals a bug (for example a wrong Cartan convention), never bad
    user input.
    """


class CertificateError(UdboundError, ValueError):
    """Raised for malformed certificates."""
