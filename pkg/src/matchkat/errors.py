"""Exception types shared across the package."""


class MatchKATError(Exception):
    """Base class for all errors raised by this package."""


class WidthError(MatchKATError, ValueError):
    """Operands disagree on width, or an index falls outside the packet."""


class IllFormedError(MatchKATError, ValueError):
    """A term violates a well-formedness rule (e.g. negation of an action)."""


class CapacityError(MatchKATError):
    """An exhaustive operation would exceed the configured enumeration cap."""


class ParseError(MatchKATError, ValueError):
    """Syntax error with the offending source span.

    ``span`` is a ``(start, end)`` pair of character offsets into the parsed
    text and ``expected`` lists the tokens that would have been accepted.
    """

    def __init__(self, message, span=(0, 0), expected=(), text=None):
        self.message = message
        self.span = span
        self.expected = tuple(expected)
        self.text = text
        super().__init__(self._render())

    def _render(self):
        start, end = self.span
        out = f"{self.message} at {start}"
        if end > start + 1:
            out += f"..{end}"
        if self.expected:
            out += " (expected " + ", ".join(self.expected) + ")"
        return out
