"""Source diagnostics shared by the skillset, layer-model and LTL parsers."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple

import lark
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken
from lark.lexer import PatternStr

Span = Tuple[int, int]
NO_SPAN: Span = (0, 0)


class Severity(str, Enum):
    """Diagnostic severity; errors block compilation, warnings do not."""

    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """A message attached to a (line, column) source location."""

    severity: Severity
    message: str
    span: Span = NO_SPAN

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "message": self.message,
            "line": self.span[0],
            "column": self.span[1],
        }

    def __str__(self) -> str:
        line, column = self.span
        return f"{line}:{column}: {self.severity.value}: {self.message}"


def error(message: str, span: Span = NO_SPAN) -> Diagnostic:
    return Diagnostic(Severity.ERROR, message, span)


def warning(message: str, span: Span = NO_SPAN) -> Diagnostic:
    return Diagnostic(Severity.WARNING, message, span)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


class DiagnosticError(ValueError):
    """Raised by the ``parse_*`` entry points when a source has errors."""

    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = next((d for d in self.diagnostics if d.is_error), None)
        super().__init__(str(first) if first else "invalid input")


def _end_span(text: str) -> Span:
    lines = text.split("\n")
    return (len(lines), len(lines[-1]) + 1)


def _describe_terminal(parser: Optional[lark.Lark], name: str) -> str:
    if parser is not None:
        try:
            terminal = parser.get_terminal(name)
        except KeyError:
            return name
        if isinstance(terminal.pattern, PatternStr):
            return f"'{terminal.pattern.value}'"
    return name


def _expected(parser: Optional[lark.Lark], names: Optional[Iterable[str]]) -> str:
    described = sorted({_describe_terminal(parser, n) for n in (names or ())})
    return ", ".join(described) if described else "nothing"


def diagnostic_from_lark(
    exc: UnexpectedInput,
    text: str,
    parser: Optional[lark.Lark] = None,
) -> Diagnostic:
    """
    Convert a lark parse failure into an error diagnostic.

    Args:
        exc: The exception raised by ``Lark.parse``
        text: The text that was being parsed (used for end-of-input spans)
        parser: The parser, used to print expected terminals readably

    Returns:
        An error Diagnostic carrying a span and, for syntax errors, the
        expected-token set.
    """
    if isinstance(exc, UnexpectedCharacters):
        char = text[exc.pos_in_stream] if 0 <= exc.pos_in_stream < len(text) else ""
        return error(f"illegal character {char!r}", (exc.line, exc.column))
    if isinstance(exc, UnexpectedEOF):
        return error(
            f"unexpected end of input, expected one of: {_expected(parser, exc.expected)}",
            _end_span(text),
        )
    if isinstance(exc, UnexpectedToken):
        token = exc.token
        if token.type == "$END":
            return error(
                f"unexpected end of input, expected one of: {_expected(parser, exc.expected)}",
                _end_span(text),
            )
        line = token.line if isinstance(token.line, int) else 0
        column = token.column if isinstance(token.column, int) else 0
        return error(
            f"unexpected {str(token)!r}, expected one of: {_expected(parser, exc.expected)}",
            (line, column),
        )
    line = getattr(exc, "line", 0)
    column = getattr(exc, "column", 0)
    return error(str(exc).strip().splitlines()[0] if str(exc).strip() else "syntax error",
                 (line if isinstance(line, int) and line > 0 else 0,
                  column if isinstance(column, int) and column > 0 else 0))
