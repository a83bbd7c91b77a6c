"""Source positions and diagnostics shared by every stage of the toolchain."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Span:
    """Position of a source region: 1-based line and column plus length in characters.

    Multi-line constructs are anchored at their first token.
    """

    line: int
    col: int
    len: int


@dataclass(frozen=True)
class Diagnostic:
    """A single problem report with a stable machine-readable code.

    `code` identifies the kind of problem (e.g. "UnknownGate") so editors and
    tests can match on it without parsing the human-readable message.
    """

    severity: Severity
    code: str
    message: str
    span: Span
    hint: str | None = None

    def format(self, filename: str = "<input>") -> str:
        return (
            f"{filename}:{self.span.line}:{self.span.col}: "
            f"{self.severity.value}: {self.message}"
        )

    def to_dict(self, filename: str | None = None) -> dict:
        record = {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
            "line": self.span.line,
            "col": self.span.col,
            "len": self.span.len,
        }
        if self.hint is not None:
            record["hint"] = self.hint
        if filename is not None:
            record["file"] = filename
        return record


def error(code: str, message: str, span: Span, hint: str | None = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, hint)


def warning(code: str, message: str, span: Span, hint: str | None = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span, hint)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)
