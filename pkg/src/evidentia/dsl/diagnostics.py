"""Source positions, diagnostics, and the error type shared by the lexer,
parser and compiler."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class SourceSpan:
    """Half-open byte range plus the 1-based line/column of its start."""

    start: int
    end: int
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    message: str
    span: SourceSpan

    def render(self, filename: str = "<model>") -> str:
        return f"{filename}:{self.span.line}:{self.span.column}: error: {self.message}"


class ModelError(Exception):
    """Parse or compile failure; carries every diagnostic gathered."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))

    def render(self, filename: str = "<model>") -> str:
        return "\n".join(d.render(filename) for d in self.diagnostics)
