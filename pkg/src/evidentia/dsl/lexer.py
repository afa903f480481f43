"""Tokeniser for the model language.

Identifiers, numbers, double-quoted strings and punctuation; ``#`` starts a
comment running to end of line, and whitespace separates tokens.  Every
token carries its source span.  Illegal characters become diagnostics
rather than exceptions so later stages can keep accumulating errors.

Keywords are not distinguished here: the parser matches identifier text in
context, which keeps labels free to reuse words like ``to`` or ``table``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceSpan

IDENT = "identifier"
NUMBER = "number"
STRING = "string"

# Punctuation tokens use their own text as the kind.
_TWO_CHAR = ("==", "<=", ">=")
_ONE_CHAR = set("{}(),;:|<>=")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(source)

    def span(start: int, end: int, start_line: int, start_col: int) -> SourceSpan:
        return SourceSpan(start, end, start_line, start_col)

    while pos < n:
        ch = source[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        if ch == "#":
            while pos < n and source[pos] != "\n":
                pos += 1
            continue
        col = pos - line_start + 1
        start = pos
        if ch == '"':
            pos += 1
            while pos < n and source[pos] not in ('"', "\n"):
                pos += 1
            if pos >= n or source[pos] == "\n":
                diagnostics.append(
                    Diagnostic("unterminated string", span(start, pos, line, col))
                )
                continue
            pos += 1
            tokens.append(
                Token(STRING, source[start + 1 : pos - 1], span(start, pos, line, col))
            )
            continue
        if ch.isdigit():
            while pos < n and source[pos].isdigit():
                pos += 1
            if pos + 1 < n and source[pos] == "." and source[pos + 1].isdigit():
                pos += 1
                while pos < n and source[pos].isdigit():
                    pos += 1
            tokens.append(Token(NUMBER, source[start:pos], span(start, pos, line, col)))
            continue
        if ch.isalpha() or ch == "_":
            while pos < n and (source[pos].isalnum() or source[pos] == "_"):
                pos += 1
            tokens.append(Token(IDENT, source[start:pos], span(start, pos, line, col)))
            continue
        two = source[pos : pos + 2]
        if two in _TWO_CHAR:
            pos += 2
            tokens.append(Token(two, two, span(start, pos, line, col)))
            continue
        if ch in _ONE_CHAR:
            pos += 1
            tokens.append(Token(ch, ch, span(start, pos, line, col)))
            continue
        diagnostics.append(
            Diagnostic(f"unexpected character {ch!r}", span(start, pos + 1, line, col))
        )
        pos += 1

    return tokens, diagnostics
