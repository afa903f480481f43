"""Recursive-descent parser for the model language.

Single pass, LL(1), with a precedence ladder for predicates
(``or`` < ``and`` < ``not`` < atoms).  Identifiers are resolved here
against a symbol table built from the declarations, so unknown dimensions,
unknown labels and type mismatches (ordering comparisons on unordered
dimensions) are parse-time diagnostics.  Errors accumulate: on a syntax
error the parser reports what it expected, skips to the next statement
boundary, and keeps going; :func:`parse_model` raises a single
:class:`ModelError` carrying everything it found.
"""

from __future__ import annotations

from fractions import Fraction

from . import ast
from .diagnostics import Diagnostic, ModelError, SourceSpan
from .lexer import IDENT, NUMBER, STRING, Token, tokenize

_QUERY_KINDS = ("P", "O", "L", "E")
_COMPARE_OPS = ("<", "<=", ">", ">=")
_STATEMENT_STARTS = ("dimension", "continuum", "partition", "query")


class _Resync(Exception):
    """Internal: unwind to the nearest statement boundary."""


class _Parser:
    def __init__(self, tokens: list[Token], source_length: int):
        self.tokens = tokens
        self.index = 0
        self.diagnostics: list[Diagnostic] = []
        self.source_length = source_length
        self.declarations: dict[str, ast.DimensionDecl | ast.ContinuumDecl] = {}
        self.partitions: dict[str, ast.PartitionDecl] = {}

    # -- token plumbing ------------------------------------------------------

    def _eof_span(self) -> SourceSpan:
        if self.tokens:
            last = self.tokens[-1].span
            return SourceSpan(last.end, last.end, last.line, last.column)
        return SourceSpan(0, 0, 1, 1)

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            return False
        return text is None or tok.text == text

    def at_keyword(self, word: str) -> bool:
        return self.at(IDENT, word)

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def error(self, message: str, span: SourceSpan | None = None):
        if span is None:
            tok = self.peek()
            span = tok.span if tok else self._eof_span()
        self.diagnostics.append(Diagnostic(message, span))

    def _found(self) -> str:
        tok = self.peek()
        return f"'{tok.text}'" if tok else "end of input"

    def expect(self, kind: str, what: str) -> Token:
        if self.at(kind):
            return self.advance()
        self.error(f"expected {what}, found {self._found()}")
        raise _Resync

    def expect_keyword(self, word: str) -> Token:
        if self.at_keyword(word):
            return self.advance()
        self.error(f"expected '{word}', found {self._found()}")
        raise _Resync

    def synchronize(self, also: tuple[str, ...] = ()):
        while (tok := self.peek()) is not None:
            if tok.kind == IDENT and tok.text in _STATEMENT_STARTS:
                return
            if tok.kind in ("}",) or tok.kind in also:
                return
            self.advance()

    # -- grammar -------------------------------------------------------------

    def parse_file(self) -> ast.Model:
        name = "<invalid>"
        declarations: list[ast.DimensionDecl | ast.ContinuumDecl] = []
        partitions: list[ast.PartitionDecl] = []
        queries: list[ast.Query] = []
        first = self.peek()
        start_span = first.span if first else self._eof_span()
        try:
            self.expect_keyword("model")
            name = self.expect(STRING, "the model name as a string").text
            self.expect("{", "'{'")
        except _Resync:
            self.synchronize()
        while True:
            if self.at_keyword("dimension") or self.at_keyword("continuum"):
                try:
                    decl = self.parse_declaration()
                except _Resync:
                    self.synchronize()
                    continue
                if decl.name in self.declarations:
                    self.error(f"duplicate declaration of {decl.name!r}", decl.span)
                else:
                    self.declarations[decl.name] = decl
                    declarations.append(decl)
                continue
            break
        while self.at_keyword("partition"):
            try:
                part = self.parse_partition()
            except _Resync:
                self.synchronize()
                continue
            if part.name in self.partitions or part.name in self.declarations:
                self.error(f"duplicate declaration of {part.name!r}", part.span)
            else:
                self.partitions[part.name] = part
                partitions.append(part)
        if self.at_keyword("dimension") or self.at_keyword("continuum"):
            self.error("declarations must come before partitions")
            self.synchronize(also=("query",))
        try:
            self.expect("}", "'}' closing the model block")
        except _Resync:
            self.synchronize()
            if self.at("}"):
                self.advance()
        while self.at_keyword("query"):
            try:
                queries.append(self.parse_query())
            except _Resync:
                self.synchronize()
        if self.peek() is not None:
            self.error(f"expected 'query' or end of input, found {self._found()}")
        end = self.tokens[-1].span.end if self.tokens else 0
        span = SourceSpan(start_span.start, end, start_span.line, start_span.column)
        return ast.Model(name, tuple(declarations), tuple(partitions), tuple(queries), span)

    def parse_declaration(self):
        if self.at_keyword("dimension"):
            return self.parse_dimension()
        return self.parse_continuum()

    def parse_label(self) -> Token:
        tok = self.peek()
        if tok is not None and tok.kind in (IDENT, STRING, NUMBER):
            return self.advance()
        self.error(f"expected a label, found {self._found()}")
        raise _Resync

    def parse_dimension(self) -> ast.DimensionDecl:
        start = self.advance().span
        name = self.expect(IDENT, "a dimension name").text
        self.expect("=", "'='")
        self.expect("{", "'{'")
        labels: list[str] = []
        label_tok = self.parse_label()
        labels.append(label_tok.text)
        while self.at(","):
            self.advance()
            label_tok = self.parse_label()
            if label_tok.text in labels:
                self.error(
                    f"duplicate label {label_tok.text!r} in dimension {name!r}",
                    label_tok.span,
                )
            else:
                labels.append(label_tok.text)
        closing = self.expect("}", "',' or '}'")
        span = SourceSpan(start.start, closing.span.end, start.line, start.column)
        return ast.DimensionDecl(name, tuple(labels), span)

    def _number(self, what: str) -> tuple[Fraction, Token]:
        tok = self.expect(NUMBER, what)
        return Fraction(tok.text), tok

    def parse_continuum(self) -> ast.ContinuumDecl:
        start = self.advance().span
        name = self.expect(IDENT, "a continuum name").text
        self.expect_keyword("from")
        low, _ = self._number("a number after 'from'")
        self.expect_keyword("to")
        high, high_tok = self._number("a number after 'to'")
        self.expect_keyword("tranches")
        if self.at_keyword("aleph"):
            end_tok = self.advance()
            tranches: int | None = None
        else:
            tok = self.expect(NUMBER, "a tranche count or 'aleph'")
            end_tok = tok
            if "." in tok.text:
                self.error("tranche count must be an integer", tok.span)
                tranches = max(1, int(tok.text.split(".")[0] or "1"))
            else:
                tranches = int(tok.text)
                if tranches < 1:
                    self.error("tranche count must be at least 1", tok.span)
                    tranches = 1
        if low >= high:
            self.error(
                f"continuum {name!r} needs 'from' below 'to' ({low} >= {high})",
                high_tok.span,
            )
        span = SourceSpan(start.start, end_tok.span.end, start.line, start.column)
        return ast.ContinuumDecl(name, low, high, tranches, span)

    def parse_partition(self) -> ast.PartitionDecl:
        start = self.advance().span
        name = self.expect(IDENT, "a partition name").text
        self.expect("{", "'{'")
        blocks: list[ast.Block] = []
        while not self.at("}"):
            if self.peek() is None:
                self.error("expected a block or '}' before end of input")
                raise _Resync
            block_name_tok = self.expect(IDENT, "a block name")
            self.expect(":", "':'")
            predicate = self.parse_predicate()
            semi = self.expect(";", "';' after the block predicate")
            if any(b.name == block_name_tok.text for b in blocks):
                self.error(
                    f"duplicate block name {block_name_tok.text!r}",
                    block_name_tok.span,
                )
            else:
                span = SourceSpan(
                    block_name_tok.span.start,
                    semi.span.end,
                    block_name_tok.span.line,
                    block_name_tok.span.column,
                )
                blocks.append(ast.Block(block_name_tok.text, predicate, span))
        closing = self.advance()
        if not blocks:
            self.error(f"partition {name!r} has no blocks", start)
        span = SourceSpan(start.start, closing.span.end, start.line, start.column)
        return ast.PartitionDecl(name, tuple(blocks), span)

    def parse_query(self) -> ast.Query:
        start = self.advance().span

        def finish(kind, predicate=None, given=None, partition=None, end=None):
            end_offset = end.end if end else start.end
            span = SourceSpan(start.start, end_offset, start.line, start.column)
            return ast.Query(kind, predicate, given, partition, span)

        if self.at_keyword("atomic"):
            tok = self.advance()
            return finish("atomic", end=tok.span)
        if self.at_keyword("table"):
            self.advance()
            self.expect("(", "'('")
            name_tok = self.expect(IDENT, "a partition name")
            if name_tok.text not in self.partitions:
                self.error(f"unknown partition {name_tok.text!r}", name_tok.span)
            closing = self.expect(")", "')'")
            return finish("table", partition=name_tok.text, end=closing.span)
        for kind in _QUERY_KINDS:
            if self.at_keyword(kind):
                self.advance()
                self.expect("(", "'('")
                predicate = self.parse_predicate()
                given = None
                if self.at("|"):
                    if kind != "P":
                        self.error(f"'{kind}' does not take a conditioning predicate")
                    self.advance()
                    given = self.parse_predicate()
                closing = self.expect(")", "')'")
                if given is not None:
                    return finish("P_cond", predicate, given, end=closing.span)
                return finish(kind, predicate, end=closing.span)
        self.error(
            "expected one of 'P', 'O', 'L', 'E', 'table', 'atomic' after 'query', "
            f"found {self._found()}"
        )
        raise _Resync

    # -- predicates ------------------------------------------------------------

    def parse_predicate(self) -> ast.Predicate:
        return self.parse_or()

    def parse_or(self) -> ast.Predicate:
        left = self.parse_and()
        while self.at_keyword("or"):
            self.advance()
            right = self.parse_and()
            span = SourceSpan(
                left.span.start, right.span.end, left.span.line, left.span.column
            )
            left = ast.OrPred(left, right, span)
        return left

    def parse_and(self) -> ast.Predicate:
        left = self.parse_unary()
        while self.at_keyword("and"):
            self.advance()
            right = self.parse_unary()
            span = SourceSpan(
                left.span.start, right.span.end, left.span.line, left.span.column
            )
            left = ast.AndPred(left, right, span)
        return left

    def parse_unary(self) -> ast.Predicate:
        if self.at_keyword("not"):
            start = self.advance().span
            operand = self.parse_unary()
            span = SourceSpan(start.start, operand.span.end, start.line, start.column)
            return ast.NotPred(operand, span)
        return self.parse_atom()

    def _declared(self, name_tok: Token):
        decl = self.declarations.get(name_tok.text)
        if decl is None:
            self.error(f"unknown dimension {name_tok.text!r}", name_tok.span)
        return decl

    def _check_label(self, decl, label_tok: Token, name: str):
        if isinstance(decl, ast.ContinuumDecl):
            self.error(
                f"continuum {name!r} has no labels to match; "
                "use an ordering comparison",
                label_tok.span,
            )
        elif isinstance(decl, ast.DimensionDecl) and label_tok.text not in decl.labels:
            self.error(
                f"unknown label {label_tok.text!r} for dimension {name!r}",
                label_tok.span,
            )

    def parse_atom(self) -> ast.Predicate:
        if self.at("("):
            self.advance()
            inner = self.parse_predicate()
            self.expect(")", "')'")
            return inner
        if self.at_keyword("true"):
            return ast.TrueLiteral(self.advance().span)
        if self.at_keyword("false"):
            return ast.FalseLiteral(self.advance().span)
        if self.at(IDENT):
            name_tok = self.advance()
            decl = self._declared(name_tok)
            if self.at("=="):
                self.advance()
                label_tok = self.parse_label()
                self._check_label(decl, label_tok, name_tok.text)
                span = SourceSpan(
                    name_tok.span.start,
                    label_tok.span.end,
                    name_tok.span.line,
                    name_tok.span.column,
                )
                return ast.LabelIs(name_tok.text, label_tok.text, span)
            if self.at_keyword("in"):
                self.advance()
                self.expect("{", "'{'")
                labels = []
                label_tok = self.parse_label()
                self._check_label(decl, label_tok, name_tok.text)
                labels.append(label_tok.text)
                while self.at(","):
                    self.advance()
                    label_tok = self.parse_label()
                    self._check_label(decl, label_tok, name_tok.text)
                    if label_tok.text not in labels:
                        labels.append(label_tok.text)
                closing = self.expect("}", "',' or '}'")
                span = SourceSpan(
                    name_tok.span.start,
                    closing.span.end,
                    name_tok.span.line,
                    name_tok.span.column,
                )
                return ast.LabelIn(name_tok.text, tuple(labels), span)
            for op in _COMPARE_OPS:
                if self.at(op):
                    self.advance()
                    value, value_tok = self._number(f"a number after '{op}'")
                    if decl is not None and not isinstance(decl, ast.ContinuumDecl):
                        self.error(
                            f"ordering comparison needs a continuum; "
                            f"{name_tok.text!r} is a labelled dimension",
                            name_tok.span,
                        )
                    span = SourceSpan(
                        name_tok.span.start,
                        value_tok.span.end,
                        name_tok.span.line,
                        name_tok.span.column,
                    )
                    return ast.Comparison(name_tok.text, op, value, span)
            self.error(
                f"expected '==', 'in' or a comparison after {name_tok.text!r}, "
                f"found {self._found()}"
            )
            raise _Resync
        self.error(
            f"expected a predicate (dimension test, 'true', 'false' or '('), "
            f"found {self._found()}"
        )
        raise _Resync


def parse_model(source: str, filename: str = "<model>") -> ast.Model:
    """Parse a model file into a syntax tree.

    Raises :class:`ModelError` carrying every diagnostic if anything is
    wrong; the ``filename`` is only used when rendering those diagnostics.
    """
    tokens, diagnostics = tokenize(source)
    if not tokens and not diagnostics:
        raise ModelError([Diagnostic("empty model", SourceSpan(0, 0, 1, 1))])
    parser = _Parser(tokens, len(source))
    parser.diagnostics.extend(diagnostics)
    model = parser.parse_file()
    if parser.diagnostics:
        parser.diagnostics.sort(key=lambda d: (d.span.start, d.message))
        raise ModelError(parser.diagnostics)
    return model
