"""Lexer for QADL scripts.

Hand-rolled, line oriented. `@startqadl` / `@endqadl` must each sit on a line
of their own; when a start tag is present, everything before it and everything
after the matching end tag is ignored, so scripts can be embedded in other
documents. Sources without a start tag are lexed in full, which lets fragments
be tokenized directly.

Lexing never raises: unknown characters and unterminated bitstrings are
collected as diagnostics and scanning continues.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, unique

from .diagnostics import Diagnostic, Span, error

START_TAG_TEXT = "@startqadl"
END_TAG_TEXT = "@endqadl"


@unique
class TokenKind(Enum):
    KW_CIRCUIT = "Circuit"
    KW_QUBIT = "qubit"
    KW_GATE = "gate"
    KW_MEASURE = "measure"
    KW_IF = "if"
    KW_REPEAT = "repeat"
    KW_NODE = "node"
    KW_EDGE = "edge"
    KW_FLOW = "flow"
    IDENT = "identifier"
    INT_LIT = "integer"
    FLOAT_LIT = "float"
    BITSTRING_LIT = "bitstring"
    ARROW = "->"
    COMMA = ","
    LBRACE = "{"
    RBRACE = "}"
    LPAREN = "("
    RPAREN = ")"
    EQEQ = "=="
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    COLON = ":"
    START_TAG = START_TAG_TEXT
    END_TAG = END_TAG_TEXT
    EOF = "end of input"


KEYWORDS = {
    "Circuit": TokenKind.KW_CIRCUIT,
    "qubit": TokenKind.KW_QUBIT,
    "gate": TokenKind.KW_GATE,
    "measure": TokenKind.KW_MEASURE,
    "if": TokenKind.KW_IF,
    "repeat": TokenKind.KW_REPEAT,
    "node": TokenKind.KW_NODE,
    "edge": TokenKind.KW_EDGE,
    "flow": TokenKind.KW_FLOW,
}

_PUNCT = {
    ",": TokenKind.COMMA,
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "+": TokenKind.PLUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    ":": TokenKind.COLON,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span = field(compare=False)

    def __repr__(self) -> str:  # compact, for test failure output
        return f"{self.kind.name}({self.lexeme!r}@{self.span.line}:{self.span.col})"


def _is_ident_start(c: str) -> bool:
    return c.isascii() and (c.isalpha() or c == "_")


def _is_ident_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


class _Lexer:
    def __init__(self, source: str):
        self.lines = source.split("\n")
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []

    def run(self) -> None:
        start_idx = None
        for i, line in enumerate(self.lines):
            if line.strip() == START_TAG_TEXT:
                start_idx = i
                break
        if start_idx is None:
            line_range = range(len(self.lines))
        else:
            self._emit_tag(start_idx, START_TAG_TEXT, TokenKind.START_TAG)
            line_range = range(start_idx + 1, len(self.lines))

        last_line = start_idx + 1 if start_idx is not None else 0
        for i in line_range:
            last_line = i
            stripped = self.lines[i].strip()
            if stripped == END_TAG_TEXT:
                self._emit_tag(i, END_TAG_TEXT, TokenKind.END_TAG)
                if start_idx is not None:
                    break  # everything after the end tag is ignored
                continue
            self._lex_line(i)

        eof_line = min(last_line, len(self.lines) - 1) if self.lines else 0
        eof_col = len(self.lines[eof_line]) + 1 if self.lines else 1
        self.tokens.append(Token(TokenKind.EOF, "", Span(eof_line + 1, eof_col, 0)))

    def _emit_tag(self, line_idx: int, text: str, kind: TokenKind) -> None:
        col = self.lines[line_idx].index(text) + 1
        self.tokens.append(Token(kind, text, Span(line_idx + 1, col, len(text))))

    def _lex_line(self, line_idx: int) -> None:
        line = self.lines[line_idx]
        lineno = line_idx + 1
        pos = 0
        n = len(line)
        while pos < n:
            c = line[pos]
            if c in " \t\r":
                pos += 1
                continue
            if c == "/" and pos + 1 < n and line[pos + 1] == "/":
                return  # comment to end of line
            if _is_ident_start(c):
                end = pos + 1
                while end < n and _is_ident_char(line[end]):
                    end += 1
                word = line[pos:end]
                kind = KEYWORDS.get(word, TokenKind.IDENT)
                self._add(kind, word, lineno, pos)
                pos = end
                continue
            if c.isdigit():
                pos = self._lex_number(line, lineno, pos)
                continue
            if c == '"':
                pos = self._lex_bitstring(line, lineno, pos)
                continue
            if c == "-":
                if pos + 1 < n and line[pos + 1] == ">":
                    self._add(TokenKind.ARROW, "->", lineno, pos)
                    pos += 2
                else:
                    self._add(TokenKind.MINUS, "-", lineno, pos)
                    pos += 1
                continue
            if c == "=":
                if pos + 1 < n and line[pos + 1] == "=":
                    self._add(TokenKind.EQEQ, "==", lineno, pos)
                    pos += 2
                else:
                    self._error_char(
                        lineno, pos, "'='", hint="did you mean '=='?"
                    )
                    pos += 1
                continue
            if c in _PUNCT:
                self._add(_PUNCT[c], c, lineno, pos)
                pos += 1
                continue
            self._error_char(lineno, pos, repr(c))
            pos += 1

    def _lex_number(self, line: str, lineno: int, pos: int) -> int:
        n = len(line)
        end = pos
        while end < n and line[end].isdigit():
            end += 1
        is_float = False
        if end < n and line[end] == "." and end + 1 < n and line[end + 1].isdigit():
            is_float = True
            end += 1
            while end < n and line[end].isdigit():
                end += 1
        if end < n and line[end] in "eE":
            exp = end + 1
            if exp < n and line[exp] in "+-":
                exp += 1
            if exp < n and line[exp].isdigit():
                is_float = True
                end = exp + 1
                while end < n and line[end].isdigit():
                    end += 1
        kind = TokenKind.FLOAT_LIT if is_float else TokenKind.INT_LIT
        self._add(kind, line[pos:end], lineno, pos)
        return end

    def _lex_bitstring(self, line: str, lineno: int, pos: int) -> int:
        closing = line.find('"', pos + 1)
        if closing == -1:
            self.diagnostics.append(
                error(
                    "UnterminatedBitstring",
                    "unterminated bitstring literal",
                    Span(lineno, pos + 1, len(line) - pos),
                    hint='bitstring literals look like "101" and must close on the same line',
                )
            )
            return len(line)
        body = line[pos + 1 : closing]
        for offset, ch in enumerate(body):
            if ch not in "01":
                self._error_char(
                    lineno,
                    pos + 1 + offset,
                    repr(ch),
                    hint="bitstring literals may only contain 0 and 1",
                )
        self._add(TokenKind.BITSTRING_LIT, line[pos : closing + 1], lineno, pos)
        return closing + 1

    def _add(self, kind: TokenKind, lexeme: str, lineno: int, pos0: int) -> None:
        self.tokens.append(Token(kind, lexeme, Span(lineno, pos0 + 1, len(lexeme))))

    def _error_char(
        self, lineno: int, pos0: int, what: str, hint: str | None = None
    ) -> None:
        self.diagnostics.append(
            error(
                "UnknownCharacter",
                f"unexpected character {what}",
                Span(lineno, pos0 + 1, 1),
                hint,
            )
        )


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize a QADL script.

    Returns the full token stream (always ending in EOF) together with any
    lexical diagnostics; the stream is usable even when diagnostics are
    present.
    """
    lexer = _Lexer(source)
    lexer.run()
    return lexer.tokens, lexer.diagnostics
