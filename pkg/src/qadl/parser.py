"""Recursive-descent parser for QADL with single-token lookahead.

Errors never abort the pass: the parser records a diagnostic and
resynchronizes at the next statement keyword (or closing brace), so one run
reports every problem it can find. A tree is returned whenever a circuit
header was recognized, even if some statements failed.
"""
from __future__ import annotations

from .ast import (
    BinaryOp,
    Bitstring,
    EdgeDecl,
    FlowDecl,
    GateStmt,
    IfStmt,
    MeasureStmt,
    NodeDecl,
    NumberLit,
    ParamExpr,
    PiConst,
    QubitDecl,
    RepeatStmt,
    Stmt,
    SyntaxTree,
    UnaryNeg,
)
from .diagnostics import Diagnostic, Span, error
from .lexer import Token, TokenKind, tokenize

_STMT_START = {
    TokenKind.KW_QUBIT,
    TokenKind.KW_GATE,
    TokenKind.KW_MEASURE,
    TokenKind.KW_IF,
    TokenKind.KW_REPEAT,
    TokenKind.KW_NODE,
    TokenKind.KW_EDGE,
    TokenKind.KW_FLOW,
}

_SYNC = _STMT_START | {
    TokenKind.RBRACE,
    TokenKind.END_TAG,
    TokenKind.KW_CIRCUIT,
    TokenKind.EOF,
}


class _StmtError(Exception):
    """Internal signal: a statement failed and the cursor needs resync."""


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # --- cursor helpers ---

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at(self, kind: TokenKind) -> bool:
        return self.cur.kind is kind

    def accept(self, kind: TokenKind) -> Token | None:
        if self.at(kind):
            return self.advance()
        return None

    def expect(self, kind: TokenKind, context: str) -> Token:
        if self.at(kind):
            return self.advance()
        self.error_here(
            "ExpectedToken",
            f"expected {kind.value} {context}, found {self._describe(self.cur)}",
        )
        raise _StmtError()

    def _describe(self, tok: Token) -> str:
        if tok.kind is TokenKind.EOF:
            return "end of input"
        return f"'{tok.lexeme}'"

    def error_here(self, code: str, message: str, hint: str | None = None) -> None:
        self.diagnostics.append(error(code, message, self.cur.span, hint))

    def sync(self) -> None:
        while self.cur.kind not in _SYNC:
            self.advance()

    # --- grammar ---

    def parse(self) -> SyntaxTree | None:
        if not self.accept(TokenKind.START_TAG):
            self.diagnostics.append(
                error(
                    "MissingStartTag",
                    f"script must begin with {TokenKind.START_TAG.value} on its own line",
                    self.cur.span,
                )
            )
        tree = self.parse_circuit()
        if tree is not None:
            if not self.accept(TokenKind.END_TAG):
                if self.at(TokenKind.EOF):
                    self.diagnostics.append(
                        error(
                            "MissingEndTag",
                            f"missing {TokenKind.END_TAG.value} before end of input",
                            self.cur.span,
                        )
                    )
                else:
                    self.error_here(
                        "ExpectedToken",
                        f"expected {TokenKind.END_TAG.value} after the circuit, "
                        f"found {self._describe(self.cur)}",
                        hint="only one circuit is allowed per script"
                        if self.at(TokenKind.KW_CIRCUIT)
                        else None,
                    )
        return tree

    def parse_circuit(self) -> SyntaxTree | None:
        try:
            kw = self.expect(TokenKind.KW_CIRCUIT, "to declare the circuit")
            name = self.expect(TokenKind.IDENT, "as the circuit name")
            self.expect(TokenKind.LBRACE, "to open the circuit body")
        except _StmtError:
            return None
        statements = self.parse_block_body(opened_at=kw.span)
        return SyntaxTree(name.lexeme, tuple(statements), kw.span)

    def parse_block_body(self, opened_at: Span) -> list[Stmt]:
        statements: list[Stmt] = []
        while True:
            if self.accept(TokenKind.RBRACE):
                return statements
            if self.at(TokenKind.EOF) or self.at(TokenKind.END_TAG):
                self.diagnostics.append(
                    error(
                        "UnbalancedBrace",
                        "missing '}' for block opened at "
                        f"line {opened_at.line}, column {opened_at.col}",
                        self.cur.span,
                    )
                )
                return statements
            try:
                statements.append(self.parse_stmt())
            except _StmtError:
                self.sync()

    def parse_stmt(self) -> Stmt:
        kind = self.cur.kind
        if kind is TokenKind.KW_QUBIT:
            return self.parse_qubit_decl()
        if kind is TokenKind.KW_GATE:
            return self.parse_gate_stmt()
        if kind is TokenKind.KW_MEASURE:
            return self.parse_measure_stmt()
        if kind is TokenKind.KW_IF:
            return self.parse_if_stmt()
        if kind is TokenKind.KW_REPEAT:
            return self.parse_repeat_stmt()
        if kind is TokenKind.KW_NODE:
            return self.parse_node_decl()
        if kind is TokenKind.KW_EDGE:
            return self.parse_edge_decl()
        if kind is TokenKind.KW_FLOW:
            return self.parse_flow_decl()
        self.error_here(
            "ExpectedToken",
            f"expected a statement, found {self._describe(self.cur)}",
        )
        self.advance()  # guarantee progress before resync
        raise _StmtError()

    def parse_qubit_decl(self) -> QubitDecl:
        kw = self.advance()
        names: list[str] = []
        spans: list[Span] = []
        tok = self.expect(TokenKind.IDENT, "as a qubit name")
        names.append(tok.lexeme)
        spans.append(tok.span)
        while self.accept(TokenKind.COMMA):
            tok = self.expect(TokenKind.IDENT, "as a qubit name after ','")
            names.append(tok.lexeme)
            spans.append(tok.span)
        return QubitDecl(tuple(names), tuple(spans), kw.span)

    def parse_gate_stmt(self) -> GateStmt:
        kw = self.advance()
        if not self.at(TokenKind.IDENT):
            self.error_here(
                "ExpectedIdentifier",
                f"expected a gate name after 'gate', found {self._describe(self.cur)}",
            )
            raise _StmtError()
        name = self.advance()
        params: tuple[ParamExpr, ...] = ()
        if self.at(TokenKind.LPAREN):
            params = self.parse_param_list()
        operands: list[str] = []
        operand_spans: list[Span] = []
        broadcast = False
        if not self.at(TokenKind.IDENT):
            self.error_here(
                "ExpectedIdentifier",
                f"expected a qubit operand for gate '{name.lexeme}', "
                f"found {self._describe(self.cur)}",
            )
            raise _StmtError()
        while True:
            if self.at(TokenKind.IDENT):
                tok = self.advance()
                operands.append(tok.lexeme)
                operand_spans.append(tok.span)
            elif self.accept(TokenKind.COMMA):
                broadcast = True
                tok = self.expect(TokenKind.IDENT, "as an operand after ','")
                operands.append(tok.lexeme)
                operand_spans.append(tok.span)
            else:
                break
        return GateStmt(
            name.lexeme,
            params,
            tuple(operands),
            broadcast,
            name.span,
            tuple(operand_spans),
            kw.span,
        )

    def parse_param_list(self) -> tuple[ParamExpr, ...]:
        open_paren = self.advance()
        if self.accept(TokenKind.RPAREN):
            return ()
        params = [self.parse_param_expr()]
        while self.accept(TokenKind.COMMA):
            params.append(self.parse_param_expr())
        if not self.accept(TokenKind.RPAREN):
            self.diagnostics.append(
                error(
                    "MalformedParamList",
                    "missing ')' to close the parameter list opened at "
                    f"line {open_paren.span.line}, column {open_paren.span.col}",
                    self.cur.span,
                )
            )
            raise _StmtError()
        return tuple(params)

    def parse_param_expr(self) -> ParamExpr:
        expr = self.parse_param_term()
        while self.cur.kind in (TokenKind.PLUS, TokenKind.MINUS):
            op = self.advance().lexeme
            expr = BinaryOp(op, expr, self.parse_param_term())
        return expr

    def parse_param_term(self) -> ParamExpr:
        expr = self.parse_param_factor()
        while self.cur.kind in (TokenKind.STAR, TokenKind.SLASH):
            op = self.advance().lexeme
            expr = BinaryOp(op, expr, self.parse_param_factor())
        return expr

    def parse_param_factor(self) -> ParamExpr:
        if self.accept(TokenKind.MINUS):
            return UnaryNeg(self.parse_param_factor())
        if self.at(TokenKind.INT_LIT):
            tok = self.advance()
            return NumberLit(float(int(tok.lexeme)), True)
        if self.at(TokenKind.FLOAT_LIT):
            tok = self.advance()
            return NumberLit(float(tok.lexeme), False)
        if self.at(TokenKind.BITSTRING_LIT):
            tok = self.advance()
            return Bitstring(tok.lexeme.strip('"'))
        if self.at(TokenKind.IDENT):
            if self.cur.lexeme == "pi":
                self.advance()
                return PiConst()
            self.error_here(
                "MalformedParamList",
                f"unknown name '{self.cur.lexeme}' in parameter expression",
                hint="only numbers, 'pi', bitstrings and + - * / are allowed",
            )
            raise _StmtError()
        if self.at(TokenKind.LPAREN):
            self.advance()
            expr = self.parse_param_expr()
            if not self.accept(TokenKind.RPAREN):
                self.error_here("MalformedParamList", "missing ')' in parameter expression")
                raise _StmtError()
            return expr
        self.error_here(
            "MalformedParamList",
            f"expected a parameter expression, found {self._describe(self.cur)}",
        )
        raise _StmtError()

    def parse_measure_stmt(self) -> MeasureStmt:
        kw = self.advance()
        qubit = self.expect(TokenKind.IDENT, "as the qubit to measure")
        self.expect(TokenKind.ARROW, "between the qubit and its classical bit")
        cbit = self.expect(TokenKind.IDENT, "as the classical bit name")
        return MeasureStmt(qubit.lexeme, cbit.lexeme, qubit.span, cbit.span, kw.span)

    def parse_guard_value(self) -> int:
        tok = self.expect(TokenKind.INT_LIT, "after '=='")
        value = int(tok.lexeme)
        if value not in (0, 1):
            self.diagnostics.append(
                error(
                    "ExpectedToken",
                    f"classical bits are compared against 0 or 1, not {value}",
                    tok.span,
                )
            )
            raise _StmtError()
        return value

    def parse_if_stmt(self) -> IfStmt:
        kw = self.advance()
        cbit = self.expect(TokenKind.IDENT, "as the classical bit to test")
        expected = 1
        if self.accept(TokenKind.EQEQ):
            expected = self.parse_guard_value()
        brace = self.expect(TokenKind.LBRACE, "to open the if body")
        body = self.parse_block_body(opened_at=brace.span)
        return IfStmt(cbit.lexeme, expected, tuple(body), cbit.span, kw.span)

    def parse_repeat_stmt(self) -> RepeatStmt:
        kw = self.advance()
        count_tok = self.expect(TokenKind.INT_LIT, "as the repeat count")
        count = int(count_tok.lexeme)
        if count < 1:
            self.diagnostics.append(
                error(
                    "ExpectedToken",
                    f"repeat count must be at least 1, got {count}",
                    count_tok.span,
                )
            )
            raise _StmtError()
        brace = self.expect(TokenKind.LBRACE, "to open the repeat body")
        body = self.parse_block_body(opened_at=brace.span)
        return RepeatStmt(count, tuple(body), kw.span)

    def parse_node_decl(self) -> NodeDecl:
        kw = self.advance()
        name = self.expect(TokenKind.IDENT, "as the node name")
        brace = self.expect(TokenKind.LBRACE, "to open the node body")
        body = self.parse_block_body(opened_at=brace.span)
        return NodeDecl(name.lexeme, tuple(body), kw.span)

    def parse_edge_decl(self) -> EdgeDecl:
        kw = self.advance()
        src = self.expect(TokenKind.IDENT, "as the edge source node")
        self.expect(TokenKind.ARROW, "between the edge endpoints")
        dst = self.expect(TokenKind.IDENT, "as the edge target node")
        guard = None
        guard_span = None
        if self.at(TokenKind.IDENT) and self.cur.lexeme == "when":
            self.advance()
            cbit = self.expect(TokenKind.IDENT, "as the guarding classical bit")
            expected = 1
            if self.accept(TokenKind.EQEQ):
                expected = self.parse_guard_value()
            guard = (cbit.lexeme, expected)
            guard_span = cbit.span
        return EdgeDecl(src.lexeme, dst.lexeme, guard, guard_span, kw.span)

    def parse_flow_decl(self) -> FlowDecl:
        kw = self.advance()
        label = self.expect(TokenKind.IDENT, "('start') after 'flow'")
        if label.lexeme != "start":
            self.diagnostics.append(
                error(
                    "ExpectedToken",
                    f"expected 'start' after 'flow', found '{label.lexeme}'",
                    label.span,
                )
            )
            raise _StmtError()
        self.expect(TokenKind.COLON, "after 'flow start'")
        node = self.expect(TokenKind.IDENT, "as the starting node name")
        return FlowDecl(node.lexeme, kw.span)


def parse_program(tokens: list[Token]) -> tuple[SyntaxTree | None, list[Diagnostic]]:
    """Parse a token stream into a syntax tree.

    Returns (tree, diagnostics). The tree is None only when no circuit header
    could be recognized at all; otherwise a (possibly partial) tree is
    returned alongside whatever diagnostics were collected.
    """
    parser = _Parser(tokens)
    tree = parser.parse()
    return tree, parser.diagnostics


def parse_source(source: str) -> tuple[SyntaxTree | None, list[Diagnostic]]:
    """Tokenize and parse in one step, merging lexical and syntax diagnostics."""
    tokens, diagnostics = tokenize(source)
    tree, parse_diags = parse_program(tokens)
    return tree, diagnostics + parse_diags
