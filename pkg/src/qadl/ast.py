"""Syntax tree for QADL scripts.

All nodes are frozen dataclasses. Span fields are excluded from equality so
that `==` means *structural* identity: pretty-printing a tree with
`to_source` and re-parsing it yields an equal tree even though every
position changed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Span

# --- parameter expressions -------------------------------------------------


@dataclass(frozen=True)
class NumberLit:
    value: float
    is_int: bool


@dataclass(frozen=True)
class PiConst:
    pass


@dataclass(frozen=True)
class UnaryNeg:
    operand: "ParamExpr"


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of + - * /
    left: "ParamExpr"
    right: "ParamExpr"


@dataclass(frozen=True)
class Bitstring:
    bits: str


ParamExpr = Union[NumberLit, PiConst, UnaryNeg, BinaryOp, Bitstring]

# --- statements --------------------------------------------------------------


@dataclass(frozen=True)
class QubitDecl:
    names: tuple[str, ...]
    name_spans: tuple[Span, ...] = field(compare=False)
    span: Span = field(compare=False)


@dataclass(frozen=True)
class GateStmt:
    gate: str
    params: tuple[ParamExpr, ...]
    operands: tuple[str, ...]
    broadcast: bool  # true iff the operand list was comma-separated
    gate_span: Span = field(compare=False)
    operand_spans: tuple[Span, ...] = field(compare=False)
    span: Span = field(compare=False)


@dataclass(frozen=True)
class MeasureStmt:
    qubit: str
    cbit: str
    qubit_span: Span = field(compare=False)
    cbit_span: Span = field(compare=False)
    span: Span = field(compare=False)


@dataclass(frozen=True)
class IfStmt:
    cbit: str
    expected: int  # 0 or 1
    body: tuple["Stmt", ...]
    cbit_span: Span = field(compare=False)
    span: Span = field(compare=False)


@dataclass(frozen=True)
class RepeatStmt:
    count: int
    body: tuple["Stmt", ...]
    span: Span = field(compare=False)


@dataclass(frozen=True)
class NodeDecl:
    name: str
    body: tuple["Stmt", ...]
    span: Span = field(compare=False)


@dataclass(frozen=True)
class EdgeDecl:
    src: str
    dst: str
    guard: tuple[str, int] | None  # (cbit name, expected value)
    guard_span: Span | None = field(compare=False)
    span: Span = field(compare=False)


@dataclass(frozen=True)
class FlowDecl:
    start: str
    span: Span = field(compare=False)


Stmt = Union[
    QubitDecl, GateStmt, MeasureStmt, IfStmt, RepeatStmt, NodeDecl, EdgeDecl, FlowDecl
]


@dataclass(frozen=True)
class SyntaxTree:
    circuit_name: str
    statements: tuple[Stmt, ...]
    span: Span = field(compare=False)


# --- pretty printer ----------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _expr_prec(expr: ParamExpr) -> int:
    if isinstance(expr, BinaryOp):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, UnaryNeg):
        return 3
    return 4


def format_param(expr: ParamExpr) -> str:
    if isinstance(expr, NumberLit):
        return str(int(expr.value)) if expr.is_int else repr(expr.value)
    if isinstance(expr, PiConst):
        return "pi"
    if isinstance(expr, UnaryNeg):
        inner = format_param(expr.operand)
        if _expr_prec(expr.operand) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinaryOp):
        prec = _PRECEDENCE[expr.op]
        left = format_param(expr.left)
        if _expr_prec(expr.left) < prec:
            left = f"({left})"
        right = format_param(expr.right)
        # the grammar is left associative, so an equal-precedence right child
        # must keep its parentheses to round-trip structurally
        if _expr_prec(expr.right) <= prec:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Bitstring):
        return f'"{expr.bits}"'
    raise TypeError(f"not a parameter expression: {expr!r}")


def _format_stmt(stmt: Stmt, indent: int, out: list[str]) -> None:
    pad = "    " * indent
    if isinstance(stmt, QubitDecl):
        out.append(f"{pad}qubit {', '.join(stmt.names)}")
    elif isinstance(stmt, GateStmt):
        params = ""
        if stmt.params:
            params = "(" + ", ".join(format_param(p) for p in stmt.params) + ")"
        sep = ", " if stmt.broadcast else " "
        out.append(f"{pad}gate {stmt.gate}{params} {sep.join(stmt.operands)}")
    elif isinstance(stmt, MeasureStmt):
        out.append(f"{pad}measure {stmt.qubit} -> {stmt.cbit}")
    elif isinstance(stmt, IfStmt):
        out.append(f"{pad}if {stmt.cbit} == {stmt.expected} {{")
        for inner in stmt.body:
            _format_stmt(inner, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, RepeatStmt):
        out.append(f"{pad}repeat {stmt.count} {{")
        for inner in stmt.body:
            _format_stmt(inner, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, NodeDecl):
        out.append(f"{pad}node {stmt.name} {{")
        for inner in stmt.body:
            _format_stmt(inner, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, EdgeDecl):
        line = f"{pad}edge {stmt.src} -> {stmt.dst}"
        if stmt.guard is not None:
            line += f" when {stmt.guard[0]} == {stmt.guard[1]}"
        out.append(line)
    elif isinstance(stmt, FlowDecl):
        out.append(f"{pad}flow start: {stmt.start}")
    else:
        raise TypeError(f"not a statement: {stmt!r}")


def to_source(tree: SyntaxTree) -> str:
    """Render a syntax tree back to QADL script text.

    Re-parsing the result yields a tree equal to `tree` (spans aside).
    """
    out = ["@startqadl", f"Circuit {tree.circuit_name} {{"]
    for stmt in tree.statements:
        _format_stmt(stmt, 1, out)
    out.append("}")
    out.append("@endqadl")
    return "\n".join(out) + "\n"
