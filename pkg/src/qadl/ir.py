"""Semantic analysis: from syntax trees to a flat, validated circuit IR.

Lowering resolves gate names (case-sensitive, with the aliases H, X, Z, CX),
checks arities, evaluates parameter expressions, expands comma-broadcasts
into one application per operand, unrolls repeat blocks, assigns qubit wire
indices in declaration order, and auto-registers classical bits at their
first `measure ... -> c` in source order.

Conventions fixed here and relied on by the simulator and renderer:

* Qubit ordering is little-endian: wire 0 is the least-significant bit of a
  computational-basis index.
* CRZ is controlled-RZ with RZ(t) = diag(e^{-it/2}, e^{+it/2}); the first
  operand is the control, the second the target.
* A Grover oracle bitstring is read left to right: character j gives the
  required value of the j-th listed qubit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Union

from . import ast
from .diagnostics import Diagnostic, Span, error, has_errors

MAX_QUBITS = 20
FLOW_NODE_LIMIT = 1024


@unique
class GateName(Enum):
    HADAMARD = "Hadamard"
    PAULI_X = "PauliX"
    PAULI_Z = "PauliZ"
    CNOT = "CNOT"
    CZ = "CZ"
    CRZ = "CRZ"
    INVERSE_QFT = "InverseQFT"
    GROVER_ORACLE = "GroverOracle"
    GROVER_DIFFUSION = "GroverDiffusion"


@dataclass(frozen=True)
class GateKind:
    name: GateName
    theta: float | None = None  # CRZ rotation angle in radians
    marked: str | None = None  # GroverOracle target bitstring

    def label(self) -> str:
        if self.name is GateName.CRZ:
            return f"CRZ({self.theta:.4g})"
        if self.name is GateName.GROVER_ORACLE:
            return f"GroverOracle({self.marked})"
        return self.name.value


_NAME_TABLE = {g.value: g for g in GateName} | {
    "H": GateName.HADAMARD,
    "X": GateName.PAULI_X,
    "Z": GateName.PAULI_Z,
    "CX": GateName.CNOT,
}

# gates with a fixed operand count; the rest take any number >= 1
FIXED_ARITY = {
    GateName.HADAMARD: 1,
    GateName.PAULI_X: 1,
    GateName.PAULI_Z: 1,
    GateName.CNOT: 2,
    GateName.CZ: 2,
    GateName.CRZ: 2,
}


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class MeasureOp:
    qubit: int
    cbit: int


@dataclass(frozen=True)
class CondBlock:
    """Run `body` iff the guard cbit equals `expected` when the block is entered."""

    cbit: int
    expected: int
    body: tuple["IROp", ...]


IROp = Union[GateOp, MeasureOp, CondBlock]


@dataclass(frozen=True)
class FlowEdge:
    src: str
    dst: str
    guard: tuple[int, int] | None  # (cbit index, expected value)
    span: Span = field(compare=False, default=Span(1, 1, 1))


@dataclass(frozen=True)
class FlowGraph:
    nodes: dict[str, tuple[IROp, ...]]
    edges: tuple[FlowEdge, ...]
    start: str | None
    start_span: Span = field(compare=False, default=Span(1, 1, 1))


@dataclass(frozen=True)
class CircuitIR:
    name: str
    n_qubits: int
    qubit_names: tuple[str, ...]
    cbit_names: tuple[str, ...]
    ops: tuple[IROp, ...]
    flow: FlowGraph | None = None


def count_ops(ir: CircuitIR) -> dict[str, int]:
    """Total gate/measure/conditional counts, including cond bodies and flow nodes."""
    totals = {"gates": 0, "measures": 0, "conds": 0}

    def walk(ops) -> None:
        for op in ops:
            if isinstance(op, GateOp):
                totals["gates"] += 1
            elif isinstance(op, MeasureOp):
                totals["measures"] += 1
            else:
                totals["conds"] += 1
                walk(op.body)

    walk(ir.ops)
    if ir.flow is not None:
        for body in ir.flow.nodes.values():
            walk(body)
    return totals


class _Lowering:
    def __init__(self, tree: ast.SyntaxTree):
        self.tree = tree
        self.diagnostics: list[Diagnostic] = []
        self.qubits: dict[str, int] = {}
        self.cbits: dict[str, int] = {}

    def fail(self, code: str, message: str, span: Span, hint: str | None = None) -> None:
        self.diagnostics.append(error(code, message, span, hint))

    # --- pass 1: registries ---

    def collect_declarations(self) -> None:
        for stmt in self.tree.statements:
            if isinstance(stmt, ast.QubitDecl):
                for name, span in zip(stmt.names, stmt.name_spans):
                    if name in self.qubits:
                        self.fail(
                            "DuplicateQubitDecl",
                            f"qubit '{name}' is already declared",
                            span,
                        )
                    else:
                        self.qubits[name] = len(self.qubits)
        if len(self.qubits) > MAX_QUBITS:
            self.fail(
                "TooManyQubits",
                f"{len(self.qubits)} qubits declared; the simulator caps circuits "
                f"at {MAX_QUBITS}",
                self.tree.span,
            )
        self._collect_cbits(self.tree.statements)

    def _collect_cbits(self, statements) -> None:
        for stmt in statements:
            if isinstance(stmt, ast.MeasureStmt):
                if stmt.cbit not in self.cbits:
                    self.cbits[stmt.cbit] = len(self.cbits)
            elif isinstance(stmt, (ast.IfStmt, ast.RepeatStmt, ast.NodeDecl)):
                self._collect_cbits(stmt.body)

    # --- pass 2: lowering ---

    def lower_body(self, statements, top_level: bool) -> list[IROp]:
        ops: list[IROp] = []
        for stmt in statements:
            if isinstance(stmt, ast.QubitDecl):
                if not top_level:
                    self.fail(
                        "MisplacedStatement",
                        "qubit declarations are only allowed at circuit top level",
                        stmt.span,
                    )
            elif isinstance(stmt, ast.GateStmt):
                ops.extend(self.lower_gate(stmt))
            elif isinstance(stmt, ast.MeasureStmt):
                measured = self.lower_measure(stmt)
                if measured is not None:
                    ops.append(measured)
            elif isinstance(stmt, ast.IfStmt):
                cond = self.lower_if(stmt)
                if cond is not None:
                    ops.append(cond)
            elif isinstance(stmt, ast.RepeatStmt):
                body = self.lower_body(stmt.body, top_level=False)
                ops.extend(body * stmt.count)
            elif isinstance(stmt, (ast.NodeDecl, ast.EdgeDecl, ast.FlowDecl)):
                if not top_level:
                    self.fail(
                        "MisplacedStatement",
                        "flow statements are only allowed at circuit top level",
                        stmt.span,
                    )
                # handled by lower_flow at top level
            else:
                raise TypeError(f"not a statement: {stmt!r}")
        return ops

    def resolve_qubit(self, name: str, span: Span) -> int | None:
        idx = self.qubits.get(name)
        if idx is None:
            self.fail(
                "UndeclaredQubit",
                f"qubit '{name}' is not declared",
                span,
                hint="declare it with: qubit " + name,
            )
        return idx

    def lower_gate(self, stmt: ast.GateStmt) -> list[GateOp]:
        gate_name = _NAME_TABLE.get(stmt.gate)
        if gate_name is None:
            self.fail(
                "UnknownGate",
                f"unknown gate '{stmt.gate}'",
                stmt.gate_span,
                hint="known gates: " + ", ".join(sorted(_NAME_TABLE)),
            )
            return []

        operand_idxs: list[int] = []
        for name, span in zip(stmt.operands, stmt.operand_spans):
            idx = self.resolve_qubit(name, span)
            if idx is None:
                return []
            operand_idxs.append(idx)

        if stmt.broadcast:
            applications = [[q] for q in operand_idxs]
        else:
            applications = [operand_idxs]

        ops: list[GateOp] = []
        for qubits in applications:
            expected = FIXED_ARITY.get(gate_name, None)
            if expected is not None and len(qubits) != expected:
                self.fail(
                    "ArityMismatch",
                    f"gate {stmt.gate} expects {expected} operand"
                    f"{'s' if expected != 1 else ''}, got {len(qubits)}",
                    stmt.gate_span,
                )
                return []
            if len(set(qubits)) != len(qubits):
                self.fail(
                    "DuplicateOperand",
                    f"gate {stmt.gate} lists the same qubit more than once",
                    stmt.gate_span,
                )
                return []
            kind = self.build_kind(gate_name, stmt, arity=len(qubits))
            if kind is None:
                return []
            ops.append(GateOp(kind, tuple(qubits)))
        return ops

    def build_kind(
        self, gate_name: GateName, stmt: ast.GateStmt, arity: int
    ) -> GateKind | None:
        def bad(reason: str, hint: str | None = None) -> None:
            self.fail(
                "BadParameter", f"gate {stmt.gate}: {reason}", stmt.gate_span, hint
            )

        if gate_name is GateName.CRZ:
            if len(stmt.params) != 1:
                bad("takes exactly one angle parameter", hint="example: CRZ(pi/2)")
                return None
            theta = self.eval_numeric(stmt.params[0], stmt)
            if theta is None:
                return None
            return GateKind(GateName.CRZ, theta=theta)
        if gate_name is GateName.GROVER_ORACLE:
            if len(stmt.params) != 1 or not isinstance(stmt.params[0], ast.Bitstring):
                bad(
                    "takes exactly one bitstring parameter",
                    hint='example: GroverOracle("101")',
                )
                return None
            marked = stmt.params[0].bits
            if not marked or any(c not in "01" for c in marked):
                bad(f'"{marked}" is not a bitstring of 0s and 1s')
                return None
            if len(marked) != arity:
                bad(
                    f"marked bitstring has {len(marked)} bits "
                    f"but {arity} qubit{'s are' if arity != 1 else ' is'} listed"
                )
                return None
            return GateKind(GateName.GROVER_ORACLE, marked=marked)
        if stmt.params:
            bad("takes no parameters")
            return None
        return GateKind(gate_name)

    def eval_numeric(self, expr: ast.ParamExpr, stmt: ast.GateStmt) -> float | None:
        try:
            value = _eval_expr(expr)
        except _ParamError as exc:
            self.fail("BadParameter", f"gate {stmt.gate}: {exc}", stmt.gate_span)
            return None
        if not math.isfinite(value):
            self.fail(
                "BadParameter",
                f"gate {stmt.gate}: parameter does not evaluate to a finite number",
                stmt.gate_span,
            )
            return None
        return value

    def lower_measure(self, stmt: ast.MeasureStmt) -> MeasureOp | None:
        qubit = self.resolve_qubit(stmt.qubit, stmt.qubit_span)
        if qubit is None:
            return None
        return MeasureOp(qubit, self.cbits[stmt.cbit])

    def lower_if(self, stmt: ast.IfStmt) -> CondBlock | None:
        cbit = self.cbits.get(stmt.cbit)
        if cbit is None:
            self.fail(
                "UnknownCbitInGuard",
                f"classical bit '{stmt.cbit}' is never written by a measure",
                stmt.cbit_span,
            )
            return None
        body = self.lower_body(stmt.body, top_level=False)
        return CondBlock(cbit, stmt.expected, tuple(body))

    def lower_flow(self) -> FlowGraph | None:
        nodes: dict[str, tuple[IROp, ...]] = {}
        edges: list[FlowEdge] = []
        start: str | None = None
        start_span = Span(1, 1, 1)
        seen_flow_stmt = False
        for stmt in self.tree.statements:
            if isinstance(stmt, ast.NodeDecl):
                seen_flow_stmt = True
                if stmt.name in nodes:
                    self.fail(
                        "DuplicateNode", f"node '{stmt.name}' is already declared", stmt.span
                    )
                    continue
                nodes[stmt.name] = tuple(self.lower_body(stmt.body, top_level=False))
            elif isinstance(stmt, ast.EdgeDecl):
                seen_flow_stmt = True
                guard = None
                if stmt.guard is not None:
                    cbit_name, expected = stmt.guard
                    cbit = self.cbits.get(cbit_name)
                    if cbit is None:
                        self.fail(
                            "UnknownCbitInGuard",
                            f"classical bit '{cbit_name}' is never written by a measure",
                            stmt.guard_span or stmt.span,
                        )
                        continue
                    guard = (cbit, expected)
                edges.append(FlowEdge(stmt.src, stmt.dst, guard, stmt.span))
            elif isinstance(stmt, ast.FlowDecl):
                seen_flow_stmt = True
                if start is not None:
                    self.fail(
                        "DuplicateFlowStart",
                        "flow start is already declared",
                        stmt.span,
                    )
                    continue
                start = stmt.start
                start_span = stmt.span
        if not seen_flow_stmt:
            return None
        graph = FlowGraph(nodes, tuple(edges), start, start_span)
        self.diagnostics.extend(validate_flow(graph))
        return graph

    def run(self) -> CircuitIR | None:
        self.collect_declarations()
        ops = self.lower_body(self.tree.statements, top_level=True)
        flow = self.lower_flow()
        if has_errors(self.diagnostics):
            return None
        return CircuitIR(
            name=self.tree.circuit_name,
            n_qubits=len(self.qubits),
            qubit_names=tuple(self.qubits),
            cbit_names=tuple(self.cbits),
            ops=tuple(ops),
            flow=flow,
        )


class _ParamError(Exception):
    pass


def _eval_expr(expr: ast.ParamExpr) -> float:
    if isinstance(expr, ast.NumberLit):
        return expr.value
    if isinstance(expr, ast.PiConst):
        return math.pi
    if isinstance(expr, ast.UnaryNeg):
        return -_eval_expr(expr.operand)
    if isinstance(expr, ast.BinaryOp):
        left = _eval_expr(expr.left)
        right = _eval_expr(expr.right)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        if right == 0.0:
            raise _ParamError("division by zero in parameter expression")
        return left / right
    if isinstance(expr, ast.Bitstring):
        raise _ParamError("expected a number, got a bitstring")
    raise TypeError(f"not a parameter expression: {expr!r}")


def lower(tree: ast.SyntaxTree) -> tuple[CircuitIR | None, list[Diagnostic]]:
    """Lower a parsed syntax tree to CircuitIR.

    Returns (ir, diagnostics); ir is None whenever any error was reported.
    Lowering is deterministic: equal trees produce equal IR.
    """
    lowering = _Lowering(tree)
    ir = lowering.run()
    return ir, lowering.diagnostics


def validate_flow(graph: FlowGraph) -> list[Diagnostic]:
    """Check a flow graph: start node exists, edges are anchored, and no node
    has more than one unconditional out-edge (traversal must be deterministic)."""
    diagnostics: list[Diagnostic] = []
    if graph.start is None:
        diagnostics.append(
            error(
                "MissingStartNode",
                "flow has nodes or edges but no 'flow start:' declaration",
                graph.start_span,
            )
        )
    elif graph.start not in graph.nodes:
        diagnostics.append(
            error(
                "MissingStartNode",
                f"flow start '{graph.start}' is not a declared node",
                graph.start_span,
            )
        )
    unconditional: dict[str, int] = {}
    for edge in graph.edges:
        for endpoint in (edge.src, edge.dst):
            if endpoint not in graph.nodes:
                diagnostics.append(
                    error(
                        "DanglingEdge",
                        f"edge references undeclared node '{endpoint}'",
                        edge.span,
                    )
                )
        if edge.guard is None:
            unconditional[edge.src] = unconditional.get(edge.src, 0) + 1
            if unconditional[edge.src] == 2:
                diagnostics.append(
                    error(
                        "AmbiguousUnconditionalEdges",
                        f"node '{edge.src}' has more than one unconditional out-edge",
                        edge.span,
                        hint="add 'when c == 0/1' guards so traversal is deterministic",
                    )
                )
    return diagnostics
