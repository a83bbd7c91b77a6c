"""Exportable architecture description: a versioned JSON document.

The document carries everything needed to rebuild a CircuitIR: qubit and
classical-bit registries, the flat op list, and the flow graph when present
(the flow section is an extension of the baseline format). Unknown fields
are ignored on import so newer writers stay readable. `import_description`
rejects documents whose major version differs from ours.

Files conventionally use the `.qadl.arch` extension.
"""
from __future__ import annotations

import json
from typing import Any

from .diagnostics import Diagnostic, Span, error
from .ir import (
    MAX_QUBITS,
    CircuitIR,
    CondBlock,
    FlowEdge,
    FlowGraph,
    GateKind,
    GateName,
    GateOp,
    IROp,
    MeasureOp,
)

FORMAT_VERSION = "1.0.0"

_DOC_SPAN = Span(1, 1, 1)


def _op_record(op: IROp) -> dict:
    if isinstance(op, GateOp):
        record: dict[str, Any] = {"op": "gate", "gate": op.kind.name.value}
        if op.kind.theta is not None:
            record["params"] = [op.kind.theta]
        elif op.kind.marked is not None:
            record["params"] = [op.kind.marked]
        record["qubits"] = list(op.qubits)
        return record
    if isinstance(op, MeasureOp):
        return {"op": "measure", "qubits": [op.qubit], "cbit": op.cbit}
    if isinstance(op, CondBlock):
        return {
            "op": "cond",
            "cbit": op.cbit,
            "expected": op.expected,
            "body": [_op_record(inner) for inner in op.body],
        }
    raise TypeError(f"not an IR op: {op!r}")


def export_description(ir: CircuitIR) -> str:
    """Serialize a CircuitIR to the architecture-description document text."""
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "circuit": ir.name,
        "qubits": list(ir.qubit_names),
        "cbits": list(ir.cbit_names),
        "ops": [_op_record(op) for op in ir.ops],
    }
    if ir.flow is not None:
        edges = []
        for edge in ir.flow.edges:
            record: dict[str, Any] = {"from": edge.src, "to": edge.dst}
            if edge.guard is not None:
                record["guard"] = {"cbit": edge.guard[0], "expected": edge.guard[1]}
            edges.append(record)
        doc["flow"] = {
            "start": ir.flow.start,
            "nodes": {
                name: [_op_record(op) for op in body]
                for name, body in ir.flow.nodes.items()
            },
            "edges": edges,
        }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


class _Malformed(Exception):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


def _expect(value, types, path: str):
    if not isinstance(value, types):
        names = (
            types.__name__
            if isinstance(types, type)
            else "/".join(t.__name__ for t in types)
        )
        raise _Malformed(path, f"expected {names}, got {type(value).__name__}")
    return value


def _get(mapping: dict, key: str, types, path: str):
    if key not in mapping:
        raise _Malformed(f"{path}.{key}", "missing required field")
    return _expect(mapping[key], types, f"{path}.{key}")


def _parse_op(record, path: str, n_qubits: int, n_cbits: int) -> IROp:
    _expect(record, dict, path)
    op = _get(record, "op", str, path)
    if op == "gate":
        gate = _get(record, "gate", str, path)
        try:
            name = GateName(gate)
        except ValueError:
            raise _Malformed(f"{path}.gate", f"unknown gate {gate!r}") from None
        qubits = _get(record, "qubits", list, path)
        idxs = []
        for i, q in enumerate(qubits):
            _expect(q, int, f"{path}.qubits[{i}]")
            if isinstance(q, bool) or not 0 <= q < n_qubits:
                raise _Malformed(f"{path}.qubits[{i}]", f"qubit index {q} out of range")
            idxs.append(q)
        if len(set(idxs)) != len(idxs):
            raise _Malformed(f"{path}.qubits", "duplicate qubit index")
        params = record.get("params", [])
        _expect(params, list, f"{path}.params")
        theta = None
        marked = None
        if name is GateName.CRZ:
            if len(params) != 1 or isinstance(params[0], bool) or not isinstance(params[0], (int, float)):
                raise _Malformed(f"{path}.params", "CRZ takes one numeric parameter")
            theta = float(params[0])
        elif name is GateName.GROVER_ORACLE:
            if len(params) != 1 or not isinstance(params[0], str):
                raise _Malformed(f"{path}.params", "GroverOracle takes one bitstring parameter")
            marked = params[0]
            if len(marked) != len(idxs) or any(c not in "01" for c in marked):
                raise _Malformed(
                    f"{path}.params", "marked bitstring must match the qubit count"
                )
        elif params:
            raise _Malformed(f"{path}.params", f"{gate} takes no parameters")
        return GateOp(GateKind(name, theta=theta, marked=marked), tuple(idxs))
    if op == "measure":
        qubits = _get(record, "qubits", list, path)
        if len(qubits) != 1 or isinstance(qubits[0], bool) or not isinstance(qubits[0], int):
            raise _Malformed(f"{path}.qubits", "measure takes exactly one qubit index")
        if not 0 <= qubits[0] < n_qubits:
            raise _Malformed(f"{path}.qubits[0]", f"qubit index {qubits[0]} out of range")
        cbit = _get(record, "cbit", int, path)
        if not 0 <= cbit < n_cbits:
            raise _Malformed(f"{path}.cbit", f"classical bit index {cbit} out of range")
        return MeasureOp(qubits[0], cbit)
    if op == "cond":
        cbit = _get(record, "cbit", int, path)
        if not 0 <= cbit < n_cbits:
            raise _Malformed(f"{path}.cbit", f"classical bit index {cbit} out of range")
        expected = _get(record, "expected", int, path)
        if expected not in (0, 1):
            raise _Malformed(f"{path}.expected", "expected value must be 0 or 1")
        body_records = _get(record, "body", list, path)
        body = tuple(
            _parse_op(rec, f"{path}.body[{i}]", n_qubits, n_cbits)
            for i, rec in enumerate(body_records)
        )
        return CondBlock(cbit, expected, body)
    raise _Malformed(f"{path}.op", f"unknown op kind {op!r}")


def _parse_names(doc: dict, key: str) -> list[str]:
    names = _get(doc, key, list, "$")
    for i, name in enumerate(names):
        _expect(name, str, f"$.{key}[{i}]")
    if len(set(names)) != len(names):
        raise _Malformed(f"$.{key}", "names must be unique")
    return names


def import_description(document: str) -> tuple[CircuitIR | None, list[Diagnostic]]:
    """Load an architecture-description document back into a CircuitIR.

    The result is structurally equal to the exported circuit. Returns
    (None, diagnostics) for unsupported versions or malformed documents.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        return None, [
            error(
                "MalformedDocument",
                f"not valid JSON: {exc.msg}",
                Span(exc.lineno, exc.colno, 1),
            )
        ]
    try:
        _expect(doc, dict, "$")
        version = _get(doc, "format_version", str, "$")
        major = version.split(".", 1)[0]
        if not major.isdigit() or int(major) != int(FORMAT_VERSION.split(".", 1)[0]):
            return None, [
                error(
                    "UnsupportedVersion",
                    f"document format_version {version!r} is not supported "
                    f"(this reader handles {FORMAT_VERSION.split('.', 1)[0]}.x)",
                    _DOC_SPAN,
                )
            ]
        name = _get(doc, "circuit", str, "$")
        qubits = _parse_names(doc, "qubits")
        if len(qubits) > MAX_QUBITS:
            raise _Malformed("$.qubits", f"more than {MAX_QUBITS} qubits")
        cbits = _parse_names(doc, "cbits")
        op_records = _get(doc, "ops", list, "$")
        ops = tuple(
            _parse_op(rec, f"$.ops[{i}]", len(qubits), len(cbits))
            for i, rec in enumerate(op_records)
        )
        flow = None
        if "flow" in doc and doc["flow"] is not None:
            flow_doc = _expect(doc["flow"], dict, "$.flow")
            nodes_doc = _get(flow_doc, "nodes", dict, "$.flow")
            nodes = {}
            for node_name, body in nodes_doc.items():
                _expect(body, list, f"$.flow.nodes.{node_name}")
                nodes[node_name] = tuple(
                    _parse_op(rec, f"$.flow.nodes.{node_name}[{i}]", len(qubits), len(cbits))
                    for i, rec in enumerate(body)
                )
            edges = []
            for i, rec in enumerate(_get(flow_doc, "edges", list, "$.flow")):
                path = f"$.flow.edges[{i}]"
                _expect(rec, dict, path)
                src = _get(rec, "from", str, path)
                dst = _get(rec, "to", str, path)
                guard = None
                if "guard" in rec and rec["guard"] is not None:
                    guard_doc = _expect(rec["guard"], dict, f"{path}.guard")
                    g_cbit = _get(guard_doc, "cbit", int, f"{path}.guard")
                    g_exp = _get(guard_doc, "expected", int, f"{path}.guard")
                    if not 0 <= g_cbit < len(cbits) or g_exp not in (0, 1):
                        raise _Malformed(f"{path}.guard", "invalid guard")
                    guard = (g_cbit, g_exp)
                edges.append(FlowEdge(src, dst, guard))
            start = _get(flow_doc, "start", str, "$.flow")
            flow = FlowGraph(nodes, tuple(edges), start)
    except _Malformed as exc:
        return None, [
            error("MalformedDocument", f"malformed document at {exc.path}: {exc.reason}", _DOC_SPAN)
        ]
    return (
        CircuitIR(
            name=name,
            n_qubits=len(qubits),
            qubit_names=tuple(qubits),
            cbit_names=tuple(cbits),
            ops=ops,
            flow=flow,
        ),
        [],
    )
