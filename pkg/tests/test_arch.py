from __future__ import annotations

import json

from qadl import compile_source
from qadl.arch import FORMAT_VERSION, export_description, import_description
from qadl.ir import GateOp


def round_trip(source: str):
    ir, diagnostics = compile_source(source)
    assert ir is not None and not diagnostics
    document = export_description(ir)
    loaded, load_diags = import_description(document)
    assert not load_diags, load_diags
    return ir, loaded, document


def test_round_trip_all_examples(all_example_sources):
    for name, source in all_example_sources.items():
        ir, loaded, _ = round_trip(source)
        assert loaded == ir, f"round trip lost information for {name}"


def test_teleportation_document_shape(teleportation_ir):
    document = export_description(teleportation_ir)
    doc = json.loads(document)
    assert doc["format_version"] == FORMAT_VERSION
    assert doc["circuit"] == "QuantumTeleportation"
    assert doc["qubits"] == ["q0", "q1", "q2"]
    assert doc["cbits"] == ["c0", "c1", "c2"]
    kinds = [record["op"] for record in doc["ops"]]
    assert kinds.count("gate") == 6 and kinds.count("measure") == 3
    assert "flow" not in doc


def test_grover_round_trip_preserves_23_gates_in_order(grover_ir):
    document = export_description(grover_ir)
    doc = json.loads(document)
    gates = [r for r in doc["ops"] if r["op"] == "gate"]
    assert len(gates) == 23
    loaded, diags = import_description(document)
    assert not diags
    assert [op for op in loaded.ops if isinstance(op, GateOp)] == [
        op for op in grover_ir.ops if isinstance(op, GateOp)
    ]


def test_crz_angle_survives_exactly():
    source = (
        "@startqadl\nCircuit P {\n    qubit q0, q1\n    gate CRZ(pi/7) q0 q1\n"
        "    measure q0 -> c0\n}\n@endqadl\n"
    )
    ir, loaded, _ = round_trip(source)
    assert loaded.ops[0].kind.theta == ir.ops[0].kind.theta  # bit-exact float


def test_unsupported_version():
    ir, loaded, document = round_trip(
        "@startqadl\nCircuit V {\n    qubit q0\n}\n@endqadl\n"
    )
    doc = json.loads(document)
    doc["format_version"] = "99.0.0"
    result, diagnostics = import_description(json.dumps(doc))
    assert result is None
    assert [d.code for d in diagnostics] == ["UnsupportedVersion"]


def test_minor_version_bump_is_accepted():
    _, _, document = round_trip("@startqadl\nCircuit V {\n    qubit q0\n}\n@endqadl\n")
    doc = json.loads(document)
    doc["format_version"] = "1.9.3"
    result, diagnostics = import_description(json.dumps(doc))
    assert result is not None and not diagnostics


def test_unknown_fields_are_ignored():
    _, _, document = round_trip(
        "@startqadl\nCircuit F {\n    qubit q0\n    gate Hadamard q0\n"
        "    measure q0 -> c0\n}\n@endqadl\n"
    )
    doc = json.loads(document)
    doc["future_extension"] = {"anything": [1, 2, 3]}
    doc["ops"][0]["annotation"] = "later"
    result, diagnostics = import_description(json.dumps(doc))
    assert result is not None and not diagnostics


def test_not_json():
    result, diagnostics = import_description("definitely: not json {")
    assert result is None
    assert diagnostics[0].code == "MalformedDocument"


def test_missing_field_names_path():
    result, diagnostics = import_description('{"format_version": "1.0.0"}')
    assert result is None
    assert diagnostics[0].code == "MalformedDocument"
    assert "$.circuit" in diagnostics[0].message


def test_bad_qubit_index_names_path():
    _, _, document = round_trip(
        "@startqadl\nCircuit B {\n    qubit q0\n    gate Hadamard q0\n}\n@endqadl\n"
    )
    doc = json.loads(document)
    doc["ops"][0]["qubits"] = [5]
    result, diagnostics = import_description(json.dumps(doc))
    assert result is None
    assert "$.ops[0].qubits[0]" in diagnostics[0].message


def test_cond_and_flow_round_trip(flow_demo_source, phase_demo_source):
    for source in (flow_demo_source, phase_demo_source):
        ir, loaded, _ = round_trip(source)
        assert loaded == ir
        assert loaded.flow == ir.flow


def test_export_ends_with_newline_and_is_stable(teleportation_ir):
    first = export_description(teleportation_ir)
    second = export_description(teleportation_ir)
    assert first == second
    assert first.endswith("\n")


def test_import_rejects_oversized_registers():
    doc = {
        "format_version": "1.0.0",
        "circuit": "Big",
        "qubits": [f"q{i}" for i in range(21)],
        "cbits": [],
        "ops": [],
    }
    result, diagnostics = import_description(json.dumps(doc))
    assert result is None
    assert "$.qubits" in diagnostics[0].message
