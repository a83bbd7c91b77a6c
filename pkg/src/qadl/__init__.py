"""QADL: a quantum architecture description language toolchain.

Parse QADL scripts, validate and lower them to a flat circuit IR, simulate
on a dense statevector engine, render circuit diagrams as text or SVG, and
export/import architecture descriptions. The `qadl` CLI and the HTTP service
in `qadl.service` wrap the same pipeline.
"""
from __future__ import annotations

from .ast import SyntaxTree, to_source
from .diagnostics import Diagnostic, Severity, Span, has_errors
from .ir import CircuitIR, GateKind, GateName, lower, validate_flow
from .lexer import Token, TokenKind, tokenize
from .parser import parse_program, parse_source
from .sim import (
    SimOutcome,
    SimulationError,
    Statevector,
    apply_gate,
    apply_inverse_qft,
    apply_qft,
    grover_diffusion,
    grover_iterations,
    grovers_oracle,
    measure,
    run,
    zero_state,
)

__version__ = "0.1.0"


def compile_source(source: str) -> tuple[CircuitIR | None, list[Diagnostic]]:
    """Parse and lower a script in one step, merging all diagnostics."""
    tree, diagnostics = parse_source(source)
    if tree is None or has_errors(diagnostics):
        return None, diagnostics
    ir, lower_diags = lower(tree)
    return ir, diagnostics + lower_diags


__all__ = [
    "CircuitIR",
    "Diagnostic",
    "GateKind",
    "GateName",
    "Severity",
    "SimOutcome",
    "SimulationError",
    "Span",
    "Statevector",
    "SyntaxTree",
    "Token",
    "TokenKind",
    "__version__",
    "apply_gate",
    "apply_inverse_qft",
    "apply_qft",
    "compile_source",
    "grover_diffusion",
    "grover_iterations",
    "grovers_oracle",
    "has_errors",
    "lower",
    "measure",
    "parse_program",
    "parse_source",
    "run",
    "to_source",
    "tokenize",
    "validate_flow",
    "zero_state",
]
