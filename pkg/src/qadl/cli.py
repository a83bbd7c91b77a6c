"""Command-line driver: check, run, render, export, serve.

Exit codes: 0 success, 1 language or simulation error, 2 environment error
(unreadable input, bad flag combinations, write failures). Diagnostics print
one per line as `file:line:col: error: message`, or as JSON lines under
`--format machine-diagnostics`. Every `run` prints the seed it used, so any
stochastic result can be reproduced from its own output.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__, compile_source
from .diagnostics import Diagnostic, Severity, has_errors
from .diagram import layout, render_svg, render_text
from .arch import export_description
from .sim import SimulationError, run

SEED_ENV_VAR = "QADL_SEED"


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _display_name(path: str) -> str:
    return "<stdin>" if path == "-" else path


def print_diagnostics(
    diagnostics: list[Diagnostic],
    filename: str,
    machine: bool = False,
    stream=None,
) -> None:
    stream = stream or sys.stdout
    for diag in diagnostics:
        if machine:
            stream.write(json.dumps(diag.to_dict(filename), sort_keys=True) + "\n")
        else:
            stream.write(diag.format(filename) + "\n")


def pick_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return int(env)
    return random.getrandbits(64)


def format_counts_table(counts: dict[str, int], shots: int) -> str:
    """Rows of `bitstring  count  frequency`, most frequent first, then by bitstring."""
    lines = [
        f"{bits}  {count:>6d}  {count / shots:.6f}"
        for bits, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def format_state(state) -> str:
    lines = ["state:"]
    for index, amp in enumerate(state.amps):
        bits = "".join(str((index >> k) & 1) for k in range(state.n_qubits))
        lines.append(f"{bits}  {amp.real:+.10f}{amp.imag:+.10f}j")
    return "\n".join(lines) + "\n"


def _compile_or_report(source: str, filename: str, machine: bool = False):
    ir, diagnostics = compile_source(source)
    if ir is None or has_errors(diagnostics):
        print_diagnostics(diagnostics, filename, machine, stream=sys.stderr)
        return None
    # surface warnings but keep going
    warnings = [d for d in diagnostics if d.severity is Severity.WARNING]
    if warnings:
        print_diagnostics(warnings, filename, machine, stream=sys.stderr)
    return ir


def cmd_check(args) -> int:
    source = _read_input(args.input)
    filename = _display_name(args.input)
    _, diagnostics = compile_source(source)
    machine = args.format == "machine-diagnostics"
    if not diagnostics:
        return 0
    print_diagnostics(diagnostics, filename, machine)
    return 1 if has_errors(diagnostics) else 0


def cmd_run(args) -> int:
    if args.keep_state and args.shots != 1:
        sys.stderr.write("error: --keep-state requires --shots 1\n")
        return 2
    source = _read_input(args.input)
    ir = _compile_or_report(source, _display_name(args.input))
    if ir is None:
        return 1
    seed = pick_seed(args.seed)
    try:
        outcome = run(ir, shots=args.shots, seed=seed, keep_state=args.keep_state)
    except SimulationError as exc:
        sys.stderr.write(f"error: {exc.message}\n")
        return 1
    text = f"seed: {seed}\n" + format_counts_table(outcome.counts, outcome.shots)
    if not outcome.counts:
        sys.stderr.write("warning: circuit has no measurements; nothing to count\n")
    if outcome.final_state is not None:
        text += format_state(outcome.final_state)
    _write_output(args.output, text)
    return 0


def cmd_render(args) -> int:
    source = _read_input(args.input)
    ir = _compile_or_report(source, _display_name(args.input))
    if ir is None:
        return 1
    diagram = layout(ir)
    if args.format == "svg":
        text = render_svg(diagram)
    else:
        text = render_text(diagram, ascii_only=args.ascii_only)
    _write_output(args.output, text)
    return 0


def cmd_export(args) -> int:
    source = _read_input(args.input)
    ir = _compile_or_report(source, _display_name(args.input))
    if ir is None:
        return 1
    _write_output(args.output, export_description(ir))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qadl", description="QADL toolchain: check, simulate, render, export."
    )
    parser.add_argument("--version", action="version", version=f"qadl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="script path, or - for stdin")

    p_check = sub.add_parser("check", help="parse and validate a script")
    add_input(p_check)
    p_check.add_argument(
        "--format", choices=["human", "machine-diagnostics"], default="human"
    )
    p_check.set_defaults(func=cmd_check)

    p_run = sub.add_parser("run", help="simulate a script and print counts")
    add_input(p_run)
    p_run.add_argument("--shots", type=int, default=1024)
    p_run.add_argument(
        "--seed", type=int, default=None, help=f"default: ${SEED_ENV_VAR} or random"
    )
    p_run.add_argument(
        "--keep-state",
        action="store_true",
        help="also print the final statevector (requires --shots 1)",
    )
    p_run.add_argument("--output", default=None)
    p_run.set_defaults(func=cmd_run)

    p_render = sub.add_parser("render", help="draw the circuit diagram")
    add_input(p_render)
    p_render.add_argument("--format", choices=["text", "svg"], default="text")
    p_render.add_argument("--ascii-only", action="store_true")
    p_render.add_argument("--output", default=None)
    p_render.set_defaults(func=cmd_render)

    p_export = sub.add_parser("export", help="write the architecture description")
    add_input(p_export)
    p_export.add_argument("--output", default=None)
    p_export.set_defaults(func=cmd_export)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument(
        "--ui-dir", default=None, help="directory of built studio assets to serve at /"
    )
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
