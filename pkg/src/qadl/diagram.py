"""Circuit diagram layout and rendering.

Layout is greedy left-packing: every op goes into the leftmost column whose
wires are still free, where an op blocks its whole vertical span (all wires
between its topmost and bottommost glyph) to keep connectors unambiguous.
Ops that share a wire therefore keep their program order; ops on disjoint
wires may share a column.

Wires are ordered qubits first (declaration order), then classical bits.
Conditional bodies are drawn as their inner ops with a guard marker on the
guarding classical wire. Flow-graph node bodies are not part of the main
diagram; only the top-level op list is drawn.

Both renderers are deterministic: equal IR gives byte-identical output.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ir import CircuitIR, CondBlock, GateName, GateOp, IROp, MeasureOp

# glyph kinds
BOX = "box"  # label in a box, e.g. [H]
CONTROL = "control"  # filled dot
TARGET = "target"  # CNOT cross
METER = "meter"  # measurement box [M]
ARROW = "arrow"  # arrival marker on a classical wire
GUARD_ON = "guard1"  # classical condition, fires on 1
GUARD_OFF = "guard0"  # classical condition, fires on 0


@dataclass(frozen=True)
class Wire:
    kind: str  # "qubit" | "classical"
    label: str


@dataclass(frozen=True)
class Glyph:
    wire: int
    kind: str
    label: str = ""


@dataclass(frozen=True)
class Item:
    """One op's footprint inside a column."""

    glyphs: tuple[Glyph, ...]  # sorted by wire
    lo: int
    hi: int
    classical_link: bool  # vertical connector touches a classical wire


@dataclass(frozen=True)
class Diagram:
    wires: tuple[Wire, ...]
    columns: tuple[tuple[Item, ...], ...]  # items sorted by lo within a column


def _gate_glyphs(op: GateOp, n_qubits: int) -> list[Glyph]:
    kind = op.kind
    if kind.name in (GateName.HADAMARD, GateName.PAULI_X, GateName.PAULI_Z):
        short = {GateName.HADAMARD: "H", GateName.PAULI_X: "X", GateName.PAULI_Z: "Z"}
        return [Glyph(op.qubits[0], BOX, short[kind.name])]
    if kind.name is GateName.CNOT:
        return [Glyph(op.qubits[0], CONTROL), Glyph(op.qubits[1], TARGET)]
    if kind.name is GateName.CZ:
        return [Glyph(op.qubits[0], CONTROL), Glyph(op.qubits[1], CONTROL)]
    if kind.name is GateName.CRZ:
        return [
            Glyph(op.qubits[0], CONTROL),
            Glyph(op.qubits[1], BOX, f"RZ({kind.theta:.4g})"),
        ]
    base = {
        GateName.INVERSE_QFT: "IQFT",
        GateName.GROVER_ORACLE: f"Oracle({kind.marked})",
        GateName.GROVER_DIFFUSION: "Diffusion",
    }[kind.name]
    glyphs = [Glyph(op.qubits[0], BOX, base)]
    glyphs.extend(
        Glyph(q, BOX, str(j)) for j, q in enumerate(op.qubits) if j > 0
    )
    return glyphs


def _flatten(ops, guards: tuple[tuple[int, int], ...], out: list) -> None:
    for op in ops:
        if isinstance(op, CondBlock):
            _flatten(op.body, guards + ((op.cbit, op.expected),), out)
        else:
            out.append((op, guards))


def layout(ir: CircuitIR) -> Diagram:
    """Place every op of `ir` into columns by greedy left-packing."""
    wires = tuple(
        [Wire("qubit", name) for name in ir.qubit_names]
        + [Wire("classical", name) for name in ir.cbit_names]
    )
    n_q = ir.n_qubits
    flat: list[tuple[IROp, tuple[tuple[int, int], ...]]] = []
    _flatten(ir.ops, (), flat)

    frontier = [0] * len(wires)
    columns: list[list[Item]] = []
    for op, guards in flat:
        if isinstance(op, GateOp):
            glyphs = _gate_glyphs(op, n_q)
        else:
            glyphs = [
                Glyph(op.qubit, METER, "M"),
                Glyph(n_q + op.cbit, ARROW),
            ]
        for cbit, expected in guards:
            glyphs.append(Glyph(n_q + cbit, GUARD_ON if expected else GUARD_OFF))
        glyphs.sort(key=lambda g: g.wire)
        lo, hi = glyphs[0].wire, glyphs[-1].wire
        col = max(frontier[lo : hi + 1])
        while len(columns) <= col:
            columns.append([])
        columns[col].append(Item(tuple(glyphs), lo, hi, classical_link=hi >= n_q))
        for w in range(lo, hi + 1):
            frontier[w] = col + 1
    for col in columns:
        col.sort(key=lambda item: item.lo)
    return Diagram(wires, tuple(tuple(col) for col in columns))


# --- text rendering ----------------------------------------------------------


@dataclass(frozen=True)
class _Charset:
    qwire: str
    cwire: str
    vert_q: str
    vert_c: str
    cross: dict  # (vertical kind, wire kind) -> crossing char
    control: str
    target: str
    arrow: str
    guard_on: str
    guard_off: str


_UNICODE = _Charset(
    qwire="─",
    cwire="═",
    vert_q="│",
    vert_c="║",
    cross={("q", "qubit"): "┼", ("q", "classical"): "╪", ("c", "qubit"): "╫", ("c", "classical"): "╬"},
    control="●",
    target="⊕",
    arrow="▼",
    guard_on="◆",
    guard_off="◇",
)

_ASCII = _Charset(
    qwire="-",
    cwire="=",
    vert_q="|",
    vert_c="|",
    cross={("q", "qubit"): "+", ("q", "classical"): "+", ("c", "qubit"): "+", ("c", "classical"): "+"},
    control="*",
    target="(+)",
    arrow="v",
    guard_on="#",
    guard_off="o",
)


def _glyph_text(glyph: Glyph, cs: _Charset) -> str:
    if glyph.kind in (BOX, METER):
        return f"[{glyph.label or 'M'}]"
    return {
        CONTROL: cs.control,
        TARGET: cs.target,
        ARROW: cs.arrow,
        GUARD_ON: cs.guard_on,
        GUARD_OFF: cs.guard_off,
    }[glyph.kind]


def render_text(diagram: Diagram, ascii_only: bool = False) -> str:
    """Monospaced drawing of a diagram; stable for golden testing."""
    cs = _ASCII if ascii_only else _UNICODE
    wires = diagram.wires
    n_rows = 2 * len(wires) - 1 if wires else 0
    label_w = max((len(w.label) for w in wires), default=0)

    def wire_char(w: Wire) -> str:
        return cs.qwire if w.kind == "qubit" else cs.cwire

    rows = []
    for r in range(n_rows):
        if r % 2 == 0:
            w = wires[r // 2]
            rows.append([f"{w.label.rjust(label_w)}: ", wire_char(w)])
        else:
            rows.append([" " * (label_w + 2), " "])

    for col in diagram.columns:
        width = max(
            (len(_glyph_text(g, cs)) for item in col for g in item.glyphs),
            default=1,
        )
        field = width + 2
        center = (field - 1) // 2
        # what each row shows in this column
        cells = []
        for r in range(n_rows):
            if r % 2 == 0:
                cells.append(wire_char(wires[r // 2]) * field)
            else:
                cells.append(" " * field)
        for item in col:
            vkind = "c" if item.classical_link else "q"
            vchar = cs.vert_c if item.classical_link else cs.vert_q
            glyph_wires = {g.wire: g for g in item.glyphs}
            for w in range(item.lo, item.hi + 1):
                r = 2 * w
                if w in glyph_wires:
                    text = _glyph_text(glyph_wires[w], cs)
                    start = max(center - (len(text) - 1) // 2, 0)
                    row = list(cells[r])
                    row[start : start + len(text)] = list(text)
                    cells[r] = "".join(row[:field])
                else:
                    row = list(cells[r])
                    row[center] = cs.cross[(vkind, wires[w].kind)]
                    cells[r] = "".join(row)
                if w < item.hi:  # gap below this wire
                    row = list(cells[r + 1])
                    row[center] = vchar
                    cells[r + 1] = "".join(row)
        for r in range(n_rows):
            rows[r].append(cells[r])

    out_lines = []
    for r in range(n_rows):
        if r % 2 == 0:
            rows[r].append(wire_char(wires[r // 2]))
        line = "".join(rows[r]).rstrip()
        out_lines.append(line)
    return "\n".join(out_lines) + ("\n" if out_lines else "")


# --- vector (SVG) rendering --------------------------------------------------

_COL_W = 64
_PITCH = 44
_LEFT_PAD = 16
_TOP = 34
_BOX_H = 26


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(diagram: Diagram) -> str:
    """Standalone SVG document for a diagram; byte-stable for a given input."""
    wires = diagram.wires
    label_w = max((len(w.label) for w in wires), default=0)
    left = _LEFT_PAD + 8 * label_w + 12
    width = left + len(diagram.columns) * _COL_W + _COL_W
    height = _TOP + (len(wires)) * _PITCH

    def wy(w: int) -> int:
        return _TOP + w * _PITCH

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="13">',
        '<style>text{fill:#111}.wl{fill:#444}</style>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for i, w in enumerate(wires):
        y = wy(i)
        parts.append(f'<text class="wl" x="{_LEFT_PAD}" y="{y + 4}">{_esc(w.label)}</text>')
        if w.kind == "qubit":
            parts.append(
                f'<line x1="{left}" y1="{y}" x2="{width - 8}" y2="{y}" stroke="#111" stroke-width="1"/>'
            )
        else:
            for dy in (-2, 2):
                parts.append(
                    f'<line x1="{left}" y1="{y + dy}" x2="{width - 8}" y2="{y + dy}" '
                    f'stroke="#888" stroke-width="1"/>'
                )

    for c, col in enumerate(diagram.columns):
        x = left + c * _COL_W + _COL_W // 2
        for item in col:
            y_lo, y_hi = wy(item.lo), wy(item.hi)
            if item.hi > item.lo:
                if item.classical_link:
                    for dx in (-2, 2):
                        parts.append(
                            f'<line x1="{x + dx}" y1="{y_lo}" x2="{x + dx}" y2="{y_hi}" '
                            f'stroke="#888" stroke-width="1"/>'
                        )
                else:
                    parts.append(
                        f'<line x1="{x}" y1="{y_lo}" x2="{x}" y2="{y_hi}" '
                        f'stroke="#111" stroke-width="1"/>'
                    )
            for g in item.glyphs:
                y = wy(g.wire)
                if g.kind in (BOX, METER):
                    label = g.label or "M"
                    bw = max(26, 9 * len(label) + 10)
                    parts.append(
                        f'<rect x="{x - bw // 2}" y="{y - _BOX_H // 2}" width="{bw}" '
                        f'height="{_BOX_H}" fill="white" stroke="#111" stroke-width="1"/>'
                    )
                    parts.append(
                        f'<text x="{x}" y="{y + 4}" text-anchor="middle">{_esc(label)}</text>'
                    )
                elif g.kind == CONTROL:
                    parts.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#111"/>')
                elif g.kind == TARGET:
                    parts.append(
                        f'<circle cx="{x}" cy="{y}" r="9" fill="white" stroke="#111" stroke-width="1"/>'
                    )
                    parts.append(
                        f'<line x1="{x - 9}" y1="{y}" x2="{x + 9}" y2="{y}" stroke="#111" stroke-width="1"/>'
                    )
                    parts.append(
                        f'<line x1="{x}" y1="{y - 9}" x2="{x}" y2="{y + 9}" stroke="#111" stroke-width="1"/>'
                    )
                elif g.kind == ARROW:
                    parts.append(
                        f'<polygon points="{x - 5},{y - 6} {x + 5},{y - 6} {x},{y + 2}" fill="#888"/>'
                    )
                elif g.kind == GUARD_ON:
                    parts.append(
                        f'<polygon points="{x},{y - 6} {x + 6},{y} {x},{y + 6} {x - 6},{y}" fill="#111"/>'
                    )
                elif g.kind == GUARD_OFF:
                    parts.append(
                        f'<polygon points="{x},{y - 6} {x + 6},{y} {x},{y + 6} {x - 6},{y}" '
                        f'fill="white" stroke="#111" stroke-width="1"/>'
                    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
