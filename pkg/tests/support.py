"""Test-side oracles, independent of the production kernels.

Everything here goes through explicit 2^n x 2^n matrices built by basis
enumeration, so it shares no code path with the strided in-place kernels it
is used to check.
"""
from __future__ import annotations

import numpy as np

from qadl.ir import CondBlock, GateKind, GateName, GateOp, MeasureOp
from qadl.sim import shot_rng


def local_matrix(kind: GateKind, arity: int) -> np.ndarray:
    """Gate unitary on its own wires; local bit j = listed qubit j."""
    name = kind.name
    s = 1.0 / np.sqrt(2.0)
    if name is GateName.HADAMARD:
        return np.array([[s, s], [s, -s]], dtype=complex)
    if name is GateName.PAULI_X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if name is GateName.PAULI_Z:
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if name is GateName.CNOT:
        u = np.zeros((4, 4), dtype=complex)
        for c in (0, 1):
            for t in (0, 1):
                u[c + 2 * (t ^ c), c + 2 * t] = 1.0
        return u
    if name is GateName.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if name is GateName.CRZ:
        th = kind.theta
        return np.diag([1, np.exp(-0.5j * th), 1, np.exp(0.5j * th)]).astype(complex)
    if name is GateName.INVERSE_QFT:
        big_n = 2**arity
        omega = np.exp(2j * np.pi / big_n)
        dft = np.array(
            [[omega ** (x * y) for y in range(big_n)] for x in range(big_n)],
            dtype=complex,
        ) / np.sqrt(big_n)
        return dft.conj().T
    if name is GateName.GROVER_ORACLE:
        big_n = 2**arity
        diag = np.ones(big_n, dtype=complex)
        marked_index = sum(int(ch) << j for j, ch in enumerate(kind.marked))
        diag[marked_index] = -1.0
        return np.diag(diag)
    if name is GateName.GROVER_DIFFUSION:
        big_n = 2**arity
        return (2.0 / big_n) * np.ones((big_n, big_n), dtype=complex) - np.eye(big_n)
    raise ValueError(f"unhandled gate {kind!r}")


def embed(local: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Lift a local unitary onto the full 2^n space by basis enumeration."""
    k = len(qubits)
    full = np.zeros((2**n, 2**n), dtype=complex)
    for col in range(2**n):
        bits = [(col >> w) & 1 for w in range(n)]
        local_in = sum(bits[q] << j for j, q in enumerate(qubits))
        for local_out in range(2**k):
            out_bits = bits.copy()
            for j, q in enumerate(qubits):
                out_bits[q] = (local_out >> j) & 1
            row = sum(b << w for w, b in enumerate(out_bits))
            full[row, col] += local[local_out, local_in]
    return full


def gate_matrix(kind: GateKind, qubits: tuple[int, ...], n: int) -> np.ndarray:
    return embed(local_matrix(kind, len(qubits)), tuple(qubits), n)


def dense_apply(vec: np.ndarray, kind: GateKind, qubits, n: int) -> np.ndarray:
    return gate_matrix(kind, tuple(qubits), n) @ vec


def dense_collapse(vec: np.ndarray, qubit: int, outcome: int, n: int) -> np.ndarray:
    """Project onto `qubit` == outcome and renormalize."""
    out = vec.copy()
    for i in range(len(out)):
        if (i >> qubit) & 1 != outcome:
            out[i] = 0.0
    norm = np.linalg.norm(out)
    assert norm > 1e-12, "collapsing onto an impossible branch"
    return out / norm


def dense_measure(vec: np.ndarray, qubit: int, rng, n: int) -> tuple[int, np.ndarray]:
    p_one = float(
        sum(abs(vec[i]) ** 2 for i in range(len(vec)) if (i >> qubit) & 1)
    )
    outcome = 1 if rng.random() < p_one else 0
    return outcome, dense_collapse(vec, qubit, outcome, n)


def dense_execute(ops, n: int, rng, vec: np.ndarray | None = None):
    """Run an op list on a dense vector; returns (final vec, cbit map)."""
    if vec is None:
        vec = np.zeros(2**n, dtype=complex)
        vec[0] = 1.0
    cbits: dict[int, int] = {}

    def walk(ops):
        nonlocal vec
        for op in ops:
            if isinstance(op, GateOp):
                vec = dense_apply(vec, op.kind, op.qubits, n)
            elif isinstance(op, MeasureOp):
                outcome, vec = dense_measure(vec, op.qubit, rng, n)
                cbits[op.cbit] = outcome
            elif isinstance(op, CondBlock):
                if cbits[op.cbit] == op.expected:
                    walk(op.body)
            else:
                raise TypeError(op)

    walk(ops)
    return vec, cbits


def dense_run_counts(ir, shots: int, seed: int) -> dict[str, int]:
    """Full dense execution with the production RNG scheme, for count-level
    equivalence checks."""
    counts: dict[str, int] = {}
    n_cbits = len(ir.cbit_names)
    for shot in range(shots):
        rng = shot_rng(seed, shot)
        _, cbits = dense_execute(ir.ops, ir.n_qubits, rng)
        key = "".join(str(cbits.get(i, 0)) for i in range(n_cbits))
        counts[key] = counts.get(key, 0) + 1
    return counts


def dense_distribution(ir) -> dict[str, float]:
    """Exact outcome distribution for circuits whose measures all happen at
    the end, computed by matrix products plus the Born rule."""
    gate_ops = [op for op in ir.ops if isinstance(op, GateOp)]
    measures = [op for op in ir.ops if isinstance(op, MeasureOp)]
    assert len(gate_ops) + len(measures) == len(ir.ops), "straight-line circuits only"
    tail = ir.ops[len(gate_ops) :]
    assert all(isinstance(op, MeasureOp) for op in tail), "measures must come last"
    vec = np.zeros(2**ir.n_qubits, dtype=complex)
    vec[0] = 1.0
    for op in gate_ops:
        vec = dense_apply(vec, op.kind, op.qubits, ir.n_qubits)
    probs = np.abs(vec) ** 2
    qubit_of_cbit = {m.cbit: m.qubit for m in measures}
    dist: dict[str, float] = {}
    for idx, p in enumerate(probs):
        if p == 0.0:
            continue
        key = "".join(
            str((idx >> qubit_of_cbit[c]) & 1) if c in qubit_of_cbit else "0"
            for c in range(len(ir.cbit_names))
        )
        dist[key] = dist.get(key, 0.0) + float(p)
    return dist


def total_variation(p: dict[str, float], q: dict[str, float]) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


# --- randomized circuit generation -------------------------------------------


def random_gate(rng: np.random.Generator, n: int) -> GateOp:
    palette = [
        GateName.HADAMARD,
        GateName.PAULI_X,
        GateName.PAULI_Z,
        GateName.INVERSE_QFT,
        GateName.GROVER_ORACLE,
        GateName.GROVER_DIFFUSION,
    ]
    if n >= 2:
        palette += [GateName.CNOT, GateName.CZ, GateName.CRZ]
    name = rng.choice(palette)
    if name in (GateName.HADAMARD, GateName.PAULI_X, GateName.PAULI_Z):
        return GateOp(GateKind(name), (int(rng.integers(n)),))
    if name in (GateName.CNOT, GateName.CZ, GateName.CRZ):
        a, b = rng.choice(n, size=2, replace=False)
        theta = float(rng.uniform(-2 * np.pi, 2 * np.pi)) if name is GateName.CRZ else None
        return GateOp(GateKind(name, theta=theta), (int(a), int(b)))
    arity = int(rng.integers(1, n + 1))
    wires = tuple(int(q) for q in rng.choice(n, size=arity, replace=False))
    if name is GateName.GROVER_ORACLE:
        marked = "".join(str(int(b)) for b in rng.integers(0, 2, size=arity))
        return GateOp(GateKind(name, marked=marked), wires)
    return GateOp(GateKind(name), wires)


def random_gate_list(rng: np.random.Generator, n: int, n_ops: int) -> list[GateOp]:
    return [random_gate(rng, n) for _ in range(n_ops)]


def adjoint_kind(kind: GateKind) -> tuple[GateKind, bool]:
    """Returns (adjoint gate kind, use_qft) — use_qft means apply_qft is the adjoint."""
    if kind.name is GateName.CRZ:
        return GateKind(GateName.CRZ, theta=-kind.theta), False
    if kind.name is GateName.INVERSE_QFT:
        return kind, True
    return kind, False
