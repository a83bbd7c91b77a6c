"""Dense statevector simulator for lowered circuits.

Amplitudes are stored little-endian: bit k of a basis-state index is the
value of qubit wire k, so |q2 q1 q0> = |110> sits at index 6. Gate kernels
update strided amplitude pairs in place through reshaped views; nothing here
ever materializes a 2^n x 2^n matrix.

Randomness: every measurement draws from a numpy PCG64 generator. Shot i of
a run with seed s uses the stream seeded by SeedSequence((s, i)), so results
are reproducible bit-for-bit across runs and platforms and independent of
shot execution order.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .diagnostics import Span
from .ir import (
    FLOW_NODE_LIMIT,
    CircuitIR,
    CondBlock,
    FlowGraph,
    GateKind,
    GateName,
    GateOp,
    IROp,
    MeasureOp,
)

_SQRT1_2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

DEGENERATE_NORM_EPS = 1e-12


class SimulationError(Exception):
    """Raised when a run cannot continue; carries a stable code for reporting."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass
class Statevector:
    n_qubits: int
    amps: np.ndarray  # 2**n_qubits complex amplitudes

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amps.copy())

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass
class SimOutcome:
    counts: dict[str, int]  # bitstring (c0 leftmost) -> occurrences
    cbits: dict[str, int]  # classical-bit record of the last shot
    seed: int
    shots: int
    final_state: Statevector | None = None


def zero_state(n_qubits: int) -> Statevector:
    if not 0 <= n_qubits <= 26:
        raise ValueError(f"unreasonable qubit count: {n_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return Statevector(n_qubits, amps)


def shot_rng(seed: int, shot_index: int) -> np.random.Generator:
    """The documented RNG: PCG64 seeded from SeedSequence((seed, shot_index))."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, shot_index))))


# --- kernels -----------------------------------------------------------------


def _axis(state: Statevector, qubit: int) -> int:
    # reshaped to [2]*n, numpy axis 0 is the most significant bit
    return state.n_qubits - 1 - qubit


def _check_wires(state: Statevector, qubits: tuple[int, ...] | list[int]) -> None:
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit in {qubits}")
    for q in qubits:
        if not 0 <= q < state.n_qubits:
            raise ValueError(f"qubit {q} out of range for {state.n_qubits} wires")


def _apply_1q(state: Statevector, matrix: np.ndarray, qubit: int) -> None:
    view = state.amps.reshape([2] * state.n_qubits)
    v = np.moveaxis(view, _axis(state, qubit), 0)
    low = v[0].copy()
    v[0] = matrix[0, 0] * low + matrix[0, 1] * v[1]
    v[1] = matrix[1, 0] * low + matrix[1, 1] * v[1]


def _pair_view(state: Statevector, first: int, second: int) -> np.ndarray:
    view = state.amps.reshape([2] * state.n_qubits)
    return np.moveaxis(view, (_axis(state, first), _axis(state, second)), (0, 1))


def _cnot(state: Statevector, control: int, target: int) -> None:
    v = _pair_view(state, control, target)
    swapped = v[1, 0].copy()
    v[1, 0] = v[1, 1]
    v[1, 1] = swapped


def _cz(state: Statevector, control: int, target: int) -> None:
    v = _pair_view(state, control, target)
    v[1, 1] *= -1.0


def _crz(state: Statevector, theta: float, control: int, target: int) -> None:
    v = _pair_view(state, control, target)
    v[1, 0] *= np.exp(-0.5j * theta)
    v[1, 1] *= np.exp(+0.5j * theta)


def _cphase(state: Statevector, theta: float, control: int, target: int) -> None:
    v = _pair_view(state, control, target)
    v[1, 1] *= np.exp(1j * theta)


def _swap(state: Statevector, a: int, b: int) -> None:
    v = _pair_view(state, a, b)
    moved = v[0, 1].copy()
    v[0, 1] = v[1, 0]
    v[1, 0] = moved


def _marked_index(state: Statevector, qubits, bits: str) -> tuple:
    idx: list = [slice(None)] * state.n_qubits
    for q, ch in zip(qubits, bits):
        idx[_axis(state, q)] = int(ch)
    return tuple(idx)


# --- public gate operations --------------------------------------------------


def apply_gate(state: Statevector, kind: GateKind, qubits) -> Statevector:
    """Apply one gate in place on the given wires; returns the same state."""
    qubits = tuple(qubits)
    _check_wires(state, qubits)
    name = kind.name
    if name is GateName.HADAMARD:
        _apply_1q(state, _H, qubits[0])
    elif name is GateName.PAULI_X:
        _apply_1q(state, _X, qubits[0])
    elif name is GateName.PAULI_Z:
        _apply_1q(state, _Z, qubits[0])
    elif name is GateName.CNOT:
        _cnot(state, qubits[0], qubits[1])
    elif name is GateName.CZ:
        _cz(state, qubits[0], qubits[1])
    elif name is GateName.CRZ:
        _crz(state, kind.theta, qubits[0], qubits[1])
    elif name is GateName.INVERSE_QFT:
        apply_inverse_qft(state, qubits)
    elif name is GateName.GROVER_ORACLE:
        grovers_oracle(state, qubits, kind.marked)
    elif name is GateName.GROVER_DIFFUSION:
        grover_diffusion(state, qubits)
    else:
        raise ValueError(f"unhandled gate kind {kind!r}")
    return state


def apply_qft(state: Statevector, qubits) -> Statevector:
    """Quantum Fourier transform on the listed wires.

    The listed order sets bit significance: qubits[0] is the least-significant
    bit of the transformed index. Built from Hadamard, controlled-phase and a
    final swap network.
    """
    qubits = tuple(qubits)
    _check_wires(state, qubits)
    n = len(qubits)
    for j in range(n - 1, -1, -1):
        _apply_1q(state, _H, qubits[j])
        for k in range(j - 1, -1, -1):
            _cphase(state, math.pi / 2 ** (j - k), qubits[k], qubits[j])
    for i in range(n // 2):
        _swap(state, qubits[i], qubits[n - 1 - i])
    return state


def apply_inverse_qft(state: Statevector, qubits) -> Statevector:
    """Inverse quantum Fourier transform: the adjoint of apply_qft."""
    qubits = tuple(qubits)
    _check_wires(state, qubits)
    n = len(qubits)
    for i in range(n // 2):
        _swap(state, qubits[i], qubits[n - 1 - i])
    for j in range(n):
        for k in range(j - 1, -1, -1):
            _cphase(state, -math.pi / 2 ** (j - k), qubits[k], qubits[j])
        _apply_1q(state, _H, qubits[j])
    return state


def grovers_oracle(state: Statevector, qubits, marked: str) -> Statevector:
    """Flip the amplitude sign of the one basis assignment given by `marked`.

    Character j of `marked` (left to right) is the required value of
    qubits[j]; everything else is untouched.
    """
    qubits = tuple(qubits)
    _check_wires(state, qubits)
    if len(marked) != len(qubits):
        raise ValueError("marked bitstring length must equal the qubit count")
    view = state.amps.reshape([2] * state.n_qubits)
    view[_marked_index(state, qubits, marked)] *= -1.0
    return state


def grover_diffusion(state: Statevector, qubits) -> Statevector:
    """Reflection about the uniform superposition on the listed wires,
    2|psi><psi| - I, realized as H^n (2|0><0| - I) H^n."""
    qubits = tuple(qubits)
    _check_wires(state, qubits)
    for q in qubits:
        _apply_1q(state, _H, q)
    view = state.amps.reshape([2] * state.n_qubits)
    state.amps *= -1.0
    view[_marked_index(state, qubits, "0" * len(qubits))] *= -1.0
    for q in qubits:
        _apply_1q(state, _H, q)
    return state


def grover_iterations(n_qubits: int) -> int:
    """floor((pi/4) * sqrt(2^n)): the iteration count for a search over 2^n items."""
    if not 1 <= n_qubits <= 26:
        raise ValueError(f"qubit count out of range: {n_qubits}")
    return math.floor(math.pi / 4.0 * math.sqrt(2.0**n_qubits))


# --- measurement -------------------------------------------------------------


def measure(state: Statevector, qubit: int, rng) -> tuple[int, Statevector]:
    """Born-rule measurement of one qubit with collapse.

    Draws u = rng.random() and picks outcome 1 iff u < P(1). The other
    branch is zeroed and the state renormalized in place.
    """
    _check_wires(state, (qubit,))
    view = state.amps.reshape([2] * state.n_qubits)
    v = np.moveaxis(view, _axis(state, qubit), 0)
    p_one = float(np.sum(np.abs(v[1]) ** 2))
    outcome = 1 if rng.random() < p_one else 0
    v[1 - outcome] = 0.0
    norm = math.sqrt(float(np.sum(np.abs(v[outcome]) ** 2)))
    if norm < DEGENERATE_NORM_EPS:
        raise SimulationError(
            "DegenerateNorm",
            f"measurement of qubit {qubit} collapsed to a near-zero branch "
            f"(norm {norm:.3e}); the state was inconsistent",
        )
    state.amps /= norm
    return outcome, state


# --- execution ---------------------------------------------------------------


def execute(ir: CircuitIR, state: Statevector, rng) -> dict[int, int]:
    """Run the op list (and flow graph, if any) of `ir` on an existing state.

    Returns the classical-bit map (cbit index -> 0/1) accumulated by the
    measurements that actually ran. Used by `run` for each shot; exposed so
    callers can start from a prepared state.
    """
    cbits: dict[int, int] = {}
    _execute_ops(ir, ir.ops, state, cbits, rng)
    if ir.flow is not None:
        _execute_flow(ir, ir.flow, state, cbits, rng)
    return cbits


def _read_cbit(ir: CircuitIR, cbits: dict[int, int], cbit: int) -> int:
    if cbit not in cbits:
        raise SimulationError(
            "UnsetCbitRead",
            f"guard reads classical bit '{ir.cbit_names[cbit]}' before any "
            "measurement has written it",
        )
    return cbits[cbit]


def _execute_ops(ir, ops, state, cbits, rng) -> None:
    for op in ops:
        if isinstance(op, GateOp):
            apply_gate(state, op.kind, op.qubits)
        elif isinstance(op, MeasureOp):
            outcome, _ = measure(state, op.qubit, rng)
            cbits[op.cbit] = outcome
        elif isinstance(op, CondBlock):
            if _read_cbit(ir, cbits, op.cbit) == op.expected:
                _execute_ops(ir, op.body, state, cbits, rng)
        else:
            raise TypeError(f"not an IR op: {op!r}")


def _execute_flow(ir, flow: FlowGraph, state, cbits, rng) -> None:
    current = flow.start
    executed = 0
    while current is not None:
        executed += 1
        if executed > FLOW_NODE_LIMIT:
            raise SimulationError(
                "FlowCycleLimitExceeded",
                f"flow traversal exceeded {FLOW_NODE_LIMIT} node executions; "
                "the graph appears to cycle forever",
            )
        _execute_ops(ir, flow.nodes[current], state, cbits, rng)
        next_node = None
        for edge in flow.edges:
            if edge.src != current:
                continue
            if edge.guard is None:
                next_node = edge.dst
                break
            cbit, expected = edge.guard
            if _read_cbit(ir, cbits, cbit) == expected:
                next_node = edge.dst
                break
        current = next_node


def run(
    ir: CircuitIR,
    shots: int = 1024,
    seed: int = 0,
    keep_state: bool = False,
    wall_clock_limit: float | None = None,
) -> SimOutcome:
    """Execute `ir` for `shots` independent shots from |0...0>.

    Counts are keyed by the classical bitstring with c0 leftmost; classical
    bits a shot never wrote read as 0. The final statevector is retained only
    for single-shot runs with keep_state. `wall_clock_limit` (seconds) aborts
    between shots with a SimulationError.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    n_cbits = len(ir.cbit_names)
    counts: dict[str, int] = {}
    last_cbits: dict[str, int] = {}
    state = None
    started = time.monotonic()
    for shot in range(shots):
        if wall_clock_limit is not None and time.monotonic() - started > wall_clock_limit:
            raise SimulationError(
                "SimulationTimeout",
                f"simulation exceeded the {wall_clock_limit:g} s limit "
                f"after {shot} of {shots} shots",
            )
        rng = shot_rng(seed, shot)
        state = zero_state(ir.n_qubits)
        try:
            cbits = execute(ir, state, rng)
        except SimulationError as exc:
            raise SimulationError(exc.code, f"shot {shot}: {exc.message}") from None
        if n_cbits:
            key = "".join(str(cbits.get(i, 0)) for i in range(n_cbits))
            counts[key] = counts.get(key, 0) + 1
        last_cbits = {name: cbits.get(i, 0) for i, name in enumerate(ir.cbit_names)}
    return SimOutcome(
        counts=counts,
        cbits=last_cbits,
        seed=seed,
        shots=shots,
        final_state=state if keep_state and shots == 1 else None,
    )


def simulation_span() -> Span:
    """Spanless anchor for runtime diagnostics (they have no source position)."""
    return Span(1, 1, 0)
