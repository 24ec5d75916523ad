"""Circuit IR, exact simulation, shot sampling, and unitary extraction.

Circuits are pure gate sequences; measurements, if declared, are terminal.
Mid-circuit collapse belongs to algorithm drivers, which call qstate.measure.
"""

from __future__ import annotations

import os

import numpy as np

from .gates import Gate, GateApplication, apply_to_array, standard_gate
from .qstate import Distribution, StateVector, basis_state, marginal_probs

DEFAULT_MAX_QUBITS = 20
UNITARY_MAX_QUBITS = 12
MAX_SHOTS = 10**7

_X = standard_gate("X")
_H = standard_gate("H")
_Z = standard_gate("Z")
_SWAP = standard_gate("SWAP")


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds the desk-scale qubit or shot caps."""


def max_qubits() -> int:
    return int(os.environ.get("QSIM_MAX_QUBITS", DEFAULT_MAX_QUBITS))


class Circuit:
    """Ordered gate applications on ``num_qubits`` wires."""

    def __init__(self, num_qubits: int, ops=None, measurements=None):
        if num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        self.num_qubits = num_qubits
        self.ops: list[GateApplication] = []
        self.measurements: list[int] | None = None
        for op in ops or ():
            self.append_op(op)
        if measurements is not None:
            self.measure(measurements)

    def append_op(self, op: GateApplication) -> "Circuit":
        if self.measurements is not None:
            raise ValueError("measurements are terminal; no gates may follow them")
        if any(q >= self.num_qubits or q < 0 for q in op.qubits()):
            raise ValueError("gate touches a qubit outside the circuit")
        self.ops.append(op)
        return self

    def append(self, gate: Gate, targets, controls=()) -> "Circuit":
        return self.append_op(GateApplication(gate, tuple(targets), tuple(controls)))

    def h(self, q: int) -> "Circuit":
        return self.append(_H, (q,))

    def x(self, q: int) -> "Circuit":
        return self.append(_X, (q,))

    def z(self, q: int) -> "Circuit":
        return self.append(_Z, (q,))

    def cx(self, control: int, target: int) -> "Circuit":
        return self.append(_X, (target,), ((control, 1),))

    def ccx(self, c1: int, c2: int, target: int) -> "Circuit":
        return self.append(_X, (target,), ((c1, 1), (c2, 1)))

    def mcx(self, controls, target: int) -> "Circuit":
        """Multi-controlled X; ``controls`` are (qubit, polarity) pairs."""
        return self.append(_X, (target,), tuple(controls))

    def swap(self, a: int, b: int) -> "Circuit":
        return self.append(_SWAP, (a, b))

    def extend(self, other: "Circuit") -> "Circuit":
        for op in other.ops:
            self.append_op(op)
        return self

    def measure(self, qubits) -> "Circuit":
        qubits = sorted(qubits)
        if len(set(qubits)) != len(qubits):
            raise ValueError("measured qubits must be distinct")
        if any(q < 0 or q >= self.num_qubits for q in qubits):
            raise ValueError("measured qubit out of range")
        self.measurements = qubits
        return self

    def inverse_ops(self) -> list:
        """Gate applications of the dagger circuit."""
        out = []
        for op in reversed(self.ops):
            matrix = op.gate.matrix.conj().T
            if np.allclose(matrix, op.gate.matrix, atol=1e-15):
                gate = op.gate
            else:
                gate = Gate(op.gate.name + "dg", matrix)
            out.append(GateApplication(gate, op.targets, op.controls))
        return out


def simulate(c: Circuit, initial: StateVector | None = None) -> StateVector:
    """Left-to-right application of the ops; the measurement list is ignored."""
    if c.num_qubits > max_qubits():
        raise ResourceLimitError(f"{c.num_qubits} qubits exceeds the cap {max_qubits()}")
    if initial is None:
        initial = basis_state(c.num_qubits, 0)
    if initial.num_qubits != c.num_qubits:
        raise ValueError("initial state size does not match the circuit")
    amps = initial.amps.copy()
    for op in c.ops:
        apply_to_array(amps, c.num_qubits, op)
    return StateVector(c.num_qubits, amps)


def run(c: Circuit, shots: int, seed: int) -> Distribution:
    """Sample the declared measurement ``shots`` times, deterministically in seed."""
    if not c.measurements:
        raise ValueError("circuit declares no measurements")
    if shots < 1:
        raise ValueError("at least one shot is required")
    if shots > MAX_SHOTS:
        raise ResourceLimitError(f"{shots} shots exceeds the cap {MAX_SHOTS}")
    final = simulate(c)
    probs = marginal_probs(final, c.measurements)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    width = len(c.measurements)
    entries = {
        format(i, f"0{width}b"): int(k) for i, k in enumerate(counts) if k > 0
    }
    return Distribution("sampled", entries, shots=shots)


def unitary_of(c: Circuit) -> np.ndarray:
    """Materialize the circuit's composite operator, column by basis column."""
    if c.num_qubits > UNITARY_MAX_QUBITS:
        raise ResourceLimitError(
            f"unitary extraction is capped at {UNITARY_MAX_QUBITS} qubits"
        )
    dim = 1 << c.num_qubits
    matrix = np.eye(dim, dtype=complex)
    for op in c.ops:
        apply_to_array(matrix, c.num_qubits, op)
    return matrix


def equiv_up_to_phase(a, b, tol: float = 1e-10) -> bool:
    """True iff a = gamma * b for some unit scalar gamma, within max-norm tol."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("shapes differ")
    pivot = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[pivot]) == 0:
        return bool(np.max(np.abs(a)) <= tol)
    gamma = a[pivot] / b[pivot]
    mag = abs(gamma)
    if mag == 0:
        return False
    gamma /= mag
    return bool(np.max(np.abs(a - gamma * b)) <= tol)


def circuit_text(c: Circuit) -> str:
    """Debug dump, one op per line: ``GATE targets=[..] controls=[(q,+|-)..]``."""
    lines = []
    for op in c.ops:
        controls = ",".join(f"({q},{'+' if v else '-'})" for q, v in op.controls)
        targets = ",".join(str(t) for t in op.targets)
        lines.append(f"{op.gate.name} targets=[{targets}] controls=[{controls}]")
    return "\n".join(lines)
