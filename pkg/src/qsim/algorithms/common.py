"""Shared result envelope and the H-layer / oracle / post-processing skeleton."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit
from ..qstate import Distribution, StateVector, marginal_probs


@dataclass
class AlgorithmResult:
    """Uniform driver result: answer payload plus the exact verification law."""

    answer: object
    exact_distribution: Distribution | None = None
    rounds_used: int = 1
    success: bool = True


@dataclass(frozen=True)
class GroverGeometry:
    """Rotation-angle view of amplitude amplification."""

    theta: float
    iterations: int
    predicted_success: float


def skeleton_circuit(num_qubits: int, h_qubits, oracle: Circuit, post_ops, measured) -> Circuit:
    """Assemble the common driver shape: H layer, oracle, post-processing, measure."""
    c = Circuit(num_qubits)
    for q in h_qubits:
        c.h(q)
    for op in oracle.ops:
        c.append_op(op)
    for op in post_ops:
        c.append_op(op)
    if measured:
        c.measure(measured)
    return c


def register_distribution(state: StateVector, qubits) -> Distribution:
    """Exact marginal law of a register, keyed by bitstring."""
    qubits = sorted(qubits)
    probs = marginal_probs(state, qubits)
    probs = probs / probs.sum()
    width = len(qubits)
    entries = {format(i, f"0{width}b"): float(p) for i, p in enumerate(probs)}
    return Distribution("exact", entries)


def sample_register(state: StateVector, qubits, rng: np.random.Generator) -> str:
    """Draw one outcome of measuring ``qubits`` without collapsing the state."""
    qubits = sorted(qubits)
    probs = marginal_probs(state, qubits)
    probs = probs / probs.sum()
    outcome = int(rng.choice(len(probs), p=probs))
    return format(outcome, f"0{len(qubits)}b")
