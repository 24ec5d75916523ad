"""Fourier-transform circuit synthesis and the controlled-phase decomposition."""

from __future__ import annotations

from ..circuit import Circuit
from ..gates import dagger, rk_phase


def qft_circuit(n: int) -> Circuit:
    """Fourier transform on n qubits: H and controlled R_k cascade plus swaps.

    Gate count is n(n+1)/2 + floor(n/2).
    """
    if n < 1:
        raise ValueError("at least one qubit is required")
    c = Circuit(n)
    for j in range(n):
        c.h(j)
        for k in range(2, n - j + 1):
            c.append(rk_phase(k), (j,), ((j + k - 1, 1),))
    for j in range(n // 2):
        c.swap(j, n - 1 - j)
    return c


def inverse_qft_circuit(n: int) -> Circuit:
    """Dagger of the transform: reversed ops with conjugated phases."""
    c = Circuit(n)
    for op in qft_circuit(n).inverse_ops():
        c.append_op(op)
    return c


def crk_decomposition(k: int) -> Circuit:
    """Controlled R_k from two CNOTs and three R_{k+1}-family gates.

    Qubit 0 is the control, qubit 1 the target.
    """
    if k < 1:
        raise ValueError("decomposition is defined for k >= 1")
    half = rk_phase(k + 1)
    c = Circuit(2)
    c.append(half, (1,))
    c.cx(0, 1)
    c.append(dagger(half), (1,))
    c.cx(0, 1)
    c.append(half, (0,))
    return c
