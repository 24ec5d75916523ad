"""One-query drivers: Deutsch, Deutsch-Jozsa, and Bernstein-Vazirani."""

from __future__ import annotations

import numpy as np

from ..circuit import Circuit, simulate
from ..oracles import TruthTable, synth_bit_oracle, synth_phase_oracle
from ..qstate import basis_state, kron
from .common import AlgorithmResult, register_distribution, sample_register


def _minus_input(n: int):
    """|0...0> on the first n qubits tensor |1> on the work qubit."""
    return kron(basis_state(n, 0), basis_state(1, 1))


def deutsch_circuit(f: TruthTable, economical: bool = False) -> Circuit:
    if f.n_in != 1 or f.n_out != 1:
        raise ValueError("a 1-bit Boolean function is required")
    if economical:
        marked = [format(x, "01b") for x in range(2) if f.rows[x] == "1"]
        oracle = synth_phase_oracle(1, marked)
        c = Circuit(1)
        c.h(0)
        c.extend(oracle)
        c.h(0)
        return c.measure([0])
    oracle = synth_bit_oracle(f)
    c = Circuit(2)
    c.h(0).h(1)
    c.extend(oracle)
    c.h(0).h(1)
    return c.measure([0])


def deutsch(f: TruthTable, economical: bool = False, seed: int = 0) -> AlgorithmResult:
    """Classify a 1-bit function as constant or balanced with one oracle query."""
    c = deutsch_circuit(f, economical)
    initial = basis_state(1, 0) if economical else _minus_input(1)
    final = simulate(c, initial)
    dist = register_distribution(final, [0])
    rng = np.random.default_rng(seed)
    outcome = sample_register(final, [0], rng)
    verdict = "constant" if outcome == "0" else "balanced"
    return AlgorithmResult(answer=verdict, exact_distribution=dist)


def dj_circuit(oracle: Circuit, n: int) -> Circuit:
    if oracle.num_qubits != n + 1:
        raise ValueError("oracle must act on n input qubits plus one work qubit")
    c = Circuit(n + 1)
    for q in range(n + 1):
        c.h(q)
    c.extend(oracle)
    for q in range(n + 1):
        c.h(q)
    return c.measure(list(range(n)))


def deutsch_jozsa(oracle: Circuit, n: int, seed: int = 0) -> AlgorithmResult:
    """Constant iff the first register reads all zeros; promise is not checked."""
    c = dj_circuit(oracle, n)
    final = simulate(c, _minus_input(n))
    dist = register_distribution(final, range(n))
    rng = np.random.default_rng(seed)
    outcome = sample_register(final, range(n), rng)
    verdict = "constant" if outcome == "0" * n else "balanced"
    return AlgorithmResult(answer=verdict, exact_distribution=dist)


def dj_classical_randomized(f_probe, n: int, k: int, seed: int = 0):
    """Randomized baseline: k probes, 'balanced' on any disagreement.

    Returns (verdict, bound) where the bound is the correctness probability
    of a 'constant' verdict, 1 - 1/2**(k-1).
    """
    if k < 2:
        raise ValueError("at least two probes are required")
    rng = np.random.default_rng(seed)
    seen = set()
    for _ in range(k):
        x = format(int(rng.integers(1 << n)), f"0{n}b")
        seen.add(f_probe(x))
        if len(seen) > 1:
            return "balanced", 1.0 - 1.0 / (1 << (k - 1))
    return "constant", 1.0 - 1.0 / (1 << (k - 1))


def _bv_phase_form(oracle: Circuit, n: int) -> Circuit:
    """Rewrite a CNOT bank into its tensor-of-Z economical form."""
    c = Circuit(n)
    for op in oracle.ops:
        if (
            op.gate.name == "X"
            and op.targets == (n,)
            and len(op.controls) == 1
            and op.controls[0][1] == 1
        ):
            c.z(op.controls[0][0])
        else:
            raise ValueError("economical form needs a CNOT-bank oracle")
    return c


def bv_circuit(oracle: Circuit, n: int, economical: bool = False) -> Circuit:
    if economical:
        c = Circuit(n)
        for q in range(n):
            c.h(q)
        c.extend(_bv_phase_form(oracle, n))
        for q in range(n):
            c.h(q)
        return c.measure(list(range(n)))
    return dj_circuit(oracle, n)


def bernstein_vazirani(
    oracle: Circuit, n: int, economical: bool = False, seed: int = 0
) -> AlgorithmResult:
    """Read the hidden linear string in a single query."""
    c = bv_circuit(oracle, n, economical)
    initial = basis_state(n, 0) if economical else _minus_input(n)
    final = simulate(c, initial)
    dist = register_distribution(final, range(n))
    rng = np.random.default_rng(seed)
    outcome = sample_register(final, range(n), rng)
    return AlgorithmResult(answer=outcome, exact_distribution=dist)
