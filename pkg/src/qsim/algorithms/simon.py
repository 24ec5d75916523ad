"""Two-register hidden-string driver: quantum rounds plus GF(2) solve."""

from __future__ import annotations

import numpy as np

from ..circuit import Circuit, simulate
from ..gf2 import BitMatrix, InsufficientRankError, rank, simon_postprocess
from ..oracles import PermutationOracle, apply_permutation
from ..qstate import StateVector, basis_state, measure
from .common import AlgorithmResult, register_distribution, sample_register


def _post_oracle_state(oracle, n: int) -> StateVector:
    """Uniform first register through the oracle, second register |0...0>."""
    state = basis_state(2 * n, 0)
    c = Circuit(2 * n)
    for q in range(n):
        c.h(q)
    if isinstance(oracle, PermutationOracle):
        if oracle.total_qubits != 2 * n:
            raise ValueError("oracle width must be 2n qubits")
        state = simulate(c, state)
        return apply_permutation(state, oracle)
    if oracle.num_qubits != 2 * n:
        raise ValueError("oracle width must be 2n qubits")
    c.extend(oracle)
    return simulate(c, state)


def _hadamard_first_register(state: StateVector, n: int) -> StateVector:
    c = Circuit(2 * n)
    for q in range(n):
        c.h(q)
    return simulate(c, state)


def simon_round_distribution(oracle, n: int):
    """Exact first-register law of one quantum round (collapse-independent)."""
    state = _post_oracle_state(oracle, n)
    state = _hadamard_first_register(state, n)
    return register_distribution(state, range(n))


def simon_round(oracle, n: int, rng: np.random.Generator, _base: StateVector | None = None) -> str:
    """One quantum round: returns an n-bit string orthogonal to the hidden one."""
    state = _base if _base is not None else _post_oracle_state(oracle, n)
    record = measure(state, range(n, 2 * n), rng)
    state = _hadamard_first_register(record.post_state, n)
    return sample_register(state, range(n), rng)


def simon_batch(oracle, n: int, rng: np.random.Generator):
    """n-1 quantum rounds; returns (equations, has_full_rank)."""
    base = _post_oracle_state(oracle, n)  # deterministic up to the collapse
    rows = [simon_round(oracle, n, rng, _base=base) for _ in range(n - 1)]
    equations = BitMatrix.from_strings(rows)
    return equations, rank(equations) == n - 1


def simon(
    oracle, n: int, f_probe, max_restarts: int = 32, seed: int = 0
) -> AlgorithmResult:
    """Full driver: batches of n-1 rounds until the GF(2) system determines s."""
    rng = np.random.default_rng(seed)
    dist = simon_round_distribution(oracle, n)
    rounds = 0
    for _ in range(max_restarts):
        equations, full_rank = simon_batch(oracle, n, rng)
        rounds += n - 1
        if not full_rank:
            continue
        try:
            s = simon_postprocess(equations, f_probe)
        except InsufficientRankError:
            continue
        return AlgorithmResult(
            answer=s, exact_distribution=dist, rounds_used=rounds, success=True
        )
    return AlgorithmResult(
        answer=None, exact_distribution=dist, rounds_used=rounds, success=False
    )
