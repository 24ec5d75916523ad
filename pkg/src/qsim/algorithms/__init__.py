"""Drivers for the seven oracle-style algorithms plus QFT, QPE, and counting."""

from .common import AlgorithmResult, GroverGeometry
from .deutsch import bernstein_vazirani, deutsch, deutsch_jozsa, dj_classical_randomized
from .grover import grover, grover_geometry, grover_unknown_m, sat_solve
from .qft import crk_decomposition, inverse_qft_circuit, qft_circuit
from .qpe import qpe, qpe_dlog, qpe_order_finding, quantum_counting
from .shor import fact3_screen, shor_dlog_pow2, shor_factor, shor_quantum_part
from .simon import simon, simon_batch, simon_round, simon_round_distribution

__all__ = [
    "AlgorithmResult",
    "GroverGeometry",
    "bernstein_vazirani",
    "crk_decomposition",
    "deutsch",
    "deutsch_jozsa",
    "dj_classical_randomized",
    "fact3_screen",
    "grover",
    "grover_geometry",
    "grover_unknown_m",
    "inverse_qft_circuit",
    "qft_circuit",
    "qpe",
    "qpe_dlog",
    "qpe_order_finding",
    "quantum_counting",
    "sat_solve",
    "shor_dlog_pow2",
    "shor_factor",
    "shor_quantum_part",
    "simon",
    "simon_batch",
    "simon_round",
    "simon_round_distribution",
]
