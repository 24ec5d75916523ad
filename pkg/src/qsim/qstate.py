"""Complex state vectors, tensor composition, measurement, and entanglement checks.

A state over ``n`` qubits is a normalized complex vector of length ``2**n``.
Qubit 0 is the MOST significant bit of the basis index, i.e. the leftmost
symbol of the ket, matching the usual textbook reading order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_ATOL = 1e-10


def _bitstring(index: int, width: int) -> str:
    return format(index, f"0{width}b")


class StateVector:
    """Normalized amplitude vector over the 2**n computational basis states."""

    __slots__ = ("num_qubits", "amps")

    def __init__(self, num_qubits: int, amps):
        if num_qubits < 1:
            raise ValueError("a state needs at least one qubit")
        amps = np.asarray(amps, dtype=complex)
        if amps.shape != (1 << num_qubits,):
            raise ValueError(
                f"expected {1 << num_qubits} amplitudes for {num_qubits} qubits, "
                f"got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state is not normalized (norm {norm})")
        # keep the invariant tight rather than trusting accumulated arithmetic
        if abs(norm - 1.0) > NORM_ATOL:
            amps = amps / norm
        self.num_qubits = num_qubits
        self.amps = amps

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a (partial) computational-basis measurement with collapse."""

    measured_qubits: tuple
    outcome: str
    probability: float
    post_state: StateVector


@dataclass(frozen=True)
class Distribution:
    """Exact probabilities or sampled shot counts over bitstrings."""

    kind: str
    entries: dict
    shots: int | None = None

    def __post_init__(self):
        if self.kind == "exact":
            total = sum(self.entries.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"exact probabilities sum to {total}, not 1")
            if self.shots is not None:
                raise ValueError("exact distributions carry no shot count")
        elif self.kind == "sampled":
            if self.shots is None or sum(self.entries.values()) != self.shots:
                raise ValueError("sampled counts must sum to the shot count")
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    def prob(self, bits: str) -> float:
        return self.entries.get(bits, 0.0)

    def support(self, tol: float = 1e-12) -> set:
        return {b for b, v in self.entries.items() if v > tol}


def basis_state(n: int, x: int) -> StateVector:
    """Computational basis ket |x> on n qubits."""
    if n < 1:
        raise ValueError("a state needs at least one qubit")
    if not 0 <= x < (1 << n):
        raise ValueError(f"basis index {x} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=complex)
    amps[x] = 1.0
    return StateVector(n, amps)


def kron(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product; a's qubits become the leading (leftmost) ones."""
    return StateVector(a.num_qubits + b.num_qubits, np.kron(a.amps, b.amps))


def probabilities(s: StateVector) -> Distribution:
    """Exact outcome distribution over every basis string."""
    probs = np.abs(s.amps) ** 2
    probs = probs / probs.sum()
    n = s.num_qubits
    entries = {_bitstring(x, n): float(p) for x, p in enumerate(probs)}
    return Distribution("exact", entries)


def marginal_probs(s: StateVector, qubits) -> np.ndarray:
    """Exact marginal over ``qubits`` (ascending index order), as an array."""
    n = s.num_qubits
    qubits = sorted(qubits)
    probs = (np.abs(s.amps) ** 2).reshape([2] * n)
    keep = set(qubits)
    drop = tuple(q for q in range(n) if q not in keep)
    if drop:
        probs = probs.sum(axis=drop)
    return probs.reshape(-1)


def measure(s: StateVector, qubits, rng: np.random.Generator) -> MeasurementRecord:
    """Measure ``qubits`` in the computational basis, collapsing the state."""
    n = s.num_qubits
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits):
        raise ValueError("measured qubits must be distinct")
    if any(q < 0 or q >= n for q in qubits):
        raise ValueError("measured qubit out of range")
    qubits = sorted(qubits)
    k = len(qubits)

    marg = marginal_probs(s, qubits)
    total = marg.sum()
    if total <= 0:
        raise RuntimeError("all outcomes have zero probability; state invariant broken")
    outcome_index = int(rng.choice(1 << k, p=marg / total))
    prob = float(marg[outcome_index])

    indices = np.arange(1 << n)
    mask = np.ones(1 << n, dtype=bool)
    for j, q in enumerate(qubits):
        want = (outcome_index >> (k - 1 - j)) & 1
        mask &= ((indices >> (n - 1 - q)) & 1) == want
    post = np.where(mask, s.amps, 0.0)
    post = post / np.linalg.norm(post)

    return MeasurementRecord(
        measured_qubits=tuple(qubits),
        outcome=_bitstring(outcome_index, k),
        probability=prob,
        post_state=StateVector(n, post),
    )


def schmidt_rank(s: StateVector, left_qubits, tol: float = 1e-8) -> int:
    """Rank of the bipartite coefficient matrix; 1 iff the cut is a product."""
    n = s.num_qubits
    left = sorted(set(left_qubits))
    if not left or len(left) >= n:
        raise ValueError("left_qubits must be a proper nonempty subset")
    right = [q for q in range(n) if q not in left]
    tensor = s.amps.reshape([2] * n)
    matrix = np.transpose(tensor, left + right).reshape(1 << len(left), -1)
    return int(np.linalg.matrix_rank(matrix, tol=tol))


def bloch_angles(s: StateVector, tol: float = 1e-9) -> tuple:
    """Spherical angles (theta, phi) of a single-qubit state, global phase dropped."""
    if s.num_qubits != 1:
        raise ValueError("bloch_angles is defined for single-qubit states")
    alpha, beta = s.amps
    r0 = min(abs(alpha), 1.0)
    theta = 2.0 * np.arccos(r0)
    if abs(beta) < tol or np.sin(theta / 2) < tol:
        return float(theta), 0.0
    if abs(alpha) < tol:
        return float(np.pi), 0.0
    phi = float(np.mod(np.angle(beta) - np.angle(alpha), 2 * np.pi))
    return float(theta), phi
