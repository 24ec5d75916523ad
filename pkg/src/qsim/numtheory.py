"""Classical arithmetic for the period-finding algorithms.

Everything works on Python's arbitrary-precision integers; q > N^2 outgrows
64-bit headroom quickly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Convergent:
    """Truncation p/q of a continued-fraction expansion, in lowest terms."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("denominator must be positive")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("convergent must be in lowest terms")

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("gcd is defined here for nonnegative integers")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def mod_pow(a: int, e: int, modulus: int) -> int:
    """a**e mod modulus by repeated squaring."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(a, e, modulus)


def mult_order(a: int, modulus: int) -> int:
    """Smallest r > 0 with a**r = 1 mod modulus, by brute-force multiplication."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus}")
    r, x = 1, a
    while x != 1:
        x = (x * a) % modulus
        r += 1
    return r


def mod_inverse(a: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus}")
    return pow(a, -1, modulus)


def continued_fraction(p: int, q: int) -> list:
    """Canonical expansion [b1, ..., bz] of the rational p/q with 0 < p < q."""
    if not 0 < p < q:
        raise ValueError("expansion is defined for 0 < p < q")
    coeffs = []
    while p:
        coeffs.append(q // p)
        p, q = q % p, p
    return coeffs


def convergents(coeffs) -> list:
    """Successive convergents of [b1, ..., bz]; the last equals the input exactly."""
    out = []
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    for b in coeffs:
        h_prev, h = h, b * h + h_prev
        k_prev, k = k, b * k + k_prev
        out.append(Convergent(h, k))
    return out


def best_order_candidate(ell: int, q: int, modulus: int) -> int | None:
    """Largest-denominator convergent of ell/q with denominator < modulus.

    Returns None for ell = 0, where the quantum round carries no information
    and the caller retries.
    """
    if not 0 <= ell < q:
        raise ValueError("measured value out of range")
    if ell == 0:
        return None
    best = None
    for conv in convergents(continued_fraction(ell, q)):
        if conv.q < modulus:
            best = conv.q
    return best


def is_prime(n: int) -> bool:
    """Deterministic trial division; ample at desk scale."""
    if n < 2:
        raise ValueError("primality is defined for n >= 2")
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_perfect_power(n: int) -> tuple | None:
    """(base, k) with base**k == n and the largest possible k >= 2, else None."""
    if n < 2:
        raise ValueError("perfect-power test is defined for n >= 2")
    for k in range(n.bit_length(), 1, -1):
        base = round(n ** (1.0 / k))
        for candidate in (base - 1, base, base + 1):
            if candidate >= 2 and candidate**k == n:
                return candidate, k
    return None
