"""Coefficient rings: unbounded integers or a prime field.

A RingSpec with modulus None is the ring of integers; with a prime q it is
the field of integers mod q, coefficients kept canonical in [0, q).
Primality is checked at construction with a deterministic Miller-Rabin
round set (exact below 3.3e24, which covers any practical modulus; above
that the same fixed witnesses are still applied and act as a very strong
probable-prime test).
"""

from __future__ import annotations

from dataclasses import dataclass

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the fixed witness set above."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """Coefficient domain: integers (modulus None) or the field mod a prime."""

    modulus: int | None = None

    def __post_init__(self):
        q = self.modulus
        if q is not None and not is_prime(q):
            raise ValueError(f"modulus must be prime, got {q}")

    @property
    def is_field(self) -> bool:
        return self.modulus is not None

    def coeff(self, c: int) -> int:
        """Canonical representative of c in this ring."""
        return c if self.modulus is None else c % self.modulus

    def add(self, a: int, b: int) -> int:
        s = a + b
        return s if self.modulus is None else s % self.modulus

    def mul(self, a: int, b: int) -> int:
        p = a * b
        return p if self.modulus is None else p % self.modulus

    def neg(self, a: int) -> int:
        return -a if self.modulus is None else (-a) % self.modulus

    def __repr__(self):
        return "Z" if self.modulus is None else f"F_{self.modulus}"


INTEGERS = RingSpec()


def prime_field(q: int) -> RingSpec:
    return RingSpec(q)
