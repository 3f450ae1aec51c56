"""Integer and prime-field helpers."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from ..errors import InvalidArgument

# deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [p for p in primes_up_to(hi) if p >= lo]


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by quadratic reciprocity."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidArgument(f"legendre_symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    result = 1
    n = p
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a mod the odd prime p (Tonelli-Shanks).

    Raises ValueError when a is a non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, PrimeFieldElement):
            return (self.value, self.modulus) == (other.value, other.modulus)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __add__(self, other):
        return PrimeFieldElement(self.value + int(other), self.modulus)

    def __sub__(self, other):
        return PrimeFieldElement(self.value - int(other), self.modulus)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * int(other), self.modulus)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.modulus)

    def inverse(self):
        return PrimeFieldElement(inv_mod(self.value, self.modulus), self.modulus)

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"
