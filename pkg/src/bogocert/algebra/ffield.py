"""Finite fields F_p and F_p[x]/(g).

Both field classes expose the same small arithmetic interface so the
polynomial routines in :mod:`bogocert.algebra.poly` can run over either.
Prime-field elements are plain ints in [0, p); extension-field elements are
tuples of f ints (power-basis coordinates, constant term first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import InvalidArgument
from .modp import inv_mod, is_prime, legendre_symbol, sqrt_mod


@dataclass(frozen=True)
class PrimeField:
    p: int

    degree = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidArgument(f"{self.p} is not prime")

    @property
    def order(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __call__(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return inv_mod(a, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def coords(self, a):
        return (a,)


@dataclass(frozen=True)
class ExtField:
    """F_p[x]/(modulus) for a monic irreducible modulus (constant term first)."""

    p: int
    modulus: tuple
    degree: int = field(init=False)

    def __post_init__(self):
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) < 2 or mod[-1] != 1:
            raise InvalidArgument("modulus must be monic of degree >= 1")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "degree", len(mod) - 1)

    @property
    def order(self):
        return self.p**self.degree

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    @property
    def gen(self):
        if self.degree == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    def __call__(self, n):
        """Coerce an int or a coefficient sequence into the field."""
        if isinstance(n, int):
            return (n % self.p,) + (0,) * (self.degree - 1)
        return self._reduce([int(c) for c in n])

    def _reduce(self, c):
        p, f, mod = self.p, self.degree, self.modulus
        c = [x % p for x in c]
        for k in range(len(c) - 1, f - 1, -1):
            t = c[k]
            if t:
                base = k - f
                for i in range(f):
                    c[base + i] = (c[base + i] - t * mod[i]) % p
        c = c[:f]
        c += [0] * (f - len(c))
        return tuple(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.degree == 1:
            return (a[0] * b[0] % self.p,)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        if self.degree == 1:
            return (inv_mod(a[0], self.p),)
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)

    def coords(self, a):
        return a

    def in_subfield(self, a, d):
        """True when a lies in the subfield F_{p^d}."""
        return self.pow(a, self.p**d) == a

    def norm_to_prime_field(self, a):
        """N(a) = a^(1 + p + ... + p^(f-1)), returned as an int."""
        e = (self.order - 1) // (self.p - 1)
        return self.pow(a, e)[0]


@lru_cache(maxsize=None)
def canonical_quadratic(p: int) -> tuple:
    """The monic irreducible x^2 + c1 x + c0 with (c1, c0) lexicographically
    smallest, returned constant term first."""
    if p == 2:
        return (1, 1, 1)
    for c1 in range(p):
        for c0 in range(p):
            if legendre_symbol(c1 * c1 - 4 * c0, p) == -1:
                return (c0, c1, 1)
    raise AssertionError("unreachable")


def fp2(p: int) -> ExtField:
    """F_p^2 in its canonical presentation."""
    return ExtField(p, canonical_quadratic(p))


def to_canonical_fp2(src: ExtField, a) -> tuple:
    """Map an element of F_p[x]/(g), g quadratic, into the canonical F_p^2."""
    p = src.p
    if src.degree != 2:
        raise InvalidArgument("source field must have degree 2")
    dst = fp2(p)
    if src.modulus == dst.modulus:
        return tuple(a)
    c0, c1, _ = src.modulus
    u0, u1, _ = dst.modulus
    d = (c1 * c1 - 4 * c0) % p
    delta = (u1 * u1 - 4 * u0) % p
    s = sqrt_mod(d * inv_mod(delta, p), p)
    # sqrt(delta) = 2*theta + u1 in dst, so sqrt(d) = s*(2*theta + u1)
    sqrt_d = dst((s * u1, 2 * s))
    half = inv_mod(2, p)
    root = dst.mul(dst.add(dst(-c1), sqrt_d), dst(half))
    return dst.add(dst(a[0]), dst.mul(dst(a[1]), root))
