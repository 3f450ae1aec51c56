"""Univariate polynomials over a finite field.

Polynomials are lists of field elements, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  The ``F`` argument is a
:class:`~bogocert.algebra.ffield.PrimeField` or
:class:`~bogocert.algebra.ffield.ExtField`.

Factorization (:func:`poly_factor`) works over F_p only: squarefree
decomposition, distinct-degree splitting, then Cantor-Zassenhaus
equal-degree splitting driven by a generator seeded from the input, so the
output is reproducible.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from ..errors import InvalidArgument
from .ffield import PrimeField
from .modp import PrimeFieldElement


def trim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return trim(F, out)


def sub(F, a, b):
    return add(F, a, [F.neg(y) for y in b])


def scale(F, a, c):
    return trim(F, [F.mul(x, c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = deg(b)
    inv_lc = F.inv(b[-1])
    q = [F.zero] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        t = a[k]
        if F.is_zero(t):
            continue
        t = F.mul(t, inv_lc)
        q[k - db] = t
        for i, y in enumerate(b):
            a[k - db + i] = F.sub(a[k - db + i], F.mul(t, y))
    return trim(F, q), trim(F, a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd (``[]`` when both inputs are zero)."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def derivative(F, a):
    return trim(F, [F.mul(F(i), c) for i, c in enumerate(a)][1:])


def powmod(F, base, e, m):
    result = [F.one]
    base = mod(F, base, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def resultant(F, f, g):
    """Res(f, g) via the Euclidean recursion.

    res(f, g) = (-1)^(deg f deg g) lc(g)^(deg f - deg r) res(g, r), r = f mod g.
    """
    if not f or not g:
        raise InvalidArgument("resultant of the zero polynomial")
    acc = F.one
    while True:
        n, m = deg(f), deg(g)
        if m == 0:
            return F.mul(acc, F.pow(g[0], n))
        r = mod(F, f, g)
        if not r:
            return F.zero
        if (n * m) % 2:
            acc = F.neg(acc)
        acc = F.mul(acc, F.pow(g[-1], n - deg(r)))
        f, g = g, r


# -- F_p specific ------------------------------------------------------------


@dataclass(frozen=True)
class PolyOverFp:
    """A polynomial over F_p; coefficients constant term first, reduced and trimmed."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def field(self):
        return PrimeField(self.p)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __mul__(self, other):
        return PolyOverFp(self.p, mul(self.field, list(self.coeffs), list(other.coeffs)))

    def __pow__(self, n):
        out = PolyOverFp(self.p, (1,))
        for _ in range(n):
            out = out * self
        return out

    def monic(self):
        return PolyOverFp(self.p, monic(self.field, list(self.coeffs)))

    def __repr__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + ("*" if coef and mon else "") + mon)
        return f"({' + '.join(terms) or '0'}) mod {self.p}"


def _sort_key(item):
    g, _ = item
    return (len(g), tuple(g))


def _squarefree(F, f):
    """Squarefree decomposition of monic f: list of (g, multiplicity)."""
    p = F.p
    out = []
    i = 1
    fp = derivative(F, f)
    if fp:
        c = gcd(F, f, fp)
        w = divmod_(F, f, c)[0]
        while deg(w) > 0:
            y = gcd(F, w, c)
            z = divmod_(F, w, y)[0]
            if deg(z) > 0:
                out.append((z, i))
            i += 1
            w = y
            c = divmod_(F, c, y)[0]
        if deg(c) > 0:
            # c is a p-th power
            root = [c[k] for k in range(0, len(c), p)]
            out.extend((g, m * p) for g, m in _squarefree(F, root))
    else:
        root = [f[k] for k in range(0, len(f), p)]
        out.extend((g, m * p) for g, m in _squarefree(F, root))
    return out


def _distinct_degree(F, f):
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.p, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree(F, f, d, rng):
    n = deg(f)
    if n == d:
        return [f]
    p = F.p
    while True:
        a = trim(F, [rng.randrange(p) for _ in range(n)])
        if deg(a) < 1:
            continue
        if p == 2:
            # trace map F_{2^d} -> F_2
            t, b = a, a
            for _ in range(d - 1):
                b = mod(F, mul(F, b, b), f)
                t = add(F, t, b)
        else:
            t = sub(F, powmod(F, a, (p**d - 1) // 2, f), [F.one])
        g = gcd(F, f, t)
        if 0 < deg(g) < n:
            return _equal_degree(F, g, d, rng) + _equal_degree(F, divmod_(F, f, g)[0], d, rng)


def _seed(p, coeffs):
    h = hashlib.sha256(f"{p}:{','.join(map(str, coeffs))}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def poly_factor(f: PolyOverFp) -> list[tuple[PolyOverFp, int]]:
    """Factor f into monic irreducibles with multiplicities.

    Output is sorted by degree, then by coefficient tuple.
    """
    if f.is_zero():
        raise InvalidArgument("cannot factor the zero polynomial")
    F = f.field
    g = monic(F, list(f.coeffs))
    if deg(g) == 0:
        return []
    rng = random.Random(_seed(f.p, f.coeffs))
    found = {}
    for sq, mult in _squarefree(F, g):
        for block, d in _distinct_degree(F, sq):
            for irr in _equal_degree(F, block, d, rng):
                key = tuple(irr)
                found[key] = found.get(key, 0) + mult
    items = sorted(found.items(), key=_sort_key)
    return [(PolyOverFp(f.p, k), m) for k, m in items]


def is_irreducible(f: PolyOverFp) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n."""
    if f.is_zero() or f.degree < 1:
        return False
    F = f.field
    g = monic(F, list(f.coeffs))
    n = deg(g)
    if n == 1:
        return True
    x = [F.zero, F.one]
    p = f.p
    for q in _prime_divisors(n):
        h = powmod(F, x, p ** (n // q), g)
        if deg(gcd(F, g, sub(F, h, x))) > 0:
            return False
    return not sub(F, powmod(F, x, p**n, g), x)


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def poly_resultant(f: PolyOverFp, g: PolyOverFp) -> PrimeFieldElement:
    if f.p != g.p:
        raise InvalidArgument("polynomials over different fields")
    if f.is_zero() or g.is_zero():
        raise InvalidArgument("resultant of the zero polynomial")
    F = f.field
    return PrimeFieldElement(resultant(F, list(f.coeffs), list(g.coeffs)), f.p)


def poly_gcd(f: PolyOverFp, g: PolyOverFp) -> PolyOverFp:
    F = f.field
    return PolyOverFp(f.p, gcd(F, list(f.coeffs), list(g.coeffs)))
