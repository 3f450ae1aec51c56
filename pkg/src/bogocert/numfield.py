"""Number fields presented as Q[x]/(f) and the order Z[theta].

Everything here works with the equation order Z[theta]: Dedekind's
criterion decides p-maximality, and where it holds the factorization of f
mod p gives the splitting of p.  Primes where it fails are treated
conservatively by callers (added to the bad set, or reported as
unsupported).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

import sympy

from .algebra.ffield import ExtField
from .algebra.modp import inv_mod, is_prime, primes_up_to
from .algebra.poly import PolyOverFp, poly_factor, poly_gcd
from .errors import InvalidArgument, UnsupportedPrime

# -- rational polynomial helpers (constant term first) ----------------------


def _qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qdivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _qtrim(b)
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        t = a[k] / b[-1]
        if t:
            q[k - db] = t
            for i, y in enumerate(b):
                a[k - db + i] -= t * y
    return _qtrim(q), _qtrim(a[:db])


def _qsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _qtrim([x - y for x, y in zip(a, b)])


def det(matrix) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                t = m[r][c] / m[c][c]
                m[r] = [x - t * y for x, y in zip(m[r], m[c])]
    return result


def _solve(columns, target):
    """Coefficients x with sum x_i columns[i] = target, or None."""
    n, k = len(target), len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                t = rows[i][c]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, n)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        x[c] = rows[i][k]
    return x


def _ratmod(x: Fraction, p: int) -> int:
    return x.numerator * inv_mod(x.denominator, p) % p


def _vp(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k


# -- orders -------------------------------------------------------------------


@dataclass(frozen=True)
class NumberFieldOrder:
    """Z[theta] inside Q(theta), theta a root of the monic integer ``min_poly``.

    ``min_poly`` is stored constant term first; ``(0, 1)`` presents Q.
    """

    min_poly: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        f = tuple(int(c) for c in self.min_poly)
        object.__setattr__(self, "min_poly", f)
        if len(f) < 2 or f[-1] != 1:
            raise InvalidArgument("min_poly must be monic with integer coefficients and degree >= 1")
        if self.check:
            if self.poly_discriminant == 0:
                raise InvalidArgument("min_poly is not squarefree")
            if not is_irreducible_over_q(f):
                raise InvalidArgument(f"min_poly {list(f)} is reducible over Q")

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @cached_property
    def poly_discriminant(self) -> int:
        return poly_disc(self)

    def element(self, coords) -> FieldElement:
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def rational(self, x) -> FieldElement:
        return FieldElement(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))

    @property
    def generator(self) -> FieldElement:
        if self.degree == 1:
            return self.rational(-self.min_poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def __repr__(self):
        return f"NumberFieldOrder({list(self.min_poly)})"


def is_irreducible_over_q(f) -> bool:
    """Irreducibility of a monic integer polynomial.

    First tries a mod-p degree-pattern witness: any factor over Q has a degree
    that is a subset sum of the factor degrees mod every p.  Falls back to
    sympy's factorization over Z when no witness turns up.
    """
    n = len(f) - 1
    if n == 1:
        return True
    possible = set(range(1, n))
    for p in primes_up_to(300):
        degrees = []
        for g, m in poly_factor(PolyOverFp(p, f)):
            degrees += [g.degree] * m
        sums = {0}
        for d in degrees:
            sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return True
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f)), x).is_irreducible


def poly_disc(order: NumberFieldOrder) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f."""
    f = [Fraction(c) for c in order.min_poly]
    n = len(f) - 1
    if n == 1:
        return 1
    fp = [i * c for i, c in enumerate(f)][1:]
    res = _sylvester_resultant(f, fp)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return int(sign * res)


def _sylvester_resultant(f, g):
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return det(rows)


QQ = NumberFieldOrder((0, 1))


# -- elements -------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    owner: NumberFieldOrder
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.owner.degree:
            raise InvalidArgument(
                f"expected {self.owner.degree} coordinates, got {len(self.coords)}"
            )

    def _wrap(self, poly):
        _, r = _qdivmod(poly, self.owner.min_poly)
        r = list(r) + [Fraction(0)] * (self.owner.degree - len(r))
        return FieldElement(self.owner, tuple(r))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.owner.min_poly != self.owner.min_poly:
                raise InvalidArgument("elements of different fields")
            return other
        return self.owner.rational(other)

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.owner, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.owner, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self._wrap(_qmul(list(self.coords), list(other.coords)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.owner.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in Q[x]: s*a + t*f = 1
        a = _qtrim(self.coords)
        f = [Fraction(c) for c in self.owner.min_poly]
        r0, r1 = f, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        c = r1[0]
        return self._wrap([x / c for x in s1])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, FieldElement):
            return self.owner.min_poly == other.owner.min_poly and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.owner.min_poly, self.coords))

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        if self.owner.degree == 1:
            return True
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise InvalidArgument("element is not rational")
        if self.owner.degree == 1:
            return self.coords[0]
        return self.coords[0]

    def denominator(self) -> int:
        """Least positive N with N*self in Z[theta]."""
        return lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def __repr__(self):
        if self.owner.degree == 1:
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else ("*t" if i == 1 else f"*t^{i}")))
        return " + ".join(terms) or "0"


def minimal_polynomial(a: FieldElement) -> list:
    """Monic minimal polynomial of a over Q (constant term first, Fractions)."""
    n = a.owner.degree
    powers = [a.owner.rational(1).coords]
    x = a.owner.rational(1)
    for d in range(1, n + 1):
        x = x * a
        sol = _solve(powers, x.coords)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)]
        powers.append(x.coords)
    raise AssertionError("degree exceeded field degree")


def field_of(a: FieldElement) -> tuple[NumberFieldOrder, FieldElement]:
    """Present Q(a) on its own: returns (order of Z[N a], a in that order).

    The generator is theta = N a with N the least integer making the minimal
    polynomial of N a integral and monic.
    """
    m = minimal_polynomial(a)
    d = len(m) - 1
    if d == 1:
        return QQ, QQ.rational(-m[0])
    # minimal N with N^(d-k) m_k integral for all k
    N = 1
    while True:
        coeffs = [c * N ** (d - k) for k, c in enumerate(m)]
        if all(c.denominator == 1 for c in coeffs):
            break
        N += 1
    order = NumberFieldOrder(tuple(int(c) for c in coeffs))
    theta = order.generator
    return order, theta * Fraction(1, N)


# -- Dedekind criterion and splitting -----------------------------------------------


def _lift_product(p, polys):
    out = PolyOverFp(p, (1,))
    for g in polys:
        out = out * g
    return list(out.coeffs)


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=4096)
def _factor_mod(min_poly, p):
    return tuple((g, m) for g, m in poly_factor(PolyOverFp(p, min_poly)))


def dedekind_p_maximal(order: NumberFieldOrder, p: int) -> bool:
    """Dedekind's criterion: is Z[theta] maximal at p?"""
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    return _dedekind(order.min_poly, p)


@lru_cache(maxsize=4096)
def _dedekind(f, p):
    if poly_disc_cached(f) % p:
        return True
    factors = _factor_mod(f, p)
    g = _lift_product(p, [gi for gi, _ in factors])
    h = _lift_product(p, [gi**(e - 1) for gi, e in factors])
    gh = _int_mul(g, h)
    diff = [x - y for x, y in zip(gh, f)]
    if any(c % p for c in diff):
        raise AssertionError("lifts do not reduce to f mod p")
    F = PolyOverFp(p, [c // p for c in diff])
    if F.is_zero():
        return False
    common = poly_gcd(poly_gcd(F, PolyOverFp(p, g)), PolyOverFp(p, h))
    return common.degree == 0


@lru_cache(maxsize=256)
def poly_disc_cached(f):
    return poly_disc(NumberFieldOrder(f, check=False))


@dataclass(frozen=True)
class SplitFactor:
    """One prime of Z[theta] above p: (p, g(theta)) with g irreducible mod p."""

    e: int
    f: int
    residue_poly: tuple

    def as_dict(self):
        return {"e": self.e, "f": self.f, "residue_poly": list(self.residue_poly)}


@dataclass(frozen=True)
class PrimeSplittingData:
    p: int
    certified_maximal: bool
    factors: tuple

    @property
    def unramified(self):
        return all(s.e == 1 for s in self.factors)

    @property
    def max_local_degree(self):
        return max(s.e * s.f for s in self.factors)


def splitting_data(order: NumberFieldOrder, p: int) -> PrimeSplittingData:
    """Splitting of p read off from f mod p (requires p-maximality)."""
    if not dedekind_p_maximal(order, p):
        raise UnsupportedPrime(f"Z[theta] is not {p}-maximal for {list(order.min_poly)}")
    factors = tuple(
        SplitFactor(e=m, f=g.degree, residue_poly=g.coeffs) for g, m in _factor_mod(order.min_poly, p)
    )
    return PrimeSplittingData(p, True, factors)


def dv_of_extension(L: NumberFieldOrder, p: int) -> tuple[int, bool]:
    """max_w [L_w : Q_p] as (value, exact); falls back to [L:Q] when not p-maximal."""
    if L.degree == 1:
        return 1, True
    if dedekind_p_maximal(L, p):
        return splitting_data(L, p).max_local_degree, True
    return L.degree, False


# -- residue maps ---------------------------------------------------------------


class Place:
    """The prime (p, g(theta)) of a p-maximal order, with its reduction map.

    To reduce an element a that is integral at this prime but not at the
    other primes above p, multiply by t^M, where t = lift of f/g^e mod p is
    a unit here and lies in every other prime above p.
    """

    def __init__(self, order: NumberFieldOrder, p: int, factor: SplitFactor):
        self.order = order
        self.p = p
        self.factor = factor
        self.residue_field = ExtField(p, factor.residue_poly)
        co = PolyOverFp(p, (1,))
        for g, m in _factor_mod(order.min_poly, p):
            if g.coeffs != factor.residue_poly:
                co = co * g**m
        self._t = order.element(list(co.coeffs) + [0] * (order.degree - len(co.coeffs)))
        self._e_max = max(m for _, m in _factor_mod(order.min_poly, p))
        self._t_red = self._reduce_p_integral(self._t)

    @property
    def e(self):
        return self.factor.e

    @property
    def f(self):
        return self.factor.f

    def _reduce_p_integral(self, a: FieldElement):
        p = self.p
        return self.residue_field([_ratmod(c, p) for c in a.coords])

    def _clear(self, a: FieldElement):
        k = max((_vp(c.denominator, self.p) for c in a.coords), default=0)
        if k == 0:
            return a, 0
        M = k * self._e_max
        return a * self._t**M, M

    def is_integral(self, a: FieldElement) -> bool:
        b, _ = self._clear(a)
        return all(c.denominator % self.p for c in b.coords)

    def reduce(self, a: FieldElement):
        """Image of a in the residue field F_p[x]/(g)."""
        b, M = self._clear(a)
        if any(c.denominator % self.p == 0 for c in b.coords):
            raise InvalidArgument("element is not integral at this prime")
        red = self._reduce_p_integral(b)
        if M:
            K = self.residue_field
            red = K.mul(red, K.pow(K.inv(self._t_red), M))
        return red

    def __repr__(self):
        return f"Place(p={self.p}, g={list(self.factor.residue_poly)}, e={self.e}, f={self.f})"


def places_above(order: NumberFieldOrder, p: int) -> list[Place]:
    return [Place(order, p, s) for s in splitting_data(order, p).factors]


# -- bad set --------------------------------------------------------------------


@dataclass(frozen=True)
class BadSet:
    generating_integer: int
    primes: frozenset
    N: int = 0
    discriminant: int = 0
    index: int = 0

    def __contains__(self, p):
        return p in self.primes

    def as_dict(self):
        return {
            "generating_integer": self.generating_integer,
            "primes": sorted(self.primes),
            "N": self.N,
            "discriminant": self.discriminant,
            "index": self.index,
        }


def bad_set_S(j: FieldElement) -> BadSet:
    """A finite set of rational primes outside of which every supersingular
    prime of a curve with invariant j has residue degree 1 or 2.

    S consists of the primes dividing N * |disc| * [Z[theta] : Z[N j]], where
    N is the least common denominator of j's coordinates.  Since Z[theta]
    differs from the maximal order only at primes dividing disc(f), this is a
    superset of the set built from the maximal order.
    """
    if j.is_zero():
        raise InvalidArgument("bad_set_S needs j != 0")
    order = j.owner
    n = order.degree
    N = j.denominator()
    Nj = j * N
    rows = []
    x = order.rational(1)
    for _ in range(n):
        rows.append([int(c) for c in x.coords])
        x = x * Nj
    index = abs(det(rows))
    if index == 0:
        raise InvalidArgument("j does not generate the field; present it over Q(j)")
    index = int(index)
    D = order.poly_discriminant
    generating = N * abs(D) * index
    primes = set(sympy.factorint(generating)) if generating > 1 else set()
    for q in sympy.factorint(abs(D)) if abs(D) > 1 else ():
        if not dedekind_p_maximal(order, q):
            primes.add(q)
    return BadSet(generating, frozenset(primes), N=N, discriminant=D, index=index)


__all__ = [
    "BadSet",
    "FieldElement",
    "NumberFieldOrder",
    "Place",
    "PrimeSplittingData",
    "QQ",
    "SplitFactor",
    "bad_set_S",
    "dedekind_p_maximal",
    "det",
    "dv_of_extension",
    "field_of",
    "is_irreducible_over_q",
    "minimal_polynomial",
    "places_above",
    "poly_disc",
    "splitting_data",
]
