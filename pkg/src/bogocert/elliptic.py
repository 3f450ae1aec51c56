"""Weierstrass models over number fields, reduction, and supersingularity."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .algebra import poly as P
from .algebra.ffield import ExtField, PrimeField
from .algebra.modp import PrimeFieldElement, inv_mod
from .algebra.poly import PolyOverFp
from .errors import (
    BudgetExceeded,
    InvalidArgument,
    PotentiallyMultiplicative,
    SingularModel,
    UnsupportedCharacteristic,
)
from .numfield import QQ, FieldElement, NumberFieldOrder, Place

POINT_COUNT_LIMIT = 10**6

# class-number-one CM j-invariants and their discriminants
CM_J_INVARIANTS = {
    0: -3,
    54000: -12,
    -12288000: -27,
    1728: -4,
    287496: -16,
    -3375: -7,
    16581375: -28,
    8000: -8,
    -32768: -11,
    -884736: -19,
    -884736000: -43,
    -147197952000: -67,
    -262537412640768000: -163,
}


@dataclass(frozen=True)
class CurveModel:
    """Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    field: NumberFieldOrder
    a: tuple

    def __post_init__(self):
        if len(self.a) != 5:
            raise InvalidArgument("need five a-invariants")
        object.__setattr__(self, "a", tuple(self._coerce(x) for x in self.a))
        if self.discriminant.is_zero():
            raise SingularModel("model has zero discriminant", field="a_invariants")

    def _coerce(self, x):
        if not isinstance(x, FieldElement):
            return self.field.rational(x)
        if x.owner == self.field:
            return x
        if x.owner.degree == 1:
            return self.field.rational(x.coords[0])
        raise InvalidArgument("coefficient lies in a different number field")

    @classmethod
    def over_q(cls, a1, a2, a3, a4, a6):
        return cls(QQ, (a1, a2, a3, a4, a6))

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + a2 * 4
        b4 = a4 * 2 + a1 * a3
        b6 = a3 * a3 + a6 * 4
        b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self):
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - b4 * 24

    @property
    def c6(self):
        b2, b4, b6, _ = self.b_invariants
        return -(b2 * b2 * b2) + b2 * b4 * 36 - b6 * 216

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    @property
    def j(self):
        return j_invariant(self)

    def short_coefficients(self):
        """(A, B) with y^2 = x^3 + A x + B isomorphic over the base field."""
        return self.c4 * (-27), self.c6 * (-54)

    def is_rational(self):
        return all(x.is_rational() for x in self.a)

    def __repr__(self):
        return f"CurveModel({list(self.field.min_poly)}, {list(self.a)})"


def j_invariant(model: CurveModel) -> FieldElement:
    disc = model.discriminant
    if disc.is_zero():
        raise SingularModel("model has zero discriminant")
    c4 = model.c4
    return c4 * c4 * c4 / disc


def canonical_model_from_j(j: FieldElement) -> CurveModel:
    K = j.owner
    if j == 0:
        return CurveModel(K, (0, 0, 1, 0, 0))
    if j == 1728:
        return CurveModel(K, (0, 0, 0, 1, 0))
    t = (j - 1728).inverse()
    return CurveModel(K, (K.rational(1), 0, 0, t * (-36), -t))


# -- reduction -----------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedCurve:
    """y^2 = x^3 + a x + b over a residue field F_p[x]/(g) (characteristic > 3)."""

    field: ExtField
    a: tuple
    b: tuple
    good_reduction: bool
    scaling: int = 0

    @property
    def p(self):
        return self.field.p

    @property
    def q(self):
        return self.field.order

    @property
    def j(self):
        K = self.field
        a3 = K.mul(K.mul(self.a, self.a), self.a)
        num = K.mul(K(6912), a3)
        den = K.add(K.mul(K(4), a3), K.mul(K(27), K.mul(self.b, self.b)))
        return K.mul(num, K.inv(den))

    @classmethod
    def over_fp(cls, a, b, p):
        K = ExtField(p, (0, 1))
        a, b = K(a), K(b)
        disc = (4 * a[0] ** 3 + 27 * b[0] ** 2) % p
        return cls(K, a, b, disc != 0)


def _reduce_rational(x: Fraction, p: int) -> int:
    return x.numerator * inv_mod(x.denominator, p) % p


def reduce_at_prime(model: CurveModel, place: Place) -> ReducedCurve:
    """Short-Weierstrass reduction of the model at a prime of its base field.

    Coefficients are made integral at the prime by the substitution
    (x, y) -> (p^2 x, p^3 y), using the least power that suffices.
    """
    p = place.p
    if p <= 3:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported")
    if not place.is_integral(model.j):
        raise PotentiallyMultiplicative(f"j is not integral at {place}")
    A, B = model.short_coefficients()
    k = 0
    while not (place.is_integral(A) and place.is_integral(B)):
        k += 1
        A, B = A * p**4, B * p**6
    K = place.residue_field
    a, b = place.reduce(A), place.reduce(B)
    disc = K.add(K.mul(K(4), K.mul(K.mul(a, a), a)), K.mul(K(27), K.mul(b, b)))
    return ReducedCurve(K, a, b, not K.is_zero(disc), k)


def reduce_rational_model(model: CurveModel, p: int) -> ReducedCurve | None:
    """Fast reduction for models over Q; None when j is not p-integral."""
    if p <= 3:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported")
    A, B = (x.to_rational() for x in model.short_coefficients())
    j = model.j.to_rational()
    if j.denominator % p == 0:
        return None
    k = 0
    while A.denominator % p == 0 or B.denominator % p == 0:
        k += 1
        A, B = A * p**4, B * p**6
    red = ReducedCurve.over_fp(_reduce_rational(A, p), _reduce_rational(B, p), p)
    return replace(red, scaling=k)


# -- point counting and supersingularity ------------------------------------------------


@lru_cache(maxsize=64)
def _chi_table(p):
    x = np.arange(p, dtype=np.int64)
    table = np.full(p, -1, dtype=np.int64)
    table[(x * x) % p] = 1
    table[0] = 0
    return table


def trace_of_frobenius(curve: ReducedCurve) -> int:
    """a = q + 1 - #E(F_q) by enumerating x-coordinates (q = p or p^2)."""
    if not curve.good_reduction:
        raise InvalidArgument("trace_of_frobenius needs good reduction")
    q = curve.q
    if q > POINT_COUNT_LIMIT:
        raise BudgetExceeded(f"q = {q} exceeds the point-count limit {POINT_COUNT_LIMIT}")
    p = curve.p
    chi = _chi_table(p)
    if curve.field.degree == 1:
        a, b = curve.a[0], curve.b[0]
        x = np.arange(p, dtype=np.int64)
        rhs = ((x * x % p) * x + a * x + b) % p
        t = -int(chi[rhs].sum())
    elif curve.field.degree == 2:
        t = -_fp2_char_sum(curve)
    else:
        raise InvalidArgument("point counting only over F_p and F_p^2")
    if t * t > 4 * q:
        raise AssertionError(f"Hasse bound violated: a = {t}, q = {q}")
    return t


def _fp2_char_sum(curve):
    p = curve.p
    c0, c1, _ = curve.field.modulus
    grid = np.arange(p, dtype=np.int64)
    x0 = np.repeat(grid, p)
    x1 = np.tile(grid, p)

    def mul(u0, u1, v0, v1):
        # theta^2 = -c0 - c1 theta
        w2 = u1 * v1 % p
        r0 = (u0 * v0 - c0 * w2) % p
        r1 = (u0 * v1 + u1 * v0 - c1 * w2) % p
        return r0, r1

    s0, s1 = mul(x0, x1, x0, x1)
    t0, t1 = mul(s0, s1, x0, x1)
    a0, a1 = curve.a
    b0, b1 = curve.b
    u0, u1 = mul(x0, x1, np.int64(a0), np.int64(a1))
    r0 = (t0 + u0 + b0) % p
    r1 = (t1 + u1 + b1) % p
    norm = (r0 * r0 - c1 * (r0 * r1 % p) + c0 * (r1 * r1 % p)) % p
    return int(_chi_table(p)[norm].sum())


def hasse_invariant(curve: ReducedCurve) -> PrimeFieldElement:
    """Coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2).

    Terms come from x^(3i) (a x)^j b^k with i + j + k = m and 3i + j = 2m,
    so only i in [m/2, 2m/3] contribute.
    """
    p = curve.p
    if p <= 3:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported")
    if curve.field.degree != 1:
        raise InvalidArgument("hasse_invariant is defined here over F_p only")
    a, b = curve.a[0], curve.b[0]
    m = (p - 1) // 2
    fact = [1] * (m + 1)
    for i in range(1, m + 1):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [1] * (m + 1)
    inv_fact[m] = pow(fact[m], p - 2, p)
    for i in range(m, 0, -1):
        inv_fact[i - 1] = inv_fact[i] * i % p
    total = 0
    for i in range((m + 1) // 2, 2 * m // 3 + 1):
        j = 2 * m - 3 * i
        k = 2 * i - m
        if j < 0 or k < 0:
            continue
        term = fact[m] * inv_fact[i] % p * inv_fact[j] % p * inv_fact[k] % p
        total = (total + term * pow(a, j, p) * pow(b, k, p)) % p
    return PrimeFieldElement(total, p)


@lru_cache(maxsize=None)
def _hasse_legendre(p):
    """H_p(lambda) = sum C(m, i)^2 lambda^i mod p."""
    m = (p - 1) // 2
    return tuple(comb(m, i) ** 2 % p for i in range(m + 1))


def _legendre_j_relation(K, j):
    """j lambda^2 (lambda - 1)^2 - 256 (lambda^2 - lambda + 1)^3 over K."""
    const = [-256, 768, -1536, 1792, -1536, 768, -256]
    jpart = [0, 0, 1, -2, 1, 0, 0]
    return P.trim(K, [K.add(K(c), K.mul(K(d), j)) for c, d in zip(const, jpart)])


def _ss_resultant(K, j):
    H = [K(c) for c in _hasse_legendre(K.p)]
    return P.resultant(K, H, _legendre_j_relation(K, j))


def is_supersingular_j(j_res, K) -> bool:
    """Is the residue value ``j_res`` (an element of the field K) supersingular?

    Supersingular j-invariants lie in F_p^2, and j is supersingular exactly
    when some Legendre parameter lambda over j is a root of H_p, i.e. when
    Res_lambda(H_p, j lambda^2 (lambda-1)^2 - 256 (lambda^2-lambda+1)^3) = 0.
    """
    if isinstance(K, int):
        K = PrimeField(K)
        j_res = K(j_res)
    p = K.p
    if p <= 3:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported")
    if K.degree > 2 and not K.in_subfield(j_res, 2):
        return False
    return K.is_zero(_ss_resultant(K, j_res))


@lru_cache(maxsize=None)
def supersingular_polynomial(p: int) -> PolyOverFp:
    """ss_p(J): the monic squarefree polynomial whose roots are the
    supersingular j-invariants in characteristic p.

    Built as the radical of R(J) = Res_lambda(H_p, J lambda^2 (lambda-1)^2 -
    256 (lambda^2-lambda+1)^3), with R recovered by interpolation at
    J = 0, ..., m.
    """
    if p <= 3:
        raise UnsupportedCharacteristic(f"characteristic {p} is not supported")
    K = PrimeField(p)
    m = (p - 1) // 2
    xs = list(range(m + 1))
    ys = [_ss_resultant(K, x) for x in xs]
    R = _interpolate(K, xs, ys)
    dR = P.derivative(K, R)
    radical = P.divmod_(K, R, P.gcd(K, R, dR))[0]
    return PolyOverFp(p, P.monic(K, radical))


def _interpolate(K, xs, ys):
    out = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [K.one]
        denom = K.one
        for k, xk in enumerate(xs):
            if k != i:
                basis = P.mul(K, basis, [K.neg(xk), K.one])
                denom = K.mul(denom, K.sub(xi, xk))
        out = P.add(K, out, P.scale(K, basis, K.mul(yi, K.inv(denom))))
    return out


def supersingular_count_formula(p: int) -> int:
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


# -- CM ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CMStatus:
    """``has_cm`` is None when it could not be decided (irrational j)."""

    has_cm: bool | None
    discriminant: int | None = None
    note: str = ""


def cm_lookup(j: FieldElement) -> CMStatus:
    if not j.is_rational():
        return CMStatus(None, None, "j is irrational; CM detection beyond rational j is not attempted")
    r = j.to_rational()
    if r.denominator == 1 and r.numerator in CM_J_INVARIANTS:
        return CMStatus(True, CM_J_INVARIANTS[r.numerator])
    return CMStatus(False)


def is_supersingular_at(model: CurveModel, place: Place) -> bool | None:
    """Supersingular reduction of the supplied model at the place.

    None when the model does not have good reduction there.
    """
    red = reduce_at_prime(model, place)
    if not red.good_reduction:
        return None
    if red.field.degree == 1:
        return hasse_invariant(red).value == 0
    return is_supersingular_j(red.j, red.field)


__all__ = [
    "CMStatus",
    "CM_J_INVARIANTS",
    "CurveModel",
    "ReducedCurve",
    "canonical_model_from_j",
    "cm_lookup",
    "hasse_invariant",
    "is_supersingular_at",
    "is_supersingular_j",
    "j_invariant",
    "reduce_at_prime",
    "reduce_rational_model",
    "supersingular_count_formula",
    "supersingular_polynomial",
    "trace_of_frobenius",
]
