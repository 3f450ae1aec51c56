"""Positive reals carried by their natural logarithm at arbitrary precision.

Height bounds such as 1/(4^(p^2 d) + 1) underflow every fixed-width float,
so they are represented here only through ``ln`` (an mpmath ``mpf``).
Expressions over integers are built from :class:`Int`, :class:`Pow`,
:class:`Prod`, :class:`Quot` and :class:`Sum` and evaluated with
:func:`logspace_eval`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import DomainError, InvalidArgument

DEFAULT_DPS = 64


@dataclass(frozen=True)
class BigLogReal:
    """A real number x >= 0 stored as ln(x); ``ln is None`` encodes zero."""

    ln: mpmath.mpf | None
    dps: int = DEFAULT_DPS

    @classmethod
    def zero(cls, dps=DEFAULT_DPS):
        return cls(None, dps)

    @property
    def is_zero(self):
        return self.ln is None

    @property
    def sign(self):
        return 0 if self.is_zero else 1

    @property
    def log10(self):
        if self.is_zero:
            raise DomainError("log10 of zero")
        with mpmath.workdps(self.dps):
            return self.ln / mpmath.ln(10)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return BigLogReal.zero(min(self.dps, other.dps))
        with mpmath.workdps(min(self.dps, other.dps)):
            return BigLogReal(self.ln + other.ln, min(self.dps, other.dps))

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero")
        if self.is_zero:
            return self
        with mpmath.workdps(min(self.dps, other.dps)):
            return BigLogReal(self.ln - other.ln, min(self.dps, other.dps))

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        dps = min(self.dps, other.dps)
        with mpmath.workdps(dps):
            return BigLogReal(log_sum_exp(self.ln, other.ln), dps)

    def __pow__(self, e):
        if self.is_zero:
            if e > 0:
                return self
            raise DomainError("zero to a nonpositive power")
        with mpmath.workdps(self.dps):
            return BigLogReal(self.ln * e, self.dps)

    def __lt__(self, other):
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        return self.ln < other.ln

    def ln_str(self, digits=None):
        return _fmt(self.ln, digits or self.dps - 4)

    def log10_str(self, digits=None):
        return _fmt(self.log10, digits or self.dps - 4)


def _fmt(x, digits):
    return mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def log_sum_exp(a, b):
    """ln(e^a + e^b) without overflow or cancellation."""
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + mpmath.log1p(mpmath.exp(lo - hi))


# -- integer expressions -----------------------------------------------------


class Expr:
    def __mul__(self, other):
        return Prod((self, _lift(other)))

    def __truediv__(self, other):
        return Quot(self, _lift(other))

    def __add__(self, other):
        return Sum(self, _lift(other))

    def __pow__(self, e):
        return Pow(self, e)


def _lift(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, int):
        return Int(x)
    raise TypeError(f"cannot use {type(x).__name__} in a log-space expression")


@dataclass(frozen=True)
class Int(Expr):
    n: int


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int | Fraction


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple


@dataclass(frozen=True)
class Quot(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class Sum(Expr):
    """Sum of two positive terms."""

    left: Expr
    right: Expr


def _ln(expr):
    if isinstance(expr, Int):
        if expr.n <= 0:
            raise DomainError(f"nonpositive leaf {expr.n}")
        return mpmath.log(expr.n)
    if isinstance(expr, Pow):
        e = expr.exponent
        e = mpmath.mpf(e.numerator) / e.denominator if isinstance(e, Fraction) else mpmath.mpf(e)
        return e * _ln(expr.base)
    if isinstance(expr, Prod):
        return mpmath.fsum(_ln(f) for f in expr.factors)
    if isinstance(expr, Quot):
        return _ln(expr.num) - _ln(expr.den)
    if isinstance(expr, Sum):
        return log_sum_exp(_ln(expr.left), _ln(expr.right))
    raise InvalidArgument(f"unknown expression node {expr!r}")


def logspace_eval(expr, dps: int = DEFAULT_DPS) -> BigLogReal:
    """Evaluate a positive integer expression to a :class:`BigLogReal`.

    >>> round(float(logspace_eval(Int(4) ** 361).ln), 3)
    500.452
    """
    expr = _lift(expr)
    # guard digits absorb cancellation in Quot and the log1p tail of Sum
    with mpmath.workdps(dps + 10):
        value = _ln(expr)
    with mpmath.workdps(dps):
        return BigLogReal(+value, dps)
