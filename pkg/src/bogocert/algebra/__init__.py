"""Exact finite-field arithmetic, polynomials over F_p, and log-space reals."""

from .ffield import ExtField, PrimeField, canonical_quadratic, fp2, to_canonical_fp2
from .logspace import BigLogReal, Int, Pow, Prod, Quot, Sum, logspace_eval
from .modp import (
    PrimeFieldElement,
    inv_mod,
    is_prime,
    legendre_symbol,
    primes_between,
    primes_up_to,
    sqrt_mod,
)
from .poly import PolyOverFp, is_irreducible, poly_factor, poly_gcd, poly_resultant

__all__ = [
    "BigLogReal",
    "ExtField",
    "Int",
    "PolyOverFp",
    "Pow",
    "PrimeField",
    "PrimeFieldElement",
    "Prod",
    "Quot",
    "Sum",
    "canonical_quadratic",
    "fp2",
    "inv_mod",
    "is_irreducible",
    "is_prime",
    "legendre_symbol",
    "logspace_eval",
    "poly_factor",
    "poly_gcd",
    "poly_resultant",
    "primes_between",
    "primes_up_to",
    "sqrt_mod",
    "to_canonical_fp2",
]
