import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bogocert.algebra import (
    BigLogReal,
    ExtField,
    Int,
    PolyOverFp,
    Pow,
    PrimeFieldElement,
    Sum,
    canonical_quadratic,
    fp2,
    is_irreducible,
    is_prime,
    legendre_symbol,
    logspace_eval,
    poly_factor,
    poly_gcd,
    poly_resultant,
    primes_up_to,
    sqrt_mod,
    to_canonical_fp2,
)
from bogocert.errors import DomainError, InvalidArgument

from oracles import euler_criterion, has_root_or_quadratic_factor, sylvester_resultant_mod, sympy_factor_mod

SMALL_PRIMES = primes_up_to(97)


@pytest.mark.parametrize("a,p,expected", [(2, 7, 1), (2, 5, -1), (0, 13, 0)])
def test_legendre_examples(a, p, expected):
    assert legendre_symbol(a, p) == expected


@pytest.mark.parametrize("p", primes_up_to(200)[1:])
def test_legendre_matches_euler_criterion(p):
    assert all(legendre_symbol(a, p) == euler_criterion(a, p) for a in range(p))


@pytest.mark.parametrize("p", [2, 9, 1, -7, 15])
def test_legendre_rejects_non_odd_primes(p):
    with pytest.raises(InvalidArgument):
        legendre_symbol(3, p)


def test_primality_helpers_agree_with_sieve():
    sieve = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in sieve) for n in range(-3, 5001))
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@given(st.sampled_from(SMALL_PRIMES[1:]), st.integers(min_value=0, max_value=10**6))
def test_sqrt_mod_squares_back(p, a):
    a %= p
    if legendre_symbol(a, p) >= 0:
        r = sqrt_mod(a, p)
        assert r * r % p == a


def test_prime_field_element_arithmetic():
    x = PrimeFieldElement(12, 7)
    assert x.value == 5 and x == 5 and x == 12
    assert (x * x.inverse()) == 1
    assert -x == 2 and x + 3 == 1 and x - 6 == 6


@pytest.mark.parametrize(
    "p,expected",
    [
        (5, [((2, 1), 1), ((3, 1), 1)]),
        (2, [((1, 1), 2)]),
        (3, [((1, 0, 1), 1)]),
    ],
)
def test_factor_x2_plus_1(p, expected):
    got = [(g.coeffs, m) for g, m in poly_factor(PolyOverFp(p, (1, 0, 1)))]
    assert got == expected


def test_factor_rejects_zero():
    with pytest.raises(InvalidArgument):
        poly_factor(PolyOverFp(5, (0,)))


def _random_polys(count, seed=20240611):
    rng = random.Random(seed)
    for _ in range(count):
        p = rng.choice(SMALL_PRIMES)
        d = rng.randint(1, 6)
        coeffs = [rng.randrange(p) for _ in range(d)] + [rng.randrange(1, p)]
        yield p, tuple(coeffs)


def test_factorization_sample_against_sympy():
    for p, coeffs in _random_polys(500):
        f = PolyOverFp(p, coeffs)
        factors = poly_factor(f)
        prod = PolyOverFp(p, (1,))
        for g, m in factors:
            assert g.coeffs[-1] == 1
            prod = prod * g**m
        assert prod == f.monic()
        assert [(g.coeffs, m) for g, m in factors] == sympy_factor_mod(coeffs, p)


def test_factors_pass_exhaustive_irreducibility_check():
    for p, coeffs in _random_polys(150, seed=7):
        if p > 13:
            continue
        for g, _ in poly_factor(PolyOverFp(p, coeffs)):
            if g.degree <= 5:
                assert not has_root_or_quadratic_factor(g.coeffs, p)
            assert is_irreducible(g)


def test_factorization_is_deterministic():
    f = PolyOverFp(97, (5, 0, 3, 1, 0, 0, 1))
    assert poly_factor(f) == poly_factor(PolyOverFp(97, f.coeffs))


@pytest.mark.parametrize(
    "p,f,g,expected",
    [
        (7, (-2, 1), (-3, 1), 6),
        (5, (1, 0, 1), (1, 0, 1), 0),
        (5, (0, 1), (1, 1), 1),
    ],
)
def test_resultant_examples(p, f, g, expected):
    assert poly_resultant(PolyOverFp(p, f), PolyOverFp(p, g)) == expected


def test_resultant_matches_sylvester_and_gcd():
    polys = list(_random_polys(500, seed=99))
    for (p, f), (_, g) in zip(polys, polys[1:]):
        g = tuple(c % p for c in g)
        if not any(g[1:]):
            continue
        while g[-1] == 0:
            g = g[:-1]
        F, G = PolyOverFp(p, f), PolyOverFp(p, g)
        res = poly_resultant(F, G)
        assert res == sylvester_resultant_mod(F.coeffs, G.coeffs, p)
        assert (res == 0) == (poly_gcd(F, G).degree > 0)


def test_resultant_rejects_zero():
    with pytest.raises(InvalidArgument):
        poly_resultant(PolyOverFp(5, (0,)), PolyOverFp(5, (1, 1)))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_canonical_quadratic_is_minimal_irreducible(p):
    c0, c1, _ = canonical_quadratic(p)
    assert is_irreducible(PolyOverFp(p, (c0, c1, 1)))
    for a1 in range(c1 + 1):
        for a0 in range(p if a1 < c1 else c0):
            assert not is_irreducible(PolyOverFp(p, (a0, a1, 1)))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_fp2_field_axioms(p):
    K = fp2(p)
    elems = [K((a, b)) for a in range(p) for b in range(p)]
    nonzero = [x for x in elems if not K.is_zero(x)]
    assert all(K.mul(x, K.inv(x)) == K.one for x in nonzero)
    # the multiplicative group is cyclic of order p^2 - 1
    assert all(K.pow(x, p * p - 1) == K.one for x in nonzero)
    assert sum(1 for x in elems if K.in_subfield(x, 1)) == p


@pytest.mark.parametrize("p", [7, 11, 13, 19])
def test_presentation_change_is_a_field_map(p):
    dst = fp2(p)
    for c1 in range(p):
        for c0 in range(p):
            if legendre_symbol(c1 * c1 - 4 * c0, p) == -1 and (c0, c1, 1) != dst.modulus:
                src = ExtField(p, (c0, c1, 1))
                break
        else:
            continue
        break
    rng = random.Random(p)
    for _ in range(50):
        a = src((rng.randrange(p), rng.randrange(p)))
        b = src((rng.randrange(p), rng.randrange(p)))
        phi = lambda z: to_canonical_fp2(src, z)  # noqa: E731
        assert phi(src.mul(a, b)) == dst.mul(phi(a), phi(b))
        assert phi(src.add(a, b)) == dst.add(phi(a), phi(b))


def test_logspace_examples():
    with mpmath.workdps(60):
        ref = 361 * mpmath.log(4)
        big = logspace_eval(Pow(Int(4), 361), 50)
        assert abs(big.ln - ref) < mpmath.mpf(10) ** -45
        assert str(big.ln).startswith("500.452")
        assert logspace_eval(Int(1)).ln == 0
        plus = logspace_eval(Sum(Pow(Int(4), 361), Int(1)), 300)
        with mpmath.workdps(300):
            diff = plus.ln - 361 * mpmath.log(4)
            assert 0 < diff < mpmath.mpf(10) ** -217


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=100), st.integers(min_value=1, max_value=10**6))
def test_logspace_exact_on_pure_powers(a, b):
    got = logspace_eval(Pow(Int(a), b), 64).ln
    with mpmath.workdps(80):
        ref = b * mpmath.log(a)
        assert abs(got - ref) <= mpmath.mpf(10) ** -20 * abs(ref)


def test_logspace_rejects_nonpositive():
    with pytest.raises(DomainError):
        logspace_eval(Int(0))
    with pytest.raises(DomainError):
        logspace_eval(Pow(Int(-3), 2))


def test_biglogreal_arithmetic():
    two, three = logspace_eval(Int(2)), logspace_eval(Int(3))
    with mpmath.workdps(60):
        assert abs((two * three).ln - mpmath.log(6)) < mpmath.mpf(10) ** -55
        assert abs((two + three).ln - mpmath.log(5)) < mpmath.mpf(10) ** -55
        assert abs((three / two).ln - mpmath.log(1.5)) < mpmath.mpf(10) ** -55
        assert abs((two**10).ln - mpmath.log(1024)) < mpmath.mpf(10) ** -55
    zero = BigLogReal.zero()
    assert zero.sign == 0 and two.sign == 1
    assert zero < two and two < three and not three < two
    assert (zero + two).ln == two.ln
    with pytest.raises(DomainError):
        zero.log10
