import random
from fractions import Fraction

import pytest
import sympy

from bogocert.algebra import primes_up_to
from bogocert.errors import InvalidArgument, UnsupportedPrime
from bogocert.numfield import (
    QQ,
    NumberFieldOrder,
    bad_set_S,
    dedekind_p_maximal,
    dv_of_extension,
    field_of,
    minimal_polynomial,
    places_above,
    poly_disc,
    splitting_data,
)

TEST_FIELDS = [(1, 0, 1), (-5, 0, 1), (-1, -1, 1), (-1, -1, 0, 1), (-2, 0, 0, 1), (5, 0, 0, 0, 1), (1, 1, 1, 1, 1)]


@pytest.mark.parametrize("poly,disc", [((1, 0, 1), -4), ((-1, -1, 1), 5), ((0, 1), 1)])
def test_poly_disc_examples(poly, disc):
    assert poly_disc(NumberFieldOrder(poly)) == disc


@pytest.mark.parametrize("poly", TEST_FIELDS)
def test_poly_disc_matches_sympy(poly):
    x = sympy.Symbol("x")
    assert poly_disc(NumberFieldOrder(poly)) == sympy.discriminant(sympy.Poly(list(reversed(poly)), x))


@pytest.mark.parametrize("poly", [(0, 0, 1), (-1, 0, 1), (2, 3, 1), (1, 0, 2), (4, 0, 0, 0, 1)])
def test_order_rejects_bad_polynomials(poly):
    with pytest.raises(InvalidArgument):
        NumberFieldOrder(poly)


@pytest.mark.parametrize("poly,p,expected", [((1, 0, 1), 2, True), ((-5, 0, 1), 2, False), ((1, 0, 1), 5, True)])
def test_dedekind_examples(poly, p, expected):
    assert dedekind_p_maximal(NumberFieldOrder(poly), p) is expected


def test_dedekind_quadratic_closed_form():
    rng = random.Random(4)
    seen = set()
    while len(seen) < 50:
        m = rng.randint(-500, 500)
        if m in (0, 1) or m in seen or not sympy.ntheory.factorint(abs(m)) or any(
            e > 1 for e in sympy.factorint(abs(m)).values()
        ):
            continue
        seen.add(m)
        order = NumberFieldOrder((-m, 0, 1))
        assert dedekind_p_maximal(order, 2) is (m % 4 != 1)
        for q in sympy.primefactors(abs(m)):
            assert dedekind_p_maximal(order, q)


@pytest.mark.parametrize(
    "p,expected",
    [(5, [(1, 1), (1, 1)]), (2, [(2, 1)]), (3, [(1, 2)])],
)
def test_splitting_of_gaussian_integers(gaussian, p, expected):
    data = splitting_data(gaussian, p)
    assert [(s.e, s.f) for s in data.factors] == expected
    assert data.certified_maximal


def test_splitting_refuses_non_maximal_primes():
    with pytest.raises(UnsupportedPrime):
        splitting_data(NumberFieldOrder((-5, 0, 1)), 2)


@pytest.mark.parametrize("poly", TEST_FIELDS)
def test_sum_ef_equals_degree(poly):
    order = NumberFieldOrder(poly)
    for p in primes_up_to(500):
        if not dedekind_p_maximal(order, p):
            continue
        data = splitting_data(order, p)
        assert sum(s.e * s.f for s in data.factors) == order.degree
        if order.poly_discriminant % p:
            assert data.unramified


@pytest.mark.parametrize("L,p,expected", [((0, 1), 7, (1, True)), ((1, 0, 1), 5, (1, True)), ((1, 0, 1), 3, (2, True))])
def test_dv_examples(L, p, expected):
    assert dv_of_extension(NumberFieldOrder(L), p) == expected


def test_dv_fallback_is_the_degree():
    assert dv_of_extension(NumberFieldOrder((-5, 0, 1)), 2) == (2, False)


def test_field_arithmetic(gaussian):
    i = gaussian.generator
    assert i * i == -1
    z = 3 + 4 * i
    assert z * z.inverse() == 1
    assert (z / (1 + i)) * (1 + i) == z
    assert minimal_polynomial(z) == [Fraction(25), Fraction(-6), Fraction(1)]
    assert minimal_polynomial(gaussian.rational(Fraction(3, 2))) == [Fraction(-3, 2), Fraction(1)]


def test_field_of_presents_the_subfield():
    K = NumberFieldOrder((5, 0, 0, 0, 1))  # Q(5^(1/4)... up to sign)
    t = K.generator
    order, a = field_of(t * t / 3)
    assert order.degree == 2
    assert minimal_polynomial(a) == minimal_polynomial(t * t / 3)
    assert field_of(K.rational(7))[0] == QQ


def test_bad_set_examples(gaussian):
    assert bad_set_S(QQ.rational(Fraction(1, 2))).primes == {2}
    assert bad_set_S(QQ.rational(5)).primes == frozenset()
    i = gaussian.generator
    S = bad_set_S(2**14 / (i - 4))
    assert S.primes == {2, 17}
    assert (S.N, S.discriminant, S.index) == (17, -4, 2**14)
    assert S.generating_integer == 17 * 4 * 2**14


def test_bad_set_over_q_is_the_denominator():
    rng = random.Random(12)
    for _ in range(100):
        j = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**5))
        assert bad_set_S(QQ.rational(j)).primes == set(sympy.primefactors(j.denominator))


def test_bad_set_needs_nonzero_generator(gaussian):
    with pytest.raises(InvalidArgument):
        bad_set_S(QQ.rational(0))
    with pytest.raises(InvalidArgument):
        bad_set_S(gaussian.rational(3))


@pytest.mark.parametrize("poly", TEST_FIELDS[:5])
def test_place_reduction_is_a_ring_map(poly):
    order = NumberFieldOrder(poly)
    rng = random.Random(sum(poly))
    n = order.degree
    for p in [5, 7, 11, 13, 17]:
        if not dedekind_p_maximal(order, p):
            continue
        for place in places_above(order, p):
            K = place.residue_field
            for _ in range(20):
                a = order.element([Fraction(rng.randint(-50, 50), rng.choice([1, 2, 3])) for _ in range(n)])
                b = order.element([rng.randint(-50, 50) for _ in range(n)])
                assert K.mul(place.reduce(a), place.reduce(b)) == place.reduce(a * b)
                assert K.add(place.reduce(a), place.reduce(b)) == place.reduce(a + b)


def test_place_handles_elements_integral_only_at_one_prime(gaussian):
    i = gaussian.generator
    j = 2**14 / (i - 4)  # denominator 17, but i - 4 lies in just one prime above 17
    places = places_above(gaussian, 17)
    integral = [pl.is_integral(j) for pl in places]
    assert sorted(integral) == [False, True]
    good = places[integral.index(True)]
    jt = good.reduce(j)
    K = good.residue_field
    assert K.mul(jt, good.reduce(i - 4)) == K(2**14)
