import pytest

from bogocert.algebra import legendre_symbol, primes_between
from bogocert.elliptic import CurveModel, ReducedCurve, reduce_rational_model, trace_of_frobenius
from bogocert.errors import InvalidArgument
from bogocert.galois import (
    EXCEPTIONAL,
    NEUTRAL,
    NONSPLIT,
    SPLIT,
    ImageVerdict,
    classify_charpoly,
    condition_v,
    descend_condition_ii,
    frobenius_samples,
    sl2_containment,
)

from oracles import brute_force_count

X11 = CurveModel.over_q(0, -1, 1, -10, -20)


def test_classify_examples():
    assert NONSPLIT in classify_charpoly(1, 3, 7)
    assert SPLIT in classify_charpoly(3, 2, 7)
    assert EXCEPTIONAL not in classify_charpoly(0, 5, 7)


def test_classify_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        classify_charpoly(1, 7, 7)
    with pytest.raises(InvalidArgument):
        classify_charpoly(1, 2, 3)


@pytest.mark.parametrize("p", primes_between(5, 97))
def test_classify_exhaustive_against_direct_arithmetic(p):
    for t in range(p):
        for d in range(1, p):
            disc = (t * t - 4 * d) % p
            is_square = any(x * x % p == disc for x in range(1, p))
            u = t * t * pow(d, p - 2, p) % p
            expected = set()
            if disc and not is_square and t:
                expected.add(NONSPLIT)
            if disc and is_square and t:
                expected.add(SPLIT)
            if u not in (0, 1, 2, 4) and (u * u - 3 * u + 1) % p:
                expected.add(EXCEPTIONAL)
            assert classify_charpoly(t, d, p) == (frozenset(expected) or {NEUTRAL})


def test_x11_contains_sl2_at_7():
    verdict = sl2_containment(X11, 7, 200)
    assert verdict.contains_sl2
    for label, sample in verdict.witnesses.items():
        assert label in classify_charpoly(sample.trace, sample.det, 7)
        red = reduce_rational_model(X11, sample.ell)
        a, b = red.a[0], red.b[0]
        assert sample.trace == sample.ell + 1 - brute_force_count(a, b, sample.ell)
        assert sample.trace**2 <= 4 * sample.ell


def test_witnesses_are_minimal_ell():
    verdict = sl2_containment(X11, 7, 200)
    seen = {}
    for s in frobenius_samples(X11, 7, 200):
        for label in classify_charpoly(s.trace, s.det, 7):
            seen.setdefault(label, s.ell)
    for label, sample in verdict.witnesses.items():
        assert sample.ell == seen[label]


def test_x11_inconclusive_at_5():
    verdict = sl2_containment(X11, 5, 500)
    assert verdict.status == "inconclusive"
    assert verdict.witnesses.nonsplit_witness is None


def test_cm_curve_inconclusive_at_7():
    assert sl2_containment(CurveModel.over_q(0, 0, 0, 1, 0), 7, 500).status == "inconclusive"


def test_frobenius_samples_skip_bad_primes_and_p():
    ells = [s.ell for s in frobenius_samples(X11, 7, 60)]
    assert 11 not in ells and 7 not in ells and 5 in ells


def test_verdict_is_deterministic():
    assert sl2_containment(X11, 13, 300) == sl2_containment(X11, 13, 300)


def test_sampling_over_quadratic_base(qi_model):
    verdict = sl2_containment(qi_model, 11, 300)
    for _, s in verdict.witnesses.items():
        if s is not None:
            assert len(s.place) == 2 and s.ell % 4 == 1


@pytest.mark.parametrize(
    "status,p,deg,dv,expected",
    [
        ("contains_SL2", 7, 2, 1, "holds"),
        ("contains_SL2", 7, 8, 1, "inconclusive"),
        ("inconclusive", 101, 1, 1, "inconclusive"),
        ("contains_SL2", 7, 1, 4, "inconclusive"),
    ],
)
def test_descent_rule(status, p, deg, dv, expected):
    assert descend_condition_ii(ImageVerdict(status, None, 0), p, deg, dv) == expected


@pytest.mark.parametrize(
    "ii,unram,expected",
    [("holds", True, "holds"), ("holds", False, "inconclusive"), ("inconclusive", True, "inconclusive")],
)
def test_condition_v(ii, unram, expected):
    assert condition_v(ii, unram) == expected


def test_legendre_used_by_classifier_is_consistent():
    # the classifier's discriminant test and the Legendre symbol agree
    for t in range(11):
        labels = classify_charpoly(t, 3, 11)
        chi = legendre_symbol(t * t - 12, 11)
        assert (NONSPLIT in labels) == (chi == -1 and t != 0)


def test_sample_trace_oracle_on_small_curve():
    red = ReducedCurve.over_fp(2, 3, 101)
    assert trace_of_frobenius(red) == 102 - brute_force_count(2, 3, 101)
