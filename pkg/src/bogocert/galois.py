"""One-sided certificates that the mod-p Galois image contains SL_2(F_p).

A subgroup G of GL_2(F_p), p >= 5, contains SL_2(F_p) as soon as it has

* an element with irreducible characteristic polynomial and nonzero trace
  (so G lies in no Borel and no split-Cartan normalizer),
* an element with distinct F_p-rational eigenvalues and nonzero trace
  (so G lies in no nonsplit-Cartan normalizer), and
* an element whose projective order exceeds 5, detected by
  u = t^2/d outside {0, 1, 2, 4} and u^2 - 3u + 1 != 0
  (so the projective image is not A_4, S_4 or A_5).

Frobenius elements at good primes supply (t, d) = (a_l, l) samples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.modp import is_prime, legendre_symbol, primes_up_to
from .elliptic import CurveModel, reduce_at_prime, reduce_rational_model, trace_of_frobenius
from .errors import InvalidArgument, PotentiallyMultiplicative, UnsupportedPrime
from .numfield import places_above

NONSPLIT = "nonsplit"
SPLIT = "split"
EXCEPTIONAL = "exceptional_excluder"
NEUTRAL = "neutral"

INDEX_LEMMA = (
    "the image over L has index <= [L:K_E] in the image over K_E, and "
    "SL_2(F_p) has no proper subgroup of index < p for p >= 5"
)
DETERMINANT_LEMMA = (
    "Q(zeta_p)/Q is totally ramified at p, so p unramified in L forces the "
    "cyclotomic determinant to stay surjective over L; SL_2 containment plus "
    "surjective determinant gives all of GL_2(F_p)"
)


def classify_charpoly(t: int, d: int, p: int) -> frozenset:
    """Labels satisfied by x^2 - t x + d mod p."""
    if p <= 3 or not is_prime(p):
        raise InvalidArgument(f"classify_charpoly needs a prime p > 3, got {p}")
    if d % p == 0:
        raise InvalidArgument("determinant divisible by p")
    t %= p
    labels = set()
    disc = (t * t - 4 * d) % p
    chi = legendre_symbol(disc, p)
    if chi == -1 and t:
        labels.add(NONSPLIT)
    if chi == 1 and t:
        labels.add(SPLIT)
    u = t * t * pow(d, -1, p) % p
    if u not in (0, 1, 2, 4) and (u * u - 3 * u + 1) % p:
        labels.add(EXCEPTIONAL)
    return frozenset(labels) or frozenset({NEUTRAL})


@dataclass(frozen=True)
class FrobeniusSample:
    ell: int
    trace: int
    det: int
    place: tuple = ()

    def as_dict(self, label=None):
        d = {"ell": self.ell, "trace": self.trace, "det": self.det}
        if self.place:
            d["place"] = list(self.place)
        if label:
            d["label"] = label
        return d


@dataclass(frozen=True)
class WitnessTriple:
    nonsplit_witness: FrobeniusSample | None = None
    split_witness: FrobeniusSample | None = None
    exceptional_excluder: FrobeniusSample | None = None

    @property
    def complete(self):
        return None not in (self.nonsplit_witness, self.split_witness, self.exceptional_excluder)

    def items(self):
        return [
            (NONSPLIT, self.nonsplit_witness),
            (SPLIT, self.split_witness),
            (EXCEPTIONAL, self.exceptional_excluder),
        ]


@dataclass(frozen=True)
class ImageVerdict:
    status: str
    witnesses: WitnessTriple | None
    samples_used: int
    base: str = "Q"

    @property
    def contains_sl2(self):
        return self.status == "contains_SL2"


def frobenius_samples(model: CurveModel, p: int, ell_budget: int):
    """Yield Frobenius samples at degree-1 good primes, smallest ell first."""
    K = model.field
    for ell in primes_up_to(ell_budget):
        if ell <= 3 or ell == p:
            continue
        if K.degree == 1:
            red = reduce_rational_model(model, ell)
            if red is None or not red.good_reduction:
                continue
            yield FrobeniusSample(ell, trace_of_frobenius(red), ell)
            continue
        try:
            places = places_above(K, ell)
        except UnsupportedPrime:
            continue
        for place in places:
            if place.f != 1 or place.e != 1:
                continue
            try:
                red = reduce_at_prime(model, place)
            except PotentiallyMultiplicative:
                continue
            if red.good_reduction:
                yield FrobeniusSample(ell, trace_of_frobenius(red), ell, place.factor.residue_poly)


def sl2_containment(model: CurveModel, p: int, ell_budget: int) -> ImageVerdict:
    """Search Frobenius traces for a witness triple proving SL_2 containment.

    Returns ``contains_SL2`` with the first witness of each kind (smallest ell)
    or ``inconclusive`` once the budget is exhausted; never asserts
    non-containment.
    """
    if p <= 3:
        raise InvalidArgument("sl2_containment needs p > 3")
    found = {}
    used = 0
    base = "Q" if model.field.degree == 1 else f"K_E={list(model.field.min_poly)} (degree-1 primes)"
    for sample in frobenius_samples(model, p, ell_budget):
        used += 1
        for label in classify_charpoly(sample.trace, sample.det, p):
            found.setdefault(label, sample)
        if all(k in found for k in (NONSPLIT, SPLIT, EXCEPTIONAL)):
            triple = WitnessTriple(found[NONSPLIT], found[SPLIT], found[EXCEPTIONAL])
            return ImageVerdict("contains_SL2", triple, used, base)
    partial = WitnessTriple(found.get(NONSPLIT), found.get(SPLIT), found.get(EXCEPTIONAL))
    return ImageVerdict("inconclusive", partial, used, base)


def descend_condition_ii(verdict: ImageVerdict, p: int, deg_L_over_KE: int, dv: int) -> str:
    if deg_L_over_KE < 1:
        raise InvalidArgument("deg_L_over_KE must be >= 1")
    if verdict.contains_sl2 and p > max(3, 2 * dv) and deg_L_over_KE < p:
        return "holds"
    return "inconclusive"


def condition_v(verdict_ii: str, L_unramified_at_p: bool) -> str:
    return "holds" if verdict_ii == "holds" and L_unramified_at_p else "inconclusive"
