"""The certification pipeline: ingest, check conditions, search, census.

For a curve E with j-invariant j the pipeline works with a model E0 over
K_E = Q(j) and an extension L of K_E supplied by the user, and at each prime
v of K_E above a rational prime p it decides

    (i)   E0 has supersingular reduction at v and j is not 0 or 1728 mod v,
    (ii)  p > max(3, 2 d_v(L)) and the mod-p image over L contains SL_2,
    (iii) e_v = 1 and f_v <= 2,
    (iv)  v is unramified in L,
    (v)   the mod-p representation over L is surjective.

(i)-(iii) yield an explicit Weil-height lower bound on L(E_tor); (iv) and (v)
additionally flag the elliptic (Neron-Tate) Bogomolov conclusion.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from .algebra.modp import primes_between
from .bounds import BoundInput, HeightBound, prop22_cm_bound, theorem13_bound
from .elliptic import (
    CMStatus,
    CurveModel,
    canonical_model_from_j,
    cm_lookup,
    hasse_invariant,
    is_supersingular_j,
    reduce_at_prime,
    reduce_rational_model,
)
from .errors import BudgetExceeded, InvalidArgument, SchemaError, UnsupportedPrime
from .galois import (
    DETERMINANT_LEMMA,
    INDEX_LEMMA,
    ImageVerdict,
    condition_v,
    descend_condition_ii,
    sl2_containment,
)
from .numfield import (
    QQ,
    NumberFieldOrder,
    Place,
    bad_set_S,
    dedekind_p_maximal,
    field_of,
    minimal_polynomial,
    places_above,
    splitting_data,
)
from .schema import element_coords, parse_element, parse_int, parse_order

log = logging.getLogger(__name__)

DEFAULT_ELL_BUDGET = 1000
SEARCH_LIMIT = 10**5
CENSUS_LIMIT = 10**5

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
FLAG_NAMES = ("i", "ii", "iii", "iv", "v")

CM_JUSTIFICATION = (
    "CM by an order in Q(sqrt(-D)): L(E_tor) is contained in L_D(E_tor), which lies in "
    "the maximal abelian extension of L_D = L(sqrt(-D)); bound 3^-(4d^2+4d+6), d = [L:Q]"
)


# -- ingest --------------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    """An ingested curve: the input model plus a model E0 over K_E = Q(j)."""

    input_model: CurveModel
    model: CurveModel
    model_change: str
    cm: CMStatus

    @property
    def K_E(self) -> NumberFieldOrder:
        return self.model.field

    @property
    def j(self):
        return self.model.j


def curve_from_model(model: CurveModel) -> Curve:
    K = model.field
    j = model.j
    if K.degree == 1:
        if K.min_poly != QQ.min_poly:
            model = CurveModel(QQ, tuple(QQ.rational(a.coords[0]) for a in model.a))
        E0, note = model, "none: input field is Q"
    elif j.is_rational():
        if model.is_rational():
            E0 = CurveModel(QQ, tuple(QQ.rational(a.to_rational()) for a in model.a))
            note = "coefficients are rational; same model viewed over K_E = Q"
        else:
            E0 = canonical_model_from_j(QQ.rational(j.to_rational()))
            note = "canonical model over K_E = Q (a twist of the input over its field)"
    elif len(minimal_polynomial(j)) - 1 == K.degree:
        E0, note = model, "none: input field is Q(j)"
    else:
        KE, jj = field_of(j)
        E0 = canonical_model_from_j(jj)
        note = f"canonical model over K_E = Q(j) presented by {list(KE.min_poly)}"
    cm = cm_lookup(E0.j)
    if cm.has_cm is None:
        log.warning("CM status undecided for irrational j; treating the curve as non-CM")
    return Curve(model, E0, note, cm)


def ingest_curve(doc) -> Curve:
    if not isinstance(doc, dict):
        raise SchemaError("curve document must be a JSON object")
    K = parse_order(doc.get("base_field"), "base_field")
    if "a_invariants" in doc:
        a = doc["a_invariants"]
        if not isinstance(a, list) or len(a) != 5:
            raise SchemaError("expected five a-invariants", field="a_invariants")
        coeffs = tuple(parse_element(K, x, f"a_invariants[{i}]") for i, x in enumerate(a))
        model = CurveModel(K, coeffs)
    elif "j" in doc:
        model = canonical_model_from_j(parse_element(K, doc["j"], "j"))
    else:
        raise SchemaError("need 'a_invariants' or 'j'", field="a_invariants")
    return curve_from_model(model)


def curve_document(model: CurveModel) -> dict:
    return {
        "base_field": {"min_poly": list(model.field.min_poly)},
        "a_invariants": [element_coords(a) for a in model.a],
    }


@dataclass(frozen=True)
class LSpec:
    """The extension L of K_E, presented absolutely over Q."""

    order: NumberFieldOrder
    degree_over_KE: int
    galois: bool
    galois_bound: int | None = None

    @property
    def is_base(self):
        return self.degree_over_KE == 1

    @property
    def mode(self):
        return "bound" if not self.galois else "galois"

    @property
    def effective_degree(self):
        """[L':K_E] for the Galois extension L' the theorem is applied to."""
        return self.galois_bound if self.mode == "bound" else self.degree_over_KE

    def as_dict(self):
        return {
            "min_poly": list(self.order.min_poly),
            "degree_over_KE": self.degree_over_KE,
            "galois": self.galois,
            "galois_bound": self.galois_bound,
            "mode": self.mode,
        }


def make_L(K_E: NumberFieldOrder, doc=None, galois_bound=None) -> LSpec:
    if doc is None:
        return LSpec(K_E, 1, True)
    order = parse_order(doc, "L")
    if order.degree % K_E.degree:
        raise SchemaError(f"[L:Q] = {order.degree} is not a multiple of [K_E:Q] = {K_E.degree}", field="L")
    r = order.degree // K_E.degree
    if galois_bound is None and doc.get("galois_bound") is not None:
        galois_bound = parse_int(doc["galois_bound"], "L.galois_bound")
    galois = bool(doc.get("galois", False)) or r <= 2
    if galois_bound is not None:
        if galois_bound < r:
            raise SchemaError("galois_bound is smaller than [L:K_E]", field="L.galois_bound")
        galois = False if r > 2 and not doc.get("galois", False) else galois
    if not galois and galois_bound is None:
        raise SchemaError(
            "L/K_E is not declared Galois; set \"galois\": true or supply a Galois-closure degree bound",
            field="L.galois",
        )
    return LSpec(order, r, galois, galois_bound)


# -- condition checking --------------------------------------------------------------------


@dataclass
class ConditionReport:
    p: int
    place: dict | None
    flags: dict
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    dv: int | None = None
    dv_exact: bool = False

    def holds(self, *names):
        return all(self.flags.get(n) == HOLDS for n in names)

    def as_dict(self):
        return {
            "p": self.p,
            "place": self.place,
            "flags": dict(self.flags),
            "evidence": self.evidence,
            "notes": list(self.notes),
        }


def _factorization_evidence(order: NumberFieldOrder, p: int):
    data = splitting_data(order, p)
    return [{"poly": list(s.residue_poly), "e": s.e} for s in data.factors]


def condition_i(model: CurveModel, place: Place):
    """Decide (i) at the place; returns (flag, evidence, notes)."""
    ev = {"residue_modulus": list(place.residue_field.modulus)}
    j = model.j
    if not place.is_integral(j):
        return FAILS, dict(ev, reason="j not integral (potentially multiplicative reduction)"), []
    K = place.residue_field
    jt = place.reduce(j)
    ev["j_reduced"] = list(jt)
    if jt in (K(0), K(1728)):
        return FAILS, dict(ev, reason="j is 0 or 1728 modulo v"), []
    red = reduce_at_prime(model, place)
    ev.update(scaling=red.scaling, reduced={"a": list(red.a), "b": list(red.b)}, good_reduction=red.good_reduction)
    if place.f == 1 and red.good_reduction:
        h = hasse_invariant(red).value
        ev.update(mode="hasse", hasse_invariant=h)
        supersingular = h == 0
    else:
        ev["mode"] = "ss_resultant"
        supersingular = is_supersingular_j(jt, K)
    ev["supersingular_j"] = supersingular
    if not red.good_reduction:
        notes = ["twist-candidate: j is supersingular but this model has bad reduction"] if supersingular else []
        return FAILS, dict(ev, reason="model has bad reduction at v"), notes
    if not supersingular:
        return FAILS, dict(ev, reason="ordinary reduction"), []
    return HOLDS, ev, []


def local_degree(L: LSpec, K_E: NumberFieldOrder, p: int, place: Place):
    """(dv, exact, source): d_v(L') or a valid upper bound for it."""
    if L.mode == "bound":
        return L.galois_bound, False, "Galois-closure degree bound supplied by the user"
    r = L.degree_over_KE
    if r == 1:
        return 1, True, "L = K_E"
    if dedekind_p_maximal(L.order, p):
        M = splitting_data(L.order, p).max_local_degree
        if K_E.degree == 1:
            return M, True, "splitting of p in L (Dedekind)"
        return max(1, min(r, M // (place.e * place.f))), False, "max_w [L_w:Q_p] / [K_v:Q_p]"
    return r, False, "[L:K_E] (L is not p-maximal)"


def _L_unramified(L: LSpec, p: int) -> bool | None:
    """Is p unramified in L over Q?  None when undecidable here."""
    if not dedekind_p_maximal(L.order, p):
        return None
    return splitting_data(L.order, p).unramified


def _check_place(curve: Curve, L: LSpec, p: int, place: Place, verdict_for, lazy=False):
    model = curve.model
    K_E = curve.K_E
    flags = {}
    evidence = {}
    notes = []
    flags["iii"] = HOLDS if place.e == 1 and place.f <= 2 else FAILS
    evidence["iii"] = {
        "dedekind": "maximal",
        "factorization_mod_p": _factorization_evidence(K_E, p),
        "e": place.e,
        "f": place.f,
    }
    flags["i"], evidence["i"], more = condition_i(model, place)
    notes += more
    report = ConditionReport(p, place.factor.as_dict(), flags, evidence, notes)
    if lazy and not report.holds("i", "iii"):
        return report

    dv, exact, source = local_degree(L, K_E, p, place)
    report.dv, report.dv_exact = dv, exact
    evidence["dv"] = {"value": dv, "exact": exact, "source": source}

    if curve.cm.has_cm:
        flags["ii"] = flags["v"] = INCONCLUSIVE
        notes.append("CM curve: the mod-p image is abelian-by-finite; see the CM bound instead")
    else:
        verdict = verdict_for(p)
        flags["ii"] = descend_condition_ii(verdict, p, L.effective_degree, dv)
        evidence["ii"] = _verdict_evidence(verdict, p, dv, L)

    unram = _L_unramified(L, p)
    if L.is_base:
        flags["iv"] = HOLDS
        evidence["iv"] = {"source": "L = K_E"}
    else:
        flags["iv"] = HOLDS if unram else INCONCLUSIVE
        evidence["iv"] = {"source": "p unramified in L over Q", "unramified_over_Q": unram}
        if unram is not None:
            evidence["iv"]["factorization_mod_p"] = _factorization_evidence(L.order, p)
    if not curve.cm.has_cm:
        flags["v"] = condition_v(flags["ii"], bool(unram))
        evidence["v"] = {"p_unramified_in_L": unram, "justification": DETERMINANT_LEMMA}
        if unram is not None and L.is_base:
            evidence["v"]["factorization_mod_p"] = _factorization_evidence(L.order, p)
    return report


def _verdict_evidence(verdict: ImageVerdict, p, dv, L: LSpec):
    ev = {
        "status": verdict.status,
        "base": verdict.base,
        "samples_used": verdict.samples_used,
        "p_threshold": max(3, 2 * dv),
        "degree_over_KE": L.effective_degree,
        "justification": INDEX_LEMMA,
    }
    if verdict.witnesses is not None:
        ev["witnesses"] = [s.as_dict(label) for label, s in verdict.witnesses.items() if s is not None]
    return ev


def _unsupported_report(curve: Curve, p: int) -> ConditionReport:
    flags = {"i": FAILS, "ii": INCONCLUSIVE, "iii": FAILS, "iv": INCONCLUSIVE, "v": INCONCLUSIVE}
    note = f"Z[theta] of K_E is not {p}-maximal: splitting uncertifiable, p is in the conservative bad set"
    return ConditionReport(p, None, flags, {}, [note])


def check_conditions(curve: Curve, L: LSpec, p: int, ell_budget: int = DEFAULT_ELL_BUDGET):
    """Condition reports for every prime v of K_E above p."""
    if p <= 3:
        raise InvalidArgument("conditions are only checked for p > 3")
    cache = {}

    def verdict_for(q):
        if q not in cache:
            cache[q] = sl2_containment(curve.model, q, ell_budget)
        return cache[q]

    try:
        places = places_above(curve.K_E, p)
    except UnsupportedPrime:
        return [_unsupported_report(curve, p)]
    return [_check_place(curve, L, p, place, verdict_for) for place in places]


# -- certificates ------------------------------------------------------------------------


@dataclass
class SupersingularCertificate:
    curve: Curve
    L: LSpec
    p: int | None
    report: ConditionReport | None
    weil_bound: HeightBound
    neron_tate_flag: bool
    kind: str = "theorem13"


def _certificate_from_report(curve, L, report: ConditionReport):
    if not report.holds("i", "ii", "iii"):
        return None
    bound = theorem13_bound(BoundInput(report.p, report.dv, curve.K_E.degree))
    return SupersingularCertificate(curve, L, report.p, report, bound, report.holds("iv", "v"))


def cm_certificate(curve: Curve, L: LSpec) -> SupersingularCertificate:
    bound = prop22_cm_bound(L.order.degree)
    return SupersingularCertificate(curve, L, None, None, bound, False, kind="prop22")


def emit_certificate(cert: SupersingularCertificate) -> dict:
    curve = cert.curve
    doc = {
        "format": "bogocert-certificate/1",
        "kind": cert.kind,
        "curve": {
            "input": curve_document(curve.input_model),
            "model": curve_document(curve.model),
            "K_E": {"min_poly": list(curve.K_E.min_poly)},
            "model_change": curve.model_change,
            "j": element_coords(curve.j),
        },
        "L": cert.L.as_dict(),
        "weil_bound": cert.weil_bound.as_dict(),
        "neron_tate_flag": cert.neron_tate_flag,
    }
    if cert.kind == "prop22":
        doc["cm"] = {"discriminant": curve.cm.discriminant, "justification": CM_JUSTIFICATION}
        return doc
    r = cert.report
    doc.update(
        p=r.p,
        place=r.place,
        flags=dict(r.flags),
        evidence=r.evidence,
        notes=list(r.notes),
    )
    return doc


def _scan_prime(curve: Curve, L: LSpec, ell_budget: int, p: int):
    try:
        places = places_above(curve.K_E, p)
    except UnsupportedPrime:
        return []
    cache = {}

    def verdict_for(q):
        if q not in cache:
            cache[q] = sl2_containment(curve.model, q, ell_budget)
        return cache[q]

    out = []
    for place in places:
        report = _check_place(curve, L, p, place, verdict_for, lazy=True)
        cert = _certificate_from_report(curve, L, report)
        if cert is not None:
            out.append(cert)
    return out


def search_supersingular(
    curve: Curve,
    L: LSpec,
    pmax: int,
    jobs: int = 1,
    ell_budget: int = DEFAULT_ELL_BUDGET,
    pmin: int = 5,
) -> list[SupersingularCertificate]:
    """Certified primes in [pmin, pmax], ascending; CM curves get the CM bound."""
    if pmax > SEARCH_LIMIT:
        raise BudgetExceeded(f"pmax = {pmax} exceeds the search budget {SEARCH_LIMIT}")
    if curve.cm.has_cm:
        return [cm_certificate(curve, L)]
    primes = [p for p in primes_between(max(pmin, 5), pmax) if L.effective_degree < p]
    work = partial(_scan_prime, curve, L, ell_budget)
    if jobs <= 1 or len(primes) < 2:
        batches = [work(p) for p in primes]
    else:
        chunk = max(1, len(primes) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(work, primes, chunksize=chunk))
    return [c for batch in batches for c in batch]


# -- census ---------------------------------------------------------------------------------


@dataclass
class CensusResult:
    x_max: int
    supersingular_primes: list
    places: list
    primes_checked: int
    fitted_C: float
    checkpoints: list
    residuals: list
    skipped: list

    @property
    def density(self):
        return len(self.supersingular_primes) / self.primes_checked if self.primes_checked else 0.0

    def as_dict(self):
        return {
            "x_max": self.x_max,
            "supersingular_primes": self.supersingular_primes,
            "places": self.places,
            "primes_checked": self.primes_checked,
            "density": self.density,
            "fitted_C": self.fitted_C,
            "checkpoints": self.checkpoints,
            "residuals": self.residuals,
            "skipped": self.skipped,
        }


def _supersingular_places(model: CurveModel, p: int):
    """(residue_poly, f) of the places above p where the model has good
    supersingular reduction, plus a skip reason (or None)."""
    K = model.field
    if K.degree == 1:
        red = reduce_rational_model(model, p)
        if red is None or not red.good_reduction:
            return [], None
        return ([((0, 1), 1)] if hasse_invariant(red).value == 0 else []), None
    try:
        places = places_above(K, p)
    except UnsupportedPrime:
        return [], "not p-maximal"
    out = []
    for place in places:
        if not place.is_integral(model.j):
            continue
        red = reduce_at_prime(model, place)
        if not red.good_reduction:
            continue
        if place.f == 1:
            ss = hasse_invariant(red).value == 0
        else:
            ss = is_supersingular_j(place.reduce(model.j), place.residue_field)
        if ss:
            out.append((place.factor.residue_poly, place.f))
    return out, None


def census(curve, x_max: int) -> CensusResult:
    """Supersingular primes of good reduction up to x_max, over the base
    field of the supplied model, with a least-squares fit count ~ C log log x."""
    if x_max > CENSUS_LIMIT:
        raise BudgetExceeded(f"x_max = {x_max} exceeds the census budget {CENSUS_LIMIT}")
    model = curve.input_model if isinstance(curve, Curve) else curve
    ss_primes, places, skipped = [], [], []
    primes = primes_between(5, x_max)
    for p in primes:
        found, why = _supersingular_places(model, p)
        if why:
            skipped.append({"p": p, "reason": why})
        if found:
            ss_primes.append(p)
            places += [{"p": p, "residue_poly": list(g), "f": f} for g, f in found]
    checkpoints = []
    x = 100
    while x <= x_max:
        count = sum(1 for p in ss_primes if p <= x)
        checkpoints.append({"x": x, "count": count, "loglog": math.log(math.log(x))})
        x *= 10
    denom = sum(c["loglog"] ** 2 for c in checkpoints)
    C = sum(c["count"] * c["loglog"] for c in checkpoints) / denom if denom else 0.0
    residuals = [c["count"] - C * c["loglog"] for c in checkpoints]
    return CensusResult(x_max, ss_primes, places, len(primes), C, checkpoints, residuals, skipped)


# -- bad set scan ---------------------------------------------------------------------------


def residue_degree_scan(curve: Curve, pmax: int) -> dict:
    """Residue degrees of supersingular primes of K_E up to pmax, split by
    membership in the bad set S.  Violations are supersingular primes outside
    S with residue degree > 2."""
    S = bad_set_S(curve.j)
    K = curve.K_E
    found, violations = [], []
    for p in primes_between(5, pmax):
        try:
            places = places_above(K, p)
        except UnsupportedPrime:
            continue
        for place in places:
            if not place.is_integral(curve.j):
                continue
            red = reduce_at_prime(curve.model, place)
            if not red.good_reduction:
                continue
            if not is_supersingular_j(place.reduce(curve.j), place.residue_field):
                continue
            entry = {"p": p, "f": place.f, "in_S": p in S}
            found.append(entry)
            if not entry["in_S"] and place.f > 2:
                violations.append(entry)
    return {"S": S, "supersingular": found, "violations": violations}
