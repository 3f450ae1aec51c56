"""Independent re-checking of emitted certificates.

The checker trusts nothing computed by the search: every holds flag is
re-derived from the embedded evidence using finite-field arithmetic
(factorization mod p, Legendre point counts, resultants) and the residue maps
of the presented order.  ``verify_certificate`` returns the list of problems
found; an empty list means the certificate stands.
"""

from __future__ import annotations

from .algebra.modp import is_prime, legendre_symbol
from .algebra.poly import PolyOverFp, poly_factor
from .bounds import BoundInput, prop22_cm_bound, theorem13_bound
from .certifier import (
    FLAG_NAMES,
    HOLDS,
    curve_document,
    ingest_curve,
    local_degree,
    make_L,
    _L_unramified,
)
from .elliptic import CurveModel, cm_lookup, is_supersingular_j
from .errors import BogocertError
from .galois import EXCEPTIONAL, NONSPLIT, SPLIT, classify_charpoly
from .numfield import NumberFieldOrder, Place, SplitFactor, dedekind_p_maximal
from .schema import element_coords, parse_element, parse_order

FORMAT = "bogocert-certificate/1"
LN_DIGITS = 40


def _legendre_trace(a: int, b: int, p: int) -> int:
    return -sum(legendre_symbol(x * x * x + a * x + b, p) for x in range(p))


def _as_int(x):
    return int(x) if isinstance(x, str) else x


def _check_factorization(order: NumberFieldOrder, p: int, claimed, problems, tag):
    f = PolyOverFp(p, order.min_poly)
    actual = [{"poly": list(g.coeffs), "e": m} for g, m in poly_factor(f)]
    if actual != claimed:
        problems.append(f"{tag}: factorization of the minimal polynomial mod {p} does not match")
    if not dedekind_p_maximal(order, p):
        problems.append(f"{tag}: Z[theta] is not {p}-maximal, splitting is not certified")
    return actual


def _reduced_short_model(model: CurveModel, place: Place, scaling: int):
    A, B = model.short_coefficients()
    p = place.p
    A, B = A * p ** (4 * scaling), B * p ** (6 * scaling)
    return place.reduce(A), place.reduce(B)


def _verify_cm(doc, curve, problems):
    d = parse_order(doc["L"], "L").degree
    ref = prop22_cm_bound(d)
    wb = doc.get("weil_bound", {})
    if wb.get("exponent") != ref.exponent or wb.get("base") != 3:
        problems.append(f"weil_bound: expected 3^{ref.exponent} for d = {d}")
    if wb.get("ln", "")[:LN_DIGITS] != ref.value.ln_str(50)[:LN_DIGITS]:
        problems.append("weil_bound: ln value does not match")
    cm = cm_lookup(curve.j)
    if not cm.has_cm or cm.discriminant != doc.get("cm", {}).get("discriminant"):
        problems.append("cm: j is not a CM j-invariant with the recorded discriminant")


def _verify_witnesses(model: CurveModel, p: int, ev, problems):
    found = set()
    for w in ev.get("witnesses", []):
        ell, t, d, label = w["ell"], _as_int(w["trace"]), w["det"], w.get("label")
        if d != ell or not is_prime(ell) or ell == p or ell <= 3:
            problems.append(f"ii: witness at ell = {ell} has a bad determinant or prime")
            continue
        if model.field.degree == 1:
            A, B = (x.to_rational() for x in model.short_coefficients())
            if A.denominator % ell == 0 or B.denominator % ell == 0 or model.j.to_rational().denominator % ell == 0:
                problems.append(f"ii: witness ell = {ell} is not a prime of good integral reduction")
                continue
            a = A.numerator * pow(A.denominator, -1, ell) % ell
            b = B.numerator * pow(B.denominator, -1, ell) % ell
        else:
            try:
                place = Place(model.field, ell, SplitFactor(1, 1, tuple(w["place"])))
                a, b = (x[0] for x in _reduced_short_model(model, place, 0))
            except (BogocertError, KeyError, ValueError, ZeroDivisionError):
                problems.append(f"ii: cannot reduce the model at the witness place above {ell}")
                continue
        if (4 * a**3 + 27 * b**2) % ell == 0:
            problems.append(f"ii: witness ell = {ell} is a prime of bad reduction")
            continue
        if _legendre_trace(a, b, ell) != t:
            problems.append(f"ii: trace at ell = {ell} does not match a point count")
            continue
        labels = classify_charpoly(t, d, p)
        if label not in labels:
            problems.append(f"ii: witness at ell = {ell} is not of kind {label}")
            continue
        found.add(label)
    missing = {NONSPLIT, SPLIT, EXCEPTIONAL} - found
    if missing:
        problems.append("ii: witness triple incomplete: " + ", ".join(sorted(missing)))


def verify_certificate(doc) -> list[str]:
    problems: list[str] = []
    try:
        return _verify(doc, problems)
    except (BogocertError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        problems.append(f"malformed certificate: {type(exc).__name__}: {exc}")
        return problems


def _verify(doc, problems):
    if doc.get("format") != FORMAT:
        problems.append(f"unknown format {doc.get('format')!r}")
        return problems
    curve = ingest_curve(doc["curve"]["input"])
    model_doc = doc["curve"]["model"]
    if curve_document(curve.model) != model_doc or list(curve.K_E.min_poly) != doc["curve"]["K_E"]["min_poly"]:
        problems.append("curve: K_E does not match the field derived from the input")
    model_K = parse_order(model_doc["base_field"], "model.base_field")
    model = CurveModel(model_K, tuple(parse_element(model_K, x) for x in model_doc["a_invariants"]))
    if model.j != curve.j:
        problems.append("curve: recorded model does not have the j-invariant of the input")
    if element_coords(model.j) != doc["curve"]["j"]:
        problems.append("curve: recorded j does not match the model")
    L_doc = dict(doc["L"])
    L = make_L(model.field, L_doc, L_doc.get("galois_bound"))
    if L.mode != L_doc.get("mode") or L.degree_over_KE != L_doc.get("degree_over_KE"):
        problems.append("L: recorded degree or mode does not match")

    if doc.get("kind") == "prop22":
        _verify_cm(doc, curve, problems)
        return problems
    if doc.get("kind") != "theorem13":
        problems.append(f"unknown certificate kind {doc.get('kind')!r}")
        return problems

    p = doc["p"]
    flags = doc["flags"]
    ev = doc["evidence"]
    if not is_prime(p) or p <= 3:
        problems.append(f"p = {p} is not a prime > 3")
        return problems
    if set(flags) != set(FLAG_NAMES):
        problems.append("flags: expected exactly i, ii, iii, iv, v")
    for name in ("i", "ii", "iii"):
        if flags.get(name) != HOLDS:
            problems.append(f"flag {name} is not holds; no bound may be attached")
    K = model.field

    # (iii) splitting of p in K_E
    fact = _check_factorization(K, p, ev["iii"]["factorization_mod_p"], problems, "iii")
    g = tuple(doc["place"]["residue_poly"])
    match = [x for x in fact if tuple(x["poly"]) == g]
    if not match:
        problems.append("iii: the place is not a factor of the minimal polynomial mod p")
        return problems
    e, f = match[0]["e"], len(g) - 1
    if (e, f) != (doc["place"]["e"], doc["place"]["f"]):
        problems.append("iii: recorded (e, f) do not match the factorization")
    if flags.get("iii") == HOLDS and not (e == 1 and f <= 2):
        problems.append("iii: e_v = 1 and f_v <= 2 fails")
    place = Place(K, p, SplitFactor(e, f, g))

    # (i) supersingular good reduction away from j = 0, 1728
    ev_i = ev["i"]
    if flags.get("i") == HOLDS:
        R = place.residue_field
        jt = place.reduce(model.j)
        if list(jt) != ev_i["j_reduced"]:
            problems.append("i: reduction of j does not match")
        if jt in (R(0), R(1728)):
            problems.append("i: j is 0 or 1728 modulo v")
        a, b = _reduced_short_model(model, place, ev_i["scaling"])
        if [list(a), list(b)] != [ev_i["reduced"]["a"], ev_i["reduced"]["b"]]:
            problems.append("i: reduced model does not match")
        disc = R.add(R.mul(R(4), R.pow(a, 3)), R.mul(R(27), R.mul(b, b)))
        if R.is_zero(disc):
            problems.append("i: reduced model is singular")
        elif f == 1:
            if _legendre_trace(a[0], b[0], p) != 0:
                problems.append("i: point count shows ordinary reduction")
        elif not is_supersingular_j(jt, R):
            problems.append("i: resultant test shows j is not supersingular")

    # dv and (ii)
    dv, exact, _ = local_degree(L, K, p, place)
    claimed = ev["dv"]
    if claimed["value"] != dv or claimed["exact"] != exact:
        problems.append(f"dv: recomputed {dv} (exact={exact}) differs from the recorded value")
    if flags.get("ii") == HOLDS:
        ev_ii = ev["ii"]
        if not (p > max(3, 2 * dv) and L.effective_degree < p):
            problems.append("ii: p does not exceed the descent thresholds")
        if ev_ii.get("status") != "contains_SL2":
            problems.append("ii: image verdict is not contains_SL2")
        _verify_witnesses(model, p, ev_ii, problems)

    # (iv), (v)
    unram = _L_unramified(L, p)
    if flags.get("iv") == HOLDS and not (L.is_base or unram):
        problems.append("iv: p is not shown unramified in L")
    if flags.get("v") == HOLDS and not (flags.get("ii") == HOLDS and unram):
        problems.append("v: needs (ii) and p unramified in L")
    nt = flags.get("iv") == HOLDS and flags.get("v") == HOLDS
    if doc.get("neron_tate_flag") and not nt:
        problems.append("neron_tate_flag set without (iv) and (v)")

    # bound
    ref = theorem13_bound(BoundInput(p, dv, K.degree))
    wb = doc["weil_bound"]
    if wb.get("formula") != "theorem13" or wb.get("inputs") != ref.inputs:
        problems.append("weil_bound: formula or inputs do not match")
    if wb.get("ln", "")[:LN_DIGITS] != ref.value.ln_str(50)[:LN_DIGITS]:
        problems.append("weil_bound: ln value does not match a fresh evaluation")
    return problems


__all__ = ["FORMAT", "verify_certificate"]
