"""Command-line entry point.

All subcommands write canonical JSON to stdout.  Exit codes: 0 success,
2 schema or argument error, 3 budget exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .bounds import BoundInput, prop22_cm_bound, theorem13_bound
from .certifier import (
    DEFAULT_ELL_BUDGET,
    census,
    check_conditions,
    emit_certificate,
    ingest_curve,
    make_L,
    search_supersingular,
)
from .errors import BogocertError, VerificationFailure
from .numfield import bad_set_S
from .schema import dumps, load_json
from .verify import verify_certificate


def _curve(path):
    return ingest_curve(load_json(path))


def _L(curve, args):
    doc = load_json(args.L) if args.L else None
    return make_L(curve.K_E, doc, getattr(args, "galois_bound", None))


def cmd_badset(args):
    curve = _curve(args.curve)
    S = bad_set_S(curve.j)
    return {"K_E": list(curve.K_E.min_poly), "bad_set": S.as_dict()}


def cmd_check(args):
    curve = _curve(args.curve)
    reports = check_conditions(curve, _L(curve, args), args.p, args.ell_budget)
    return {"p": args.p, "model_change": curve.model_change, "reports": [r.as_dict() for r in reports]}


def cmd_search(args):
    curve = _curve(args.curve)
    certs = search_supersingular(curve, _L(curve, args), args.pmax, args.jobs, args.ell_budget)
    return [emit_certificate(c) for c in certs]


def cmd_bound(args):
    return theorem13_bound(BoundInput(args.p, args.dv, args.degK)).as_dict()


def cmd_cm_bound(args):
    return prop22_cm_bound(args.d).as_dict()


def cmd_census(args):
    return census(_curve(args.curve), args.xmax).as_dict()


def cmd_verify(args):
    doc = load_json(args.certificate)
    docs = doc if isinstance(doc, list) else [doc]
    results = []
    for i, d in enumerate(docs):
        results.append({"index": i, "p": d.get("p") if isinstance(d, dict) else None,
                        "problems": verify_certificate(d) if isinstance(d, dict) else ["not an object"]})
    ok = all(not r["problems"] for r in results)
    out = {"verified": ok, "certificates": results}
    if not ok:
        sys.stdout.write(dumps(out))
        raise VerificationFailure("certificate rejected")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bogocert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("badset", help="bad set S for the curve's j-invariant")
    p.add_argument("curve")
    p.set_defaults(func=cmd_badset)

    p = sub.add_parser("check", help="condition report at one prime")
    p.add_argument("curve")
    p.add_argument("--L", help="field document for L (default: L = K_E)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--galois-bound", type=int)
    p.add_argument("--ell-budget", type=int, default=DEFAULT_ELL_BUDGET)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="certify supersingular primes up to pmax")
    p.add_argument("curve")
    p.add_argument("--L", help="field document for L (default: L = K_E)")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--galois-bound", type=int)
    p.add_argument("--ell-budget", type=int, default=DEFAULT_ELL_BUDGET)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bound", help="Weil-height lower bound at a supersingular prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dv", type=int, required=True)
    p.add_argument("--degK", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("cm-bound", help="CM lower bound 3^-(4d^2+4d+6)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_cm_bound)

    p = sub.add_parser("census", help="supersingular primes up to xmax")
    p.add_argument("curve")
    p.add_argument("--xmax", type=int, required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="re-check a certificate (or a list of them)")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        result = args.func(args)
    except BogocertError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "field", None):
            err["field"] = exc.field
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "OSError", "message": str(exc)}) + "\n")
        return 2
    sys.stdout.write(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
