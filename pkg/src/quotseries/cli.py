"""Command line: ``quotseries {quot,hilbert,p1xp1,sigma,pade,verify}``.

Every command prints one JSON document with sorted keys; rationals are
``"num/den"`` strings and every default that was used is echoed back.

Exit codes: 0 success, 1 verification failure (or nothing found), 2 invalid
input, 3 two methods disagree.  ``QUOTSERIES_ORDER`` overrides the default
truncation order.

Negative list values need the ``=`` form, e.g. ``--d=-2,0``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .core import (InsufficientOrderError, QQ, TruncatedSeries, pade_reconstruct, parse_q, q_str,
                   rational_function_to_json, series_from_json, series_to_json)
from .hilbert import SurfaceNumerics, hilbert_descendent_series, hilbert_w_series, p1xp1_coefficient, p1xp1_series
from .lagrange import w_closed_form, w_equivariant_closed_form
from .localization import DEFAULT_ORDER, QuotProblem, quot_equivariant_series, quot_oracle_series
from .symfunc import SigmaParams, StarFitError, VERIFY_COUNT, sigma_star_fit
from .verify import run_verification
from .weightlimit import ExtrapolationError

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2, 3
ORDER_ENV = "QUOTSERIES_ORDER"


class InputError(ValueError):
    pass


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise InputError(f"{ORDER_ENV}={raw!r} is not an integer") from None
    if order < 0:
        raise InputError(f"{ORDER_ENV} must be non-negative")
    return order


def int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def rational_list(text: str) -> tuple:
    try:
        return tuple(parse_q(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def _default_pade_bounds(order: int) -> tuple[int, int]:
    half = max(order - 3, 0) // 2
    return half, half


def _pade_doc(series: TruncatedSeries, num: int, den: int, latex: bool) -> dict:
    """Reconstruction of a series over QQ or of each jet monomial separately."""
    parts = {"": series} if series.ring == QQ else {
        ",".join(map(str, e)): series.jet_coefficient(e) for e in series.ring.exponents}
    out = {}
    for key, s in parts.items():
        if not any(s.coeffs):
            continue
        rf = pade_reconstruct(s, num, den)
        entry = None if rf is None else rational_function_to_json(rf)
        if rf is not None and latex:
            entry["latex"] = rf.to_latex()
        out[key] = entry
    return out[""] if series.ring == QQ else out


def _resolve_pade(args, order):
    num, den = _default_pade_bounds(order)
    return (args.pade_num if args.pade_num is not None else num,
            args.pade_den if args.pade_den is not None else den)


def cmd_quot(args) -> int:
    order = args.order if args.order is not None else default_order()
    degrees, caps = args.d, args.jet
    if caps is None:
        caps = (1,) * len(degrees)
    problem = QuotProblem(args.N, args.weights, degrees, caps, order)
    doc = {"N": problem.N, "d": list(problem.degrees), "jet": list(problem.jet_caps), "order": order,
           "weights": [q_str(w) for w in problem.weights], "method": args.method,
           "equivariant": args.equivariant}
    compute = {
        "oracle": quot_equivariant_series if args.equivariant else quot_oracle_series,
        "lb": w_equivariant_closed_form if args.equivariant else w_closed_form,
    }
    methods = ("oracle", "lb") if args.method == "both" else (args.method,)
    results = {m: compute[m](problem) for m in methods}
    if not problem.jet_caps:
        results = {m: r.constant_part() for m, r in results.items()}
    for m, s in results.items():
        doc[m] = series_to_json(s)
    status = EXIT_OK
    if len(results) == 2:
        agree = results["oracle"] == results["lb"]
        doc["agree"] = agree
        if not agree:
            status = EXIT_DISAGREE
    if args.pade:
        num, den = _resolve_pade(args, order)
        doc["pade_bounds"] = [num, den]
        doc["pade"] = _pade_doc(results[methods[0]], num, den, args.latex)
    _emit(doc)
    return status


def cmd_hilbert(args) -> int:
    order = args.order if args.order is not None else default_order()
    caps = args.jet if args.jet is not None else (1,) * len(args.alphaM)
    s = SurfaceNumerics(args.M2, args.MK, args.K2, args.alphaM, caps)
    doc = {"M2": s.M2, "MK": s.MK, "K2": s.K2, "alphaM": list(s.alphaM), "jet": list(s.jet_caps),
           "order": order, "monomial": None if args.monomial is None else list(args.monomial)}
    if args.monomial is None:
        series = hilbert_w_series(s, order)
        if not s.jet_caps:
            series = series.constant_part()
    else:
        series = hilbert_descendent_series(s, args.monomial, order)
    doc["series"] = series_to_json(series)
    if args.pade:
        num, den = _resolve_pade(args, order)
        doc["pade_bounds"] = [num, den]
        doc["pade"] = _pade_doc(series, num, den, args.latex)
    _emit(doc)
    return EXIT_OK


def cmd_p1xp1(args) -> int:
    if args.nmax < 1:
        raise InputError("--nmax must be at least 1")
    coeffs = {str(n): q_str(p1xp1_coefficient(n)) for n in range(1, args.nmax + 1)}
    Z = p1xp1_series(args.nmax)
    doc = {"nmax": args.nmax, "coefficients": coeffs, "series": series_to_json(Z)}
    if args.pade:
        num, den = _resolve_pade(args, args.nmax)
        doc["pade_bounds"] = [num, den]
        doc["pade"] = _pade_doc(Z, num, den, args.latex)
    _emit(doc)
    return EXIT_OK


def cmd_sigma(args) -> int:
    p = SigmaParams(args.a, args.b, args.c)
    n_max = args.nmax if args.nmax is not None else p.threshold + 2 * p.degree_bound + 5
    doc = {"a": p.a, "b": p.b, "c": p.c, "nmax": n_max, "n0": p.threshold,
           "degree_bound": p.degree_bound, "held_out": VERIFY_COUNT}
    try:
        form = sigma_star_fit(p, n_max)
    except StarFitError as exc:
        doc["fit"] = None
        doc["diagnostic"] = str(exc)
        _emit(doc)
        return EXIT_FAILED
    doc["fit"] = {"p1": [q_str(c) for c in form.p1.coeffs], "p2": [q_str(c) for c in form.p2.coeffs]}
    doc["verified"] = True
    _emit(doc)
    return EXIT_OK


def cmd_pade(args) -> int:
    try:
        doc = json.load(sys.stdin)
        if "coefficients" not in doc and "monomials" not in doc:
            # accept the output of another subcommand
            doc = next(doc[k] for k in ("series", "oracle", "lb") if k in doc)
        series = series_from_json(doc)
    except (StopIteration, AttributeError) as exc:
        raise InputError("no series found in the input JSON") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read series JSON: {exc}") from None
    num, den = _resolve_pade(args, series.order)
    doc = {"order": series.order, "pade_bounds": [num, den],
           "pade": _pade_doc(series, num, den, args.latex)}
    _emit(doc)
    found = doc["pade"] is not None if series.ring == QQ else all(v is not None for v in doc["pade"].values())
    return EXIT_OK if found else EXIT_FAILED


def cmd_verify(args) -> int:
    failures = run_verification(args.filter, jobs=args.jobs)
    return EXIT_FAILED if failures else EXIT_OK


def _add_pade_flags(p, with_flag=True):
    if with_flag:
        p.add_argument("--pade", action="store_true", help="append the reconstructed rational function")
    p.add_argument("--pade-num", type=int, default=None, help="numerator degree bound")
    p.add_argument("--pade-den", type=int, default=None, help="denominator degree bound")
    p.add_argument("--latex", action="store_true", help="add a LaTeX form of each reconstruction")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quotseries", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quot", help="descendent series of punctual Quot schemes")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--d", type=int_list, default=(), help="degrees d_m, comma separated")
    q.add_argument("--jet", type=int_list, default=None, help="jet caps (default 1 per degree)")
    q.add_argument("--order", type=int, default=None)
    q.add_argument("--weights", type=rational_list, default=None, help="torus weights (default 2^i)")
    q.add_argument("--method", choices=("oracle", "lb", "both"), default="oracle")
    q.add_argument("--equivariant", action="store_true",
                   help="report the weight-dependent sums at the given weights instead of the limit")
    _add_pade_flags(q)
    q.set_defaults(func=cmd_quot)

    h = sub.add_parser("hilbert", help="descendent series of Hilbert schemes of points")
    for name in ("--M2", "--MK", "--K2"):
        h.add_argument(name, type=int, required=True)
    h.add_argument("--alphaM", type=int_list, default=())
    h.add_argument("--jet", type=int_list, default=None)
    h.add_argument("--monomial", type=int_list, default=None)
    h.add_argument("--order", type=int, default=None)
    _add_pade_flags(h)
    h.set_defaults(func=cmd_hilbert)

    pp = sub.add_parser("p1xp1", help="P1 x P1 residue coefficients and their series")
    pp.add_argument("--nmax", type=int, default=30)
    _add_pade_flags(pp)
    pp.set_defaults(func=cmd_p1xp1)

    s = sub.add_parser("sigma", help="fit a binomial sum to (-1)^n (p1(n) + 2^n p2(n))")
    for name in ("--a", "--b", "--c"):
        s.add_argument(name, type=int, required=True)
    s.add_argument("--nmax", type=int, default=None)
    s.set_defaults(func=cmd_sigma)

    pa = sub.add_parser("pade", help="rational reconstruction of a series JSON read from stdin")
    _add_pade_flags(pa, with_flag=False)
    pa.set_defaults(func=cmd_pade)

    v = sub.add_parser("verify", help="run the built-in verification suite")
    v.add_argument("--filter", default=None, help="substring of case names or tags")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, InsufficientOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ExtrapolationError, ArithmeticError) as exc:
        print(f"error: internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
