"""Command-line front end with deterministic JSON envelopes.

Every subcommand prints {"command", "parameters", "result", "elapsed_ms"};
the payload is deterministic for fixed inputs (only elapsed_ms varies).
Exit codes: 0 success, 1 oracle disagreement, 2 parse error, 3 domain
error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalan, morse, orbits, periodicity
from .errors import DomainError, ResourceLimitError, WeightSpecError
from .weights import (
    WEIGHT_SPEC_GRAMMAR,
    check_conditions,
    epsilon_of_weight,
    parse_weight_spec,
)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise WeightSpecError(f"range '{text}' must look like A..B (inclusive)")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise WeightSpecError(f"range '{text}' has non-integer endpoints") from None
    if b < a:
        raise WeightSpecError(f"range '{text}' is empty")
    return range(a, b + 1)


def _emit(args, command: str, parameters: dict, result, started: float) -> None:
    envelope = {
        "command": command,
        "parameters": parameters,
        "result": result,
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    json.dump(envelope, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_compute(args, started) -> int:
    b = parse_weight_spec(args.weight)
    params = {"weight": args.weight, "n": args.n, "q": args.q, "mod": args.mod}
    if args.q == 2:
        if args.mod is None:
            result = catalan.weighted_catalan(b, args.n)
        else:
            result = catalan.weighted_catalan_mod(b, args.n, args.mod)
    else:
        value = catalan.q_weighted_catalan(b, args.q, args.n)
        result = value if args.mod is None else value % args.mod
    _emit(args, "compute", params, result, started)
    return EXIT_OK


def _cmd_valuation(args, started) -> int:
    b = parse_weight_spec(args.weight)
    rng = _parse_range(args.range)
    profile = morse.valuation_profile(args.expr, args.p, rng, weight=b)
    if args.format == "csv":
        sys.stdout.write(profile.to_csv())
        return EXIT_OK
    params = {
        "weight": args.weight,
        "p": args.p,
        "expr": args.expr,
        "range": args.range,
    }
    _emit(args, "valuation", params, profile.to_json_dict(), started)
    return EXIT_OK


def _cmd_check(args, started) -> int:
    b = parse_weight_spec(args.weight)
    window = _parse_range(args.window) if args.window else None
    report = check_conditions(b, args.theorem, window=window)
    params = {"weight": args.weight, "theorem": args.theorem}
    _emit(args, "check", params, report.to_json_dict(), started)
    return EXIT_OK


def _cmd_orbits(args, started) -> int:
    shapes = (
        orbits.minimal_orbits(args.n, args.q)
        if args.minimal
        else orbits.enumerate_orbits(args.n, args.q, max_n=args.max_orbit_n)
    )
    rows = []
    for sh in shapes:
        row = {
            "shape": sh.to_parens(),
            "size": orbits.orbit_size(sh),
            "vertices": sh.vertex_count,
        }
        if args.reduce:
            reduced, removed = orbits.reduce_orbit(sh)
            row["reduced"] = reduced.to_parens()
            row["removed"] = removed
        rows.append(row)
    params = {
        "n": args.n,
        "q": args.q,
        "minimal": args.minimal,
        "reduce": args.reduce,
    }
    _emit(args, "orbits", params, rows, started)
    return EXIT_OK


def _cmd_epsilon(args, started) -> int:
    b = parse_weight_spec(args.weight)
    shape = orbits.OrbitShape.from_parens(args.shape, args.q)
    need = args.m + max(shape.depth, shape.vertex_count) + 1
    eps_b = epsilon_of_weight(b, need, base=args.q)
    params = {
        "weight": args.weight,
        "shape": args.shape,
        "m": args.m,
        "method": args.method,
    }
    results: dict[str, object] = {}
    if args.method in ("direct", "all"):
        results["direct"] = list(orbits.epsilon_direct(shape, b, args.m).bits)
    if args.method in ("recursive", "all"):
        results["recursive"] = list(orbits.epsilon_recursive(shape, eps_b, args.m).bits)
    if args.method == "coin":
        results["coin"] = [
            orbits.coin_oracle(shape, eps_b, j) for j in range(args.m + 1)
        ]
    elif args.method == "all":
        within_caps = (
            shape.q == 2
            and shape.vertex_count <= orbits.COIN_VERTEX_CAP
            and args.m <= orbits.COIN_ORDER_CAP
        )
        if within_caps:
            results["coin"] = [
                orbits.coin_oracle(shape, eps_b, j) for j in range(args.m + 1)
            ]
        else:
            results["coin"] = None  # skipped: beyond caps or non-binary
    if args.method == "all":
        present = [v for v in results.values() if v is not None]
        results["agree"] = all(v == present[0] for v in present)
        _emit(args, "epsilon", params, results, started)
        return EXIT_OK if results["agree"] else EXIT_DISAGREE
    _emit(args, "epsilon", params, results, started)
    return EXIT_OK


def _cmd_period(args, started) -> int:
    b = parse_weight_spec(args.weight)
    report = periodicity.analyze_weight_period(
        b, args.mod, max_terms=args.max_terms, state_width=args.state_width
    )
    params = {"weight": args.weight, "mod": args.mod, "max_terms": args.max_terms}
    _emit(args, "period", params, report.to_json_dict(), started)
    return EXIT_OK


def _cmd_pq(args, started) -> int:
    b = parse_weight_spec(args.weight)
    pair = periodicity.continued_fraction_pq(b, args.truncate)
    if args.mod is None:
        result = {
            "P": list(pair.P.coefficients),
            "Q": list(pair.Q.coefficients),
            "truncation": pair.truncation,
        }
    else:
        result = {
            "P": list(pair.P.coefficients_mod(args.mod)),
            "Q": list(pair.Q.coefficients_mod(args.mod)),
            "truncation": pair.truncation,
            "mod": args.mod,
        }
    params = {"weight": args.weight, "truncate": args.truncate, "mod": args.mod}
    _emit(args, "pq", params, result, started)
    return EXIT_OK


def _cmd_morse(args, started) -> int:
    if args.morse_cmd == "period":
        if args.pow3 is not None:
            check = morse.mod3r_period_check(args.pow3, window=args.max_terms)
            params = {"pow3": args.pow3, "max_terms": args.max_terms}
            _emit(args, "morse period", params, check.to_json_dict(), started)
            return EXIT_OK
        if args.mod is None:
            raise WeightSpecError("morse period needs --mod M or --pow3 R")
        report = periodicity.analyze_weight_period(
            morse.MORSE, args.mod, max_terms=args.max_terms or 2048
        )
        params = {"mod": args.mod, "max_terms": args.max_terms}
        _emit(args, "morse period", params, report.to_json_dict(), started)
        return EXIT_OK
    if args.morse_cmd == "profile":
        rng = _parse_range(args.range)
        profile = morse.valuation_profile(args.expr, args.p, rng)
        if args.format == "csv":
            sys.stdout.write(profile.to_csv())
            return EXIT_OK
        params = {"expr": args.expr, "p": args.p, "range": args.range}
        _emit(args, "morse profile", params, profile.to_json_dict(), started)
        return EXIT_OK
    if args.morse_cmd == "fit-alpha":
        report = morse.conjecture_report(args.which, args.n_max, args.depth)
        fit = report["fit"] if "fit" in report else report
        params = {"which": args.which, "n_max": args.n_max, "depth": args.depth}
        _emit(args, "morse fit-alpha", params, fit, started)
        return EXIT_OK
    # report
    report = morse.conjecture_report(args.which, args.n_max, args.depth)
    params = {"which": args.which, "n_max": args.n_max, "depth": args.depth}
    _emit(args, "morse report", params, report, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcatalan",
        description="Exact weighted Catalan arithmetic: values, valuations, orbits, periods.",
        epilog=f"weight grammar: {WEIGHT_SPEC_GRAMMAR}",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compute", help="weighted (q-)Catalan number, exact or mod m")
    p.add_argument("--weight", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--mod", type=int)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("valuation", help="p-adic valuation profile over a range of n")
    p.add_argument("--weight", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--expr", choices=morse.EXPRESSIONS, default="cb")
    p.add_argument("--range", required=True, help="inclusive, e.g. 1..300")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_valuation)

    p = sub.add_parser("check", help="test a theorem's weight hypotheses")
    p.add_argument("--weight", required=True)
    p.add_argument("--theorem", required=True, help="ps | main | conj | qmain:Q")
    p.add_argument("--window", help="inclusive range A..B for table weights")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("orbits", help="tree orbits on n vertices with sizes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--max-orbit-n", type=int, default=orbits.DEFAULT_ENUM_CAP)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("epsilon", help="orbit carry bits by one or all oracles")
    p.add_argument("--weight", required=True)
    p.add_argument("--shape", required=True, help="nested parentheses, e.g. (())")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--method", choices=("direct", "recursive", "coin", "all"), default="all")
    p.set_defaults(func=_cmd_epsilon)

    p = sub.add_parser("period", help="cycle of the residue sequence mod m")
    p.add_argument("--weight", required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--max-terms", type=int, default=5000)
    p.add_argument("--state-width", type=int)
    p.set_defaults(func=_cmd_period)

    p = sub.add_parser("pq", help="truncated continued fraction as P, Q coefficients")
    p.add_argument("--weight", required=True)
    p.add_argument("--truncate", type=int, required=True)
    p.add_argument("--mod", type=int)
    p.set_defaults(func=_cmd_pq)

    p = sub.add_parser("morse", help="Morse link number tools")
    msub = p.add_subparsers(dest="morse_cmd", required=True)

    mp = msub.add_parser("period", help="period of L_n mod m, or mod 3^r with verdict")
    mp.add_argument("--mod", type=int)
    mp.add_argument("--pow3", type=int, help="exponent r; checks the 2*3^(r-3) bound")
    mp.add_argument("--max-terms", type=int)
    mp.set_defaults(func=_cmd_morse)

    mp = msub.add_parser("profile", help="valuation profile of L_n expressions")
    mp.add_argument("--expr", choices=morse.EXPRESSIONS, required=True)
    mp.add_argument("--p", type=int, required=True)
    mp.add_argument("--range", required=True)
    mp.add_argument("--format", choices=("json", "csv"), default="json")
    mp.set_defaults(func=_cmd_morse)

    mp = msub.add_parser("fit-alpha", help="p-adic alpha digits from valuation data")
    mp.add_argument("--which", required=True, help="2adic | 2adic-general:k | 5adic")
    mp.add_argument("--n-max", type=int, default=1024)
    mp.add_argument("--depth", type=int, default=6)
    mp.set_defaults(func=_cmd_morse)

    mp = msub.add_parser("report", help="full conjecture consistency report")
    mp.add_argument("--which", required=True, help="2adic | 2adic-general:k | 5adic | 3adic")
    mp.add_argument("--n-max", type=int, default=1024)
    mp.add_argument("--depth", type=int, default=6)
    mp.set_defaults(func=_cmd_morse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except WeightSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"weight grammar: {WEIGHT_SPEC_GRAMMAR}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
