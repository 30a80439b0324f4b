"""Command line interface: ``dquad verify | family | check-m | search``.

Exit codes: 0 success, 1 checked and false, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import List, Optional

from .birational import f_map
from .curves import DPoint, EPoint, Params, on_curve_E, point_S
from .errors import DQError, InvalidParams, NoBasePoint
from .exactmath import format_rational, is_square, parse_rational
from .quadruples import (
    admissibility_check,
    construct_family_quadruple,
    m_from_tu,
    quadruple_from_witness,
    standard_candidates,
    verify_quadruple,
)
from .search import brute_force_quadruples, search_D_points

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-3/4" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"bound must be positive, got {value}")
    return value


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj) + "\n")


def cmd_verify(args, out) -> int:
    cert = verify_quadruple(args.q, *args.entries)
    _emit(cert.to_json(), out)
    return EXIT_OK if cert.passed else EXIT_FALSE


def _family_record(q, t, u) -> dict:
    record = {"q": format_rational(q), "t": format_rational(t), "u": format_rational(u)}
    try:
        m, _, _ = m_from_tu(q, t, u)
    except InvalidParams as exc:
        record.update(status="invalid", reason=str(exc))
        return record
    record["m"] = format_rational(m)
    try:
        quad = construct_family_quadruple(q, t, u)
    except DQError as exc:
        record.update(status="degenerate", reason=str(exc))
        return record
    cert = verify_quadruple(q, *quad.entries)
    if not cert.passed or quad.product != m:
        record.update(status="degenerate", reason="; ".join(cert.reasons) or "product mismatch")
        return record
    for name, value in zip("abcd", quad.entries):
        record[name] = format_rational(value)
    record.update(status="ok", verified=True)
    return record


def cmd_family(args, out) -> int:
    if args.t_range is not None:
        lo, hi = args.t_range
        ts = [parse_rational(str(k)) for k in range(lo, hi + 1)]
    else:
        ts = args.t
    records = [_family_record(args.q, t, args.u) for t in ts]
    if args.format == "csv":
        cols = ["q", "t", "u", "m", "a", "b", "c", "d", "status", "reason"]
        writer = csv.DictWriter(out, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow(rec)
    else:
        for rec in records:
            _emit(rec, out)
    statuses = [rec["status"] for rec in records]
    if all(s == "invalid" for s in statuses):
        return EXIT_USAGE
    return EXIT_OK if "ok" in statuses else EXIT_FALSE


def _load_points(path: str, q, m):
    with open(path) as fh:
        data = json.load(fh)
    d_points: List[DPoint] = []
    e_points: List[EPoint] = []
    for obj in data:
        if "x" in obj:
            pt = DPoint.from_json(obj)
            if (pt.x * pt.x - q) * (pt.y * pt.y - q) != m:
                raise InvalidParams(f"supplied point {obj} is not on D_m")
            d_points.append(pt)
        else:
            e_points.append(EPoint.from_json(obj))
    return d_points, e_points


def _choose_base_point(q, d_points: List[DPoint]) -> Optional[DPoint]:
    usable = [p for p in d_points if p.x != 0 and p.y != 0]
    for p in usable:
        if is_square(p.x * p.x - q):
            return p
    for p in usable:
        if p.x > 0 and p.y > 0:
            return p
    return usable[0] if usable else None


def cmd_check_m(args, out) -> int:
    q, m = args.q, args.m
    if q == 0 or m == 0 or m == q * q:
        raise InvalidParams(f"m = {m} is excluded for q = {q} (m must avoid 0 and q^2)")
    supplied_d, supplied_e = ([], [])
    if args.points:
        supplied_d, supplied_e = _load_points(args.points, q, m)
    searched = search_D_points(q, m, args.height)
    base = _choose_base_point(q, supplied_d + searched)
    if base is None:
        raise NoBasePoint(f"no point on D_m up to height {args.height} and none supplied")
    params = Params(q, m, base.x, base.y)
    for P in supplied_e:
        if not on_curve_E(params, P):
            raise InvalidParams(f"supplied point {P.to_json()} is not on E_m")
    candidates = standard_candidates(params) + supplied_e
    candidates += [f_map(params, p) for p in supplied_d + searched]
    verdict = admissibility_check(params, candidates, auxiliary=[point_S(params)])
    record = {
        "q": format_rational(q),
        "m": format_rational(m),
        "base_point": base.to_json(),
        "height": args.height,
        "verdict": verdict.to_json(),
        "quadruple": None,
    }
    if verdict.exists:
        quad = quadruple_from_witness(params, verdict.witness)
        cert = verify_quadruple(q, *quad.entries)
        assert cert.passed and quad.product == m
        record["quadruple"] = cert.to_json()
    _emit(record, out)
    return EXIT_OK if verdict.exists else EXIT_FALSE


def cmd_search(args, out) -> int:
    q = args.q
    if args.quadruples:
        num_bound = args.int_bound or args.num_bound
        den_bound = 1 if args.int_bound else args.den_bound
        if num_bound is None:
            raise InvalidParams("--quadruples needs --int-bound or --num-bound")
        found = brute_force_quadruples(q, num_bound, den_bound, signed=args.signed)
        writer = None
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["q", "a", "b", "c", "d"])
        for quad in found:
            cert = verify_quadruple(q, *quad.entries)
            if not cert.passed:
                continue
            if writer:
                writer.writerow([format_rational(v) for v in (q, *quad.entries)])
            else:
                _emit(cert.to_json(), out)
        return EXIT_OK if found else EXIT_FALSE
    if args.m is None:
        raise InvalidParams("search needs --m or --quadruples")
    points = search_D_points(q, args.m, args.height)
    writer = None
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "y"])
    for p in points:
        if writer:
            writer.writerow([format_rational(p.x), format_rational(p.y)])
        else:
            _emit(p.to_json(), out)
    return EXIT_OK if points else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dquad", description="Rational D(q)-quadruples with prescribed product.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check that a, b, c, d form a D(q)-quadruple")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("entries", nargs=4, type=_rational, metavar="a")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="quadruples from the (S+R, 2S, 3S) construction")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--u", type=_rational, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", type=_rational, action="append")
    group.add_argument("--t-range", type=int, nargs=2, metavar=("START", "STOP"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("check-m", help="look for a coset witness that a quadruple with product m exists")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--m", type=_rational, required=True)
    p.add_argument("--points", help="JSON list of {x, y} points on D_m and/or {T, W} points on E_m")
    p.add_argument("--height", type=_positive_int, default=10)
    p.set_defaults(func=cmd_check_m)

    p = sub.add_parser("search", help="bounded search for points on D_m or for quadruples")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--m", type=_rational)
    p.add_argument("--height", type=_positive_int, default=10)
    p.add_argument("--quadruples", action="store_true")
    p.add_argument("--int-bound", type=_positive_int)
    p.add_argument("--num-bound", type=_positive_int)
    p.add_argument("--den-bound", type=_positive_int, default=1)
    p.add_argument("--signed", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (DQError, ValueError, OSError) as exc:
        sys.stderr.write(f"dquad: error: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
