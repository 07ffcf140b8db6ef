"""Command-line frontend.

Exit codes: 0 ok, 1 usage or invalid input, 2 route disagreement,
3 self-test failure.  All counts are printed as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from . import duality, fusion, quantum, selftest
from .cache import open_cache
from .quantum import GWQuery, RouteDisagreement
from .schubert import GrassmannianShape, InputError

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_SELFTEST = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# -- argument parsing helpers ------------------------------------------------


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def parse_groups(text: str) -> list[tuple[int, ...]]:
    """'1,3;2,4' -> [(1, 3), (2, 4)]."""
    return [parse_ints(part) for part in text.split(";") if part.strip()]


def positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def int_list(text: str) -> list[int]:
    try:
        values = [positive(x) for x in text.split(",")]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"{text!r}: {exc}") from None
    return values


# -- output --------------------------------------------------------------------


def render_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[_cell(row.get(c)) for c in cols] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return "{" + ",".join(_cell(v) for v in value) + "}"
    return str(value)


def emit(args, payload, rows: list[dict] | None = None) -> None:
    if args.format == "table":
        print(render_table(rows if rows is not None else [payload]))
    else:
        print(json.dumps(payload, indent=2))


# -- commands ------------------------------------------------------------------


def cmd_verlinde(args) -> int:
    r, k, g = args.r, args.k, args.g
    cache = open_cache(args.cache)
    try:
        if args.method == "both":
            report = duality.sd_check(r, k, g, per_tuple=args.per_tuple, jobs=args.jobs, cache=cache)
            payload = report.to_json()
            payload["method"] = "both"
            code = EXIT_OK if report.agree else EXIT_DISAGREE
        else:
            if args.method == "gw":
                values = duality.tuple_values(r, k, g, jobs=args.jobs, cache=cache)
                m = sum(values.values())
            else:
                values, m = None, duality.m_via_factorization(r, k, g)
            payload = {
                "schema_version": duality.SCHEMA_VERSION,
                "r": r, "k": k, "g": g,
                "method": args.method,
                "M": str(m),
            }
            if args.per_tuple and values is not None:
                payload["per_tuple"] = [
                    {"subsets": [list(s) for s in t], "value": str(v)} for t, v in values.items()
                ]
            code = EXIT_OK
    finally:
        if cache is not None:
            cache.save()
    rows = [{key: payload[key] for key in payload if key != "per_tuple"}]
    emit(args, payload, rows)
    if code == EXIT_DISAGREE:
        print("error: the two routes disagree", file=sys.stderr)
    return code


def cmd_fusion(args) -> int:
    r, k = args.r, args.k
    weights = parse_groups(args.weights)
    if not weights:
        raise InputError("--weights needs at least one weight")
    reps = []
    for w in weights:
        if len(w) > r:
            raise InputError(f"weight {w} has more than {r} entries")
        reps.append(fusion.check_rep(r, k, w + (0,) * (r - len(w))))
    product = fusion.fuse_all(r, k, reps)
    payload = {
        "group": [r, k],
        "factors": [list(rep) for rep in reps],
        "product": product.to_json()["terms"],
        "vacuum_coefficient": str(product[fusion.trivial(r)]),
    }
    rows = [{"rep": t["rep"], "coeff": t["coeff"]} for t in payload["product"]]
    emit(args, payload, rows)
    return EXIT_OK


def _shape(r: int, n: int) -> GrassmannianShape:
    if n <= r:
        raise InputError(f"need n > r (got r={r}, n={n})")
    return GrassmannianShape.from_rn(r, n)


def cmd_qprod(args) -> int:
    shape = _shape(args.r, args.n)
    classes = parse_groups(args.classes)
    if not classes:
        raise InputError("--classes needs at least one subset")
    product = quantum.multiply_subsets(shape, classes)
    payload = {"factors": [list(c) for c in classes], **product.to_json()}
    rows = [{"subset": t["subset"], "q": t["q"], "coeff": t["coeff"]} for t in payload["terms"]]
    emit(args, payload, rows)
    return EXIT_OK


def cmd_gw(args) -> int:
    if args.D > 0:
        raise InputError(
            f"D={args.D} > 0 is not supported directly; "
            "use D <= 0 (positive twists are reached only through unshift chains)"
        )
    shape = _shape(args.r, args.n)
    subsets = parse_groups(args.subsets)
    query = GWQuery(shape, tuple(subsets), args.d, args.D)
    cache = open_cache(args.cache)
    key = query.canonical().key()
    try:
        if cache is not None and key in cache:
            value = cache[key]
        else:
            value = quantum.gw_twisted(query)
            if cache is not None:
                cache[key] = value
    finally:
        if cache is not None:
            cache.save()
    payload = {
        "shape": [shape.r, shape.n],
        "subsets": [list(s) for s in query.insertions],
        "d": args.d,
        "D": args.D,
        "expected_dimension": query.expected_dimension,
        "value": str(value),
    }
    emit(args, payload)
    return EXIT_OK


def cmd_shift(args) -> int:
    subset = parse_ints(args.subset)
    if not subset:
        raise InputError("--subset must be nonempty")
    shape = _shape(len(subset), args.n)
    fn = quantum.unshift if args.inverse else quantum.shift
    j, d = fn(shape, subset, args.d)
    emit(args, {"J": list(j), "d": d})
    return EXIT_OK


def cmd_sd_check(args) -> int:
    cache = open_cache(args.cache)
    reports = []
    try:
        for r in args.r:
            for k in args.k:
                for g in args.g:
                    reports.append(
                        duality.sd_check(r, k, g, per_tuple=args.per_tuple, jobs=args.jobs, cache=cache)
                    )
    finally:
        if cache is not None:
            cache.save()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(duality.CSV_HEADER)
        for rep in reports:
            writer.writerow(rep.csv_row())
        sys.stdout.write(buf.getvalue())
    else:
        payload = [rep.to_json() for rep in reports]
        rows = [{k: v for k, v in p.items() if k != "per_tuple"} for p in payload]
        emit(args, payload, rows)
    bad = [rep for rep in reports if not rep.agree]
    for rep in bad:
        print(f"error: routes disagree at (r,k,g)=({rep.r},{rep.k},{rep.g})", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


def cmd_selftest(args) -> int:
    # the cache is never needed here; opening it just reports a bad file
    cache = open_cache(args.cache)
    extra = []
    if cache is not None:
        def cache_consistent() -> bool:
            fresh = duality.tuple_values(2, 2, 2)
            return duality.tuple_values(2, 2, 2, cache=cache) == fresh
        extra.append(("cache: cached values match fresh ones", cache_consistent))
    ok = selftest.run(args.level, extra=extra)
    if cache is not None:
        cache.save()
    return EXIT_OK if ok else EXIT_SELFTEST


# -- parser --------------------------------------------------------------------


def _common(formats: tuple[str, ...] = ("json", "table")) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=formats, default="json")
    common.add_argument("--jobs", type=positive, default=1, help="worker processes for tuple sums")
    common.add_argument("--cache", metavar="PATH", default=None,
                        help="JSON coefficient cache (default: $STRANGE_DUALITY_CACHE, else off)")
    common.add_argument("--per-tuple", action="store_true", help="include the per-tuple breakdown")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()

    parser = _Parser(prog="strange-duality", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verlinde", parents=[common], help="M(r,k,g) by one or both routes")
    p.add_argument("--r", type=positive, required=True)
    p.add_argument("--k", type=positive, required=True)
    p.add_argument("--g", type=positive, required=True)
    p.add_argument("--method", choices=("factorization", "gw", "both"), default="both")
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("fusion", parents=[common], help="fusion product of level-k weights")
    p.add_argument("--r", type=positive, required=True)
    p.add_argument("--k", type=positive, required=True)
    p.add_argument("--weights", required=True, help='e.g. "1,0;1,0"')
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("qprod", parents=[common], help="quantum product of Schubert classes")
    p.add_argument("--r", type=positive, required=True)
    p.add_argument("--n", type=positive, required=True)
    p.add_argument("--classes", required=True, help='e.g. "1,3;2,4"')
    p.set_defaults(func=cmd_qprod)

    p = sub.add_parser("gw", parents=[common], help="(twisted) three-or-more point GW number")
    p.add_argument("--r", type=positive, required=True)
    p.add_argument("--n", type=positive, required=True)
    p.add_argument("--subsets", required=True, help='e.g. "1,4;2,3;1,2"')
    p.add_argument("--d", type=nonnegative, default=0)
    p.add_argument("--D", type=int, default=0)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("shift", parents=[common], help="shift (or unshift) a subset")
    p.add_argument("--n", type=positive, required=True)
    p.add_argument("--subset", required=True, help="e.g. 1,3")
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--inverse", action="store_true", help="apply unshift instead")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("sd-check", parents=[_common(("json", "table", "csv"))],
                       help="compare both routes over a grid")
    p.add_argument("--r", type=int_list, default=[2], help="comma list")
    p.add_argument("--k", type=int_list, default=[2], help="comma list")
    p.add_argument("--g", type=int_list, default=[1, 2, 3], help="comma list")
    p.set_defaults(func=cmd_sd_check)

    p = sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RouteDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
