"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 a size bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import limits
from .errors import BadParameter, ParseError, SizeExceeded
from .groups import (FiniteGroup, abelianization, alternating, center, class_sizes, cyclic, dihedral,
                     direct_product, is_isomorphic, normal_subgroups, order_spectrum, quaternion8, sl2,
                     symmetric)
from .parsing import parse_group_expr, parse_ring_expr
from .rings import build_ring, center_ring, jacobson_radical, one_plus, units

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3

LIST_LIMIT = 64


def _catalog(n: int) -> list[tuple[str, callable]]:
    """Named groups of order n that summaries may claim, most specific names first."""
    out = []
    fixed = [
        ("S3", 6, lambda: symmetric(3)),
        ("S4", 24, lambda: symmetric(4)),
        ("A4", 12, lambda: alternating(4)),
        ("Q8", 8, quaternion8),
        ("SL2(F3)", 24, lambda: sl2(3)),
        ("D8 x D6", 48, lambda: direct_product(dihedral(8), dihedral(6))),
    ]
    out += [(name, build) for name, order, build in fixed if order == n]
    out.append((f"C{n}", lambda: cyclic(n)))
    if n % 2 == 0:
        out.append((f"D{n}", lambda: dihedral(n)))
    return out


def catalog_names(G: FiniteGroup) -> list[str]:
    if not G.has_table:
        return []
    return [name for name, build in _catalog(G.order) if is_isomorphic(G, build())]


def describe_group(G: FiniteGroup) -> str:
    names = catalog_names(G)
    if names:
        return f"order {G.order}, isomorphic to {' = '.join(names)}"
    return f"order {G.order}, not in the catalog"


def group_summary(G: FiniteGroup) -> dict:
    out = {
        "label": G.label,
        "order": G.order,
        "catalog": catalog_names(G),
        "abelian": G.is_abelian() if G.has_table else None,
        "order_spectrum": {str(k): v for k, v in order_spectrum(G).items()},
        "center_order": center(G).order,
    }
    if G.has_table:
        out["class_sizes"] = list(class_sizes(G))
        out["normal_subgroup_orders"] = [N.order for N in normal_subgroups(G)]
        out["abelianization_order_spectrum"] = {str(k): v for k, v in abelianization(G)}
        out["generators"] = [_plain(G.element_label(g)) for g in G.generators()]
    return out


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, sort_keys=False, default=_plain))
    else:
        print("\n".join(lines))


def cmd_units(args) -> int:
    R = build_ring(parse_ring_expr(args.ring))
    ug = units(R)
    G = ug.group
    data = {
        "ring": str(R.expr),
        "ring_order": R.size,
        "characteristic": R.characteristic,
        "unit_group": group_summary(G),
        "units": [_plain(R.element_label(u)) for u in ug.unit_elements] if G.order <= LIST_LIMIT else None,
    }
    lines = [
        f"ring {R.expr}: {R.size} elements, characteristic {R.characteristic}",
        f"unit group: {describe_group(G)}",
        f"order spectrum: {order_spectrum(G)}",
    ]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_radical(args) -> int:
    R = build_ring(parse_ring_expr(args.ring))
    J = jacobson_radical(R)
    ug = units(R)
    one_j = one_plus(R, J, ug)
    data = {
        "ring": str(R.expr),
        "ring_order": R.size,
        "radical_order": len(J),
        "one_plus_radical_normal_in_units": one_j.is_normal(),
        "radical": [_plain(R.element_label(x)) for x in J] if len(J) <= LIST_LIMIT else None,
    }
    lines = [
        f"ring {R.expr}: {R.size} elements",
        f"Jacobson radical: {len(J)} elements",
        f"1 + J: normal subgroup of order {one_j.order} in a unit group of order {ug.group.order}",
    ]
    if len(J) <= LIST_LIMIT:
        lines.append(f"elements: {[R.element_label(x) for x in J]}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_center(args) -> int:
    R = build_ring(parse_ring_expr(args.ring))
    Z = center_ring(R)
    data = {
        "ring": str(R.expr),
        "ring_order": R.size,
        "center_order": len(Z),
        "commutative": len(Z) == R.size,
        "center": [_plain(R.element_label(x)) for x in Z] if len(Z) <= LIST_LIMIT else None,
    }
    lines = [f"ring {R.expr}: {R.size} elements", f"center: {len(Z)} elements"]
    if len(Z) <= LIST_LIMIT:
        lines.append(f"elements: {[R.element_label(x) for x in Z]}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_group_info(args) -> int:
    G = parse_group_expr(args.group).build()
    data = group_summary(G)
    lines = [f"{args.group}: {describe_group(G)}", f"center order: {data['center_order']}",
             f"order spectrum: {order_spectrum(G)}"]
    if G.has_table:
        lines += [
            f"class sizes: {data['class_sizes']}",
            f"normal subgroup orders: {data['normal_subgroup_orders']}",
        ]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_iso(args) -> int:
    G = parse_group_expr(args.left).build()
    H = parse_group_expr(args.right).build()
    res = is_isomorphic(G, H)
    data = {"left": args.left, "right": args.right, **res.to_dict()}
    if res.isomorphic:
        line = f"{args.left} and {args.right} are isomorphic (witness verified on all {G.order ** 2} products)"
    else:
        line = f"{args.left} and {args.right} are not isomorphic (obstruction: {res.obstruction})"
    _emit(args, data, [line])
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verifier import CHECKS, run_checks

    names = list(args.names) + list(args.check or [])
    if not names or "all" in names:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        print(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}", file=sys.stderr)
        return EXIT_USAGE
    report = run_checks(names, jobs=args.jobs)
    lines = []
    for r in report["checks"]:
        lines.append(f"{r['status'].upper():4} {r['check_name']:<28} {r['cases_examined']}/{r['cases_total']} cases"
                     f"  {r['wall_time_ms']:.0f} ms")
    lines.append(f"overall: {report['status']}")
    _emit(args, report, lines)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags with suppressed defaults so they may appear on either side
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False), help="emit JSON instead of text")
    common.add_argument(
        "--bound",
        type=_positive,
        default=d(None),
        help=f"size bound for enumeration and Cayley tables (defaults: {limits.Limits().elements} ring "
             f"elements, {limits.Limits().table} table rows); sets both",
    )
    common.add_argument("--jobs", type=_positive, default=d(1), help="worker processes for verify")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(prog="finalg", description="Exact computations with finite groups and rings.",
                                     parents=[_common(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("units", parents=[common], help="unit group of a ring")
    p.add_argument("ring", help='ring expression, e.g. "M(2,F2)"')
    p.set_defaults(func=cmd_units)

    p = sub.add_parser("radical", parents=[common], help="Jacobson radical of a ring")
    p.add_argument("ring")
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("center", parents=[common], help="center of a ring")
    p.add_argument("ring")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("group-info", parents=[common], help="structure summary of a group")
    p.add_argument("group", help='group expression, e.g. "Hol(12)"')
    p.set_defaults(func=cmd_group_info)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test of two groups")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", parents=[common], help="run verification checks")
    p.add_argument("names", nargs="*", help="check names or 'all' (default)")
    p.add_argument("--check", action="append", help="check name; repeatable")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    bounds = {} if args.bound is None else {"elements": args.bound, "table": args.bound}
    try:
        with limits.override(**bounds):
            return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BadParameter as exc:
        print(f"bad parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeExceeded as exc:
        print(f"size bound exceeded: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
