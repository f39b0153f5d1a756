"""Command-line front end: ``glsm-stab <subcommand> ...``.

Exit codes: 0 when the checked object is stable (or the command simply
succeeded), 1 when it is unstable, 2 on invalid input.  Output is JSON with
sorted keys; ``--pretty`` indents it and prints tables where that helps.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import catalog
from .boundedness import certify_bounded
from .errors import GlsmStabError, InvalidPackage
from .fibertree import FiberTree, stabilize
from .io import (
    PackageFile,
    dumps,
    load_json,
    package_from_json,
    package_to_json,
    quasimap_from_json,
    quasimap_to_json,
)
from .package import (
    STABLE,
    OmegaTriple,
    a_window,
    check_ss_eq_s,
    good_lift_probe,
    is_full,
    n0_and_D,
    s_max,
    stabilizer_order,
    support_status,
)
from .quasimap import QuasimapGraph, SectionDivisor, component
from .rational import format_fraction, to_fraction
from .reduction import ReductionPair, pair_from_orders, reduce
from .stability import A_INFINITY, FINITE_A, check_stable, walls

CATALOG = ("msp-quintic", "pn-charges", "ci-lg", "quasimap", "quasimap-p1")
EXAMPLE_FILES = ("stable-example",)


def worker_count() -> int:
    raw = os.environ.get("GLSM_STAB_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    return max(1, cap) if raw else min(4, os.cpu_count() or 1)


def _ints(text: Optional[str]) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidPackage(f"expected a comma-separated list of integers, got {text!r}") from None


def _rat(text: str, what: str) -> Fraction:
    try:
        return to_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidPackage(f"{what}: expected a rational 'p/q', got {text!r}") from None


def _rows(text: str) -> list[list[int]]:
    return [_ints(row) for row in text.split(";")]


def resolve_package(name: str, args: argparse.Namespace) -> PackageFile:
    """A catalog name (with its parameters from ``args``) or a package file."""
    A = _rat(args.A, "--A") if getattr(args, "A", None) else None
    if name == "msp-quintic":
        return PackageFile(catalog.msp_quintic(), catalog.msp_omega(A=A or Fraction(3, 10)))
    if name == "pn-charges":
        charges = _ints(args.c) or [0, 0]
        return PackageFile(catalog.pn_charges(charges), catalog.pn_omega(charges, A or Fraction(max(charges) + 1)))
    if name == "ci-lg":
        degrees = _ints(args.l) or [5]
        pkg = catalog.ci_lg(args.n, degrees)
        return PackageFile(pkg, catalog.ci_omega(args.n, degrees, A, pkg))
    if name in ("quasimap", "quasimap-p1"):
        if name == "quasimap-p1" or not args.weights:
            pkg = catalog.quasimap_p1()
        else:
            rows = _rows(args.weights)
            theta = _ints(args.theta) or [1] * len(rows)
            pkg = catalog.quasimap(rows, theta)
        return PackageFile(pkg, catalog.coordinate_omega(pkg, A or Fraction(1)))
    pf = package_from_json(load_json(name))
    if A is not None and pf.omega is not None:
        pf = PackageFile(pf.package, pf.omega.with_A(A))
    return pf


def _require_omega(pf: PackageFile) -> OmegaTriple:
    if pf.omega is None:
        raise InvalidPackage("package: this command needs 'S' and 'A' in the package file")
    return pf.omega


def stable_example() -> tuple[PackageFile, QuasimapGraph]:
    """Genus-1 MSP quasimap on one component with deg L = 1: every x_i v^2
    has a simple zero at b, uv at a, and u^10 p a zero of order 5 at c."""
    pkg = catalog.msp_quintic()
    omega = catalog.msp_omega(pkg)
    comp = component(1, Fraction(1), [("a", "plain", 1), ("b", "plain", 1), ("c", "plain", 1)])
    divs = [SectionDivisor(frozenset(), {(0, "b"): 1}) for _ in range(5)]
    divs.append(SectionDivisor(frozenset(), {(0, "a"): 1}))
    divs.append(SectionDivisor(frozenset(), {(0, "c"): 5}))
    return PackageFile(pkg, omega), QuasimapGraph((comp,), (), tuple(divs))


# subcommands


def cmd_analyze(args: argparse.Namespace) -> tuple[dict, int]:
    pf = resolve_package(args.package, args)
    pkg = pf.package
    supports = list(pkg.supports())
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        statuses = list(pool.map(lambda I: support_status(pkg, I), supports))
    names = pkg.coord_names
    semistable = [(I, st) for I, st in zip(supports, statuses) if st != "unstable"]
    ok, witness = check_ss_eq_s(pkg)
    n0, D = n0_and_D(pkg)
    report: dict[str, Any] = {
        "package": args.package,
        "semistable_supports": [
            {
                "support": [names[j] for j in sorted(I)],
                "status": st,
                "stabilizer_order": (
                    stabilizer_order(pkg, I) if st == STABLE else None
                ),
            }
            for I, st in semistable
        ],
        "ss_equals_s": ok,
        "ss_minus_s_witness": None if witness is None else [names[j] for j in sorted(witness)],
        "N0": n0,
        "D": D,
        "good_lift": good_lift_probe(pkg, args.k_max, args.degree_max),
    }
    if pf.omega is not None:
        omega = pf.omega
        smax = s_max(omega)
        full, hole = is_full(pkg, list(omega.S))
        lo, hi = a_window(omega)
        report.update(
            {
                "S": [
                    {"name": f.name, "k": f.bidegree.k, "c": f.bidegree.c, "slope": format_fraction(f.slope)}
                    for f in omega.S
                ],
                "s_max": format_fraction(smax),
                "A_window": [format_fraction(lo), None if hi is None else format_fraction(hi)],
                "full": full,
                "full_witness": None if hole is None else [names[j] for j in sorted(hole)],
            }
        )
        # the first candidate wall seen by every (g, k) other than (0, 0)
        _, cands = walls(pkg, omega, 1, 1, Fraction(0), (smax, smax + 1))
        if cands:
            first = cands[0]
            report["first_candidate_wall"] = format_fraction(first)
            report["annotation"] = (
                f"classical window ({smax}, {first}) below first candidate wall"
            )
    return report, 0


def cmd_check(args: argparse.Namespace) -> tuple[dict, int]:
    pf = resolve_package(args.package, args)
    omega = _require_omega(pf)
    if args.quasimap == "stable-example":
        _, xi = stable_example()
    else:
        xi = quasimap_from_json(load_json(args.quasimap), omega)
    mode = A_INFINITY if args.mode == "A-infinity" else FINITE_A
    rep = check_stable(xi, omega, mode)
    doc = {
        "A": format_fraction(omega.A),
        "mode": mode,
        "verdict": rep.verdict,
        "failures": [
            {"condition": f.condition, "location": f.location, "witness": _jsonable(f.witness)} for f in rep.failures
        ],
    }
    return doc, 0 if rep.stable else 1


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, int):
        return format_fraction(Fraction(value))
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


def cmd_walls(args: argparse.Namespace) -> tuple[dict, int]:
    pf = resolve_package(args.package, args)
    omega = _require_omega(pf)
    parts = args.interval.split(",")
    if len(parts) != 2:
        raise InvalidPackage("--interval: expected 'a0,a1'")
    a0, a1 = (_rat(p, "--interval") for p in parts)
    M, cands = walls(pf.package, omega, args.g, args.k, _rat(args.d, "--d"), (a0, a1), closed_right=not args.open)
    return {"M": M, "walls": [format_fraction(c) for c in cands]}, 0


def cmd_reduce(args: argparse.Namespace) -> tuple[list[dict], int]:
    if args.d1_orders is not None or args.c_orders is not None:
        charges = _ints(args.charges) or None
        pair = pair_from_orders(_ints(args.d1_orders), _ints(args.c_orders), charges)
    else:
        if args.lam is None or args.mu is None:
            raise InvalidPackage("reduce: give --lambda and --mu, or --d1-orders and --c-orders")
        pair = ReductionPair(tuple(_ints(args.lam)), tuple(_ints(args.mu)))
    trace = reduce(pair)
    lines = [
        {"step": i, "lambda": list(s.lam), "mu": list(s.mu), "delta": d}
        for i, (s, d) in enumerate(zip(trace.states, trace.deltas))
    ]
    return lines, 0


def cmd_stabilize(args: argparse.Namespace) -> tuple[dict, int]:
    tree = FiberTree.from_json(load_json(args.tree))
    rng = random.Random(args.seed) if args.seed is not None else None
    result, log = stabilize(tree, rng)
    doc = {
        "tree": result.to_json(),
        "contractions": [
            {
                "kind": r.kind,
                "component": r.component,
                "into": r.into,
                "new_point": r.new_point,
                "orders": None if r.orders is None else list(r.orders),
            }
            for r in log
        ],
    }
    return doc, 0


def cmd_certify(args: argparse.Namespace) -> tuple[dict, int]:
    pf = resolve_package(args.package, args)
    omega = _require_omega(pf)
    B = _rat(args.B, "--B") if args.B else None
    cert = certify_bounded(pf.package, omega, args.g, args.k, _rat(args.d, "--d"), B)
    return cert, 0


def cmd_examples(args: argparse.Namespace) -> tuple[Any, int]:
    if args.name == "list":
        return {"packages": list(CATALOG), "quasimaps": list(EXAMPLE_FILES)}, 0
    if args.name == "stable-example":
        pf, xi = stable_example()
        doc: Any = quasimap_to_json(xi, pf.omega)
    elif args.name in CATALOG:
        doc = package_to_json(resolve_package(args.name, args))
    else:
        raise InvalidPackage(f"unknown example {args.name!r}; try 'examples list'")
    if args.emit:
        Path(args.emit).write_text(dumps(doc, pretty=True) + "\n", encoding="utf-8")
        return {"written": args.emit}, 0
    return doc, 0


# argument parsing


def _catalog_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--A", help="stability parameter A as 'p/q'")
    p.add_argument("--c", help="pn-charges: comma-separated R-charges")
    p.add_argument("--l", help="ci-lg: comma-separated degrees")
    p.add_argument("--n", type=int, default=5, help="ci-lg: number of x coordinates (default 5)")
    p.add_argument("--weights", help="quasimap: G-weight rows, ';' between rows")
    p.add_argument("--theta", help="quasimap: comma-separated theta")


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    fmt = out.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=argparse.SUPPRESS, help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=argparse.SUPPRESS, help="indented output")

    parser = argparse.ArgumentParser(prog="glsm-stab", description="Omega-stability toolkit for torus packages with R-charge.", parents=[out])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[out], help="supports, stabilizers, slopes and the A-window")
    p.add_argument("package", help="package file or catalog name")
    _catalog_options(p)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--degree-max", type=int, default=12)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", parents=[out], help="decide Omega-stability of a quasimap")
    p.add_argument("package")
    p.add_argument("quasimap", help="quasimap file, or 'stable-example'")
    _catalog_options(p)
    p.add_argument("--mode", choices=("finite-A", "A-infinity"), default="finite-A")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("walls", parents=[out], help="candidate walls in an A-interval")
    p.add_argument("package")
    _catalog_options(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", required=True, help="theta-degree as 'p/q'")
    p.add_argument("--interval", required=True, help="'a0,a1' meaning (a0, a1]")
    p.add_argument("--open", action="store_true", help="exclude the right end point")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("reduce", parents=[out], help="blowup reduction trace, one JSON line per state")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--charges")
    p.add_argument("--d1-orders")
    p.add_argument("--c-orders")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("stabilize", parents=[out], help="contract unstable tails and bridges of a fiber tree")
    p.add_argument("tree", help="fiber tree file")
    p.add_argument("--seed", type=int, help="pick contractions at random with this seed")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("certify-bounded", parents=[out], help="boundedness certificate")
    p.add_argument("--package", required=True)
    _catalog_options(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--B")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("examples", parents=[out], help="print or write a built-in example")
    p.add_argument("name", help="catalog name, 'stable-example' or 'list'")
    _catalog_options(p)
    p.add_argument("--emit", metavar="FILE")
    p.set_defaults(func=cmd_examples)
    return parser


def _render_pretty(command: str, doc: Any) -> str:
    if command == "reduce":
        rows = [f"{'step':>4}  {'delta':>5}  lambda / mu"]
        rows += [f"{d['step']:>4}  {d['delta']:>5}  {d['lambda']} / {d['mu']}" for d in doc]
        return "\n".join(rows)
    return dumps(doc, pretty=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    try:
        doc, code = args.func(args)
    except GlsmStabError as exc:
        print(f"glsm-stab: error: {exc}", file=sys.stderr)
        return 2
    if pretty:
        print(_render_pretty(args.command, doc))
    elif args.command == "reduce":
        for line in doc:
            print(dumps(line))
    else:
        print(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
