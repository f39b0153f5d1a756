"""JSON file formats for packages and quasimaps.

All rationals are written as "p/q" strings; parsing accepts "p/q", "p" and
plain JSON integers, never decimals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .errors import GlsmStabError, InvalidPackage
from .package import OmegaTriple, TorusPackage, make_omega
from .quasimap import ComponentData, Point, QuasimapGraph, SectionDivisor
from .rational import format_fraction, to_fraction


@dataclass(frozen=True)
class PackageFile:
    package: TorusPackage
    omega: Optional[OmegaTriple] = None


def _field(doc: dict, key: str, where: str = "package") -> Any:
    if key not in doc:
        raise InvalidPackage(f"{where}: missing field {key!r}")
    return doc[key]


def _int_list(value: Any, key: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InvalidPackage(f"package: field {key!r} must be an array of integers")
    return list(value)


def _rational(value: Any, key: str) -> Fraction:
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidPackage(f"field {key!r}: {exc}") from None


def package_from_json(doc: dict) -> PackageFile:
    if not isinstance(doc, dict):
        raise InvalidPackage("package: top level must be an object")
    weights = _field(doc, "weights")
    if not isinstance(weights, list) or not weights:
        raise InvalidPackage("package: field 'weights' must be a nonempty array of rows")
    rows = [_int_list(row, f"weights[{i}]") for i, row in enumerate(weights)]
    rank = doc.get("rank", len(rows))
    if rank != len(rows):
        raise InvalidPackage(f"package: 'rank' is {rank} but 'weights' has {len(rows)} rows")
    num = doc.get("num_coords", len(rows[0]))
    if any(len(r) != num for r in rows):
        raise InvalidPackage(f"package: every weight row must have num_coords = {num} entries")
    names = doc.get("coord_names") or [f"z{j + 1}" for j in range(num)]
    pkg_args: dict[str, Any] = {}
    if "ambient_restriction" in doc and doc["ambient_restriction"] is not None:
        try:
            pkg_args["ambient_restriction"] = frozenset(names.index(n) for n in doc["ambient_restriction"])
        except ValueError:
            raise InvalidPackage("package: 'ambient_restriction' names an unknown coordinate") from None
    pkg = TorusPackage(
        tuple(tuple(r) for r in rows),
        tuple(_int_list(_field(doc, "epsilon"), "epsilon")),
        tuple(_int_list(_field(doc, "vartheta"), "vartheta")),
        tuple(names),
        **pkg_args,
    )
    omega = None
    if "S" in doc:
        S = []
        for i, entry in enumerate(doc["S"]):
            mono = entry.get("monomial") if isinstance(entry, dict) else None
            if not isinstance(mono, dict):
                raise InvalidPackage(f"package: S[{i}] must be an object with a 'monomial' map")
            try:
                S.append(pkg.monomial_from_map(mono))
            except GlsmStabError as exc:
                raise InvalidPackage(f"package: S[{i}]: {exc}") from None
        A = _rational(_field(doc, "A"), "A")
        omega = make_omega(pkg, S, A)
    return PackageFile(pkg, omega)


def package_to_json(pf: PackageFile) -> dict:
    pkg = pf.package
    doc: dict[str, Any] = {
        "rank": pkg.rank,
        "num_coords": pkg.num_coords,
        "coord_names": list(pkg.coord_names),
        "weights": [list(r) for r in pkg.weights],
        "epsilon": list(pkg.epsilon),
        "vartheta": list(pkg.vartheta),
        "ambient_restriction": [pkg.coord_names[j] for j in sorted(pkg.ambient_restriction)],
    }
    if pf.omega is not None:
        doc["S"] = [
            {"monomial": {pkg.coord_names[j]: e for j, e in enumerate(f.exponents) if e}} for f in pf.omega.S
        ]
        doc["A"] = format_fraction(pf.omega.A)
    return doc


def quasimap_from_json(doc: dict, omega: OmegaTriple) -> QuasimapGraph:
    comps = []
    for ci, c in enumerate(_field(doc, "components", "quasimap")):
        pts = []
        for p in c.get("points", []):
            pts.append(Point(str(_field(p, "id", f"components[{ci}].points")), p.get("kind", "plain"), int(p.get("aut", 1))))
        comps.append(ComponentData(int(c.get("genus", 0)), _rational(c.get("deg_L", 0), f"components[{ci}].deg_L"), tuple(pts)))

    def ref(text: str) -> tuple[int, str]:
        ci, _, pid = str(text).partition("/")
        if not pid:
            raise InvalidPackage(f"quasimap: point reference {text!r} must look like 'comp/point'")
        return int(ci), pid

    edges = [(ref(a), ref(b)) for a, b in doc.get("edges", [])]
    raw = doc.get("divisors", {})
    known = {f.name for f in omega.S}
    unknown = set(raw) - known
    if unknown:
        raise InvalidPackage(f"quasimap: divisors for elements not in S: {sorted(unknown)}")
    divisors = []
    for f in omega.S:
        entry = raw.get(f.name, {})
        zero = frozenset(int(c) for c in entry.get("zero_on", []))
        orders = {ref(k): _rational(v, f"divisors.{f.name}.{k}") for k, v in entry.items() if k != "zero_on"}
        divisors.append(SectionDivisor(zero, orders))
    return QuasimapGraph(tuple(comps), tuple(edges), tuple(divisors))


def quasimap_to_json(xi: QuasimapGraph, omega: OmegaTriple) -> dict:
    divs = {}
    for f, d in zip(omega.S, xi.divisors):
        entry: dict[str, Any] = {f"{c}/{p}": format_fraction(v) for (c, p), v in d.orders}
        if d.zero_on:
            entry["zero_on"] = sorted(d.zero_on)
        divs[f.name] = entry
    return {
        "components": [
            {
                "genus": c.genus,
                "deg_L": format_fraction(c.deg_L),
                "points": [{"id": p.id, "kind": p.kind, "aut": p.aut} for p in c.points],
            }
            for c in xi.components
        ],
        "edges": [[f"{a[0]}/{a[1]}", f"{b[0]}/{b[1]}"] for a, b in xi.edges],
        "divisors": divs,
    }


def dumps(doc: Any, pretty: bool = False) -> str:
    """Deterministic JSON text: sorted keys and fixed separators."""
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidPackage(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InvalidPackage(f"{path}: {exc.strerror}") from None
