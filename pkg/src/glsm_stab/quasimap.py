"""Combinatorial model of an LG-quasimap as a decorated dual graph.

Each element f of S is recorded, per component, either as identically zero
or through its vanishing orders at named points.  A point that is not named
for f carries order 0.  Since the R-charge character is identified with the
log canonical bundle, the section u*f on a component B has degree
k_f * deg_L(B) + c_f * deg_wlog(B).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InconsistentDivisor, InvalidPackage
from .package import BiDegree
from .rational import lcm

NODE = "node"
MARKING = "marking"
PLAIN = "plain"
KINDS = (NODE, MARKING, PLAIN)

PointRef = tuple[int, str]


@dataclass(frozen=True)
class Point:
    id: str
    kind: str = PLAIN
    aut: int = 1

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidPackage(f"unknown point kind {self.kind!r}")
        if self.aut < 1 or (self.kind == PLAIN and self.aut != 1):
            raise InvalidPackage(f"point {self.id!r}: aut must be 1 at plain points and positive elsewhere")

    @property
    def special(self) -> bool:
        return self.kind != PLAIN


@dataclass(frozen=True)
class ComponentData:
    genus: int
    deg_L: Fraction
    points: tuple[Point, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg_L", Fraction(self.deg_L))
        object.__setattr__(self, "points", tuple(self.points))
        if self.genus < 0:
            raise InvalidPackage("genus must be non-negative")
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise InvalidPackage("point ids must be unique on a component")

    @property
    def special_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p.special)

    @property
    def plain_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if not p.special)

    @property
    def deg_wlog(self) -> int:
        return 2 * self.genus - 2 + len(self.special_points)

    def point(self, pid: str) -> Point:
        for p in self.points:
            if p.id == pid:
                return p
        raise InvalidPackage(f"no point {pid!r} on this component")


@dataclass(frozen=True)
class SectionDivisor:
    """Divisor data of one element of S: components where it vanishes
    identically, and positive orders at named points elsewhere."""

    zero_on: frozenset[int] = frozenset()
    orders: tuple[tuple[PointRef, Fraction], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "zero_on", frozenset(self.zero_on))
        items = self.orders.items() if isinstance(self.orders, dict) else self.orders
        clean = tuple(sorted(((int(c), str(p)), Fraction(v)) for (c, p), v in items if Fraction(v) != 0))
        object.__setattr__(self, "orders", clean)

    def order_map(self) -> dict[PointRef, Fraction]:
        return dict(self.orders)

    def order(self, ref: PointRef) -> Optional[Fraction]:
        """Order at a point, None on a component where f is identically zero."""
        if ref[0] in self.zero_on:
            return None
        return self.order_map().get(ref, Fraction(0))


@dataclass(frozen=True)
class QuasimapGraph:
    components: tuple[ComponentData, ...]
    edges: tuple[tuple[PointRef, PointRef], ...]
    divisors: tuple[SectionDivisor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(
            self, "edges", tuple(((int(a[0]), str(a[1])), (int(b[0]), str(b[1]))) for a, b in self.edges)
        )
        object.__setattr__(self, "divisors", tuple(self.divisors))
        self._validate_shape()

    def _validate_shape(self) -> None:
        n = len(self.components)
        if n == 0:
            raise InvalidPackage("a quasimap needs at least one component")
        seen: set[PointRef] = set()
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in self.edges:
            for ref in (a, b):
                if not 0 <= ref[0] < n:
                    raise InvalidPackage(f"edge endpoint {ref} names a missing component")
                pt = self.components[ref[0]].point(ref[1])
                if pt.kind != NODE:
                    raise InvalidPackage(f"edge endpoint {ref} is not a node point")
                if ref in seen:
                    raise InvalidPackage(f"node point {ref} used by two edges")
                seen.add(ref)
            if self.point(a).aut != self.point(b).aut:
                raise InvalidPackage(f"edge {a}-{b} joins branches with different aut orders")
            parent[find(a[0])] = find(b[0])
        for ci, comp in enumerate(self.components):
            for p in comp.points:
                if p.kind == NODE and (ci, p.id) not in seen:
                    raise InvalidPackage(f"node point {(ci, p.id)} is not on any edge")
        if len({find(i) for i in range(n)}) != 1:
            raise InvalidPackage("the dual graph is not connected")
        for div in self.divisors:
            if any(not 0 <= c < n for c in div.zero_on):
                raise InvalidPackage("zero_on names a missing component")
            for ref, _ in div.orders:
                if not 0 <= ref[0] < n:
                    raise InvalidPackage(f"divisor point {ref} names a missing component")
                self.components[ref[0]].point(ref[1])

    def point(self, ref: PointRef) -> Point:
        return self.components[ref[0]].point(ref[1])

    @property
    def markings_total(self) -> int:
        return sum(1 for c in self.components for p in c.points if p.kind == MARKING)

    @property
    def degree(self) -> Fraction:
        return sum((c.deg_L for c in self.components), Fraction(0))

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.components) + len(self.edges) - len(self.components) + 1

    def other_branch(self, ref: PointRef) -> Optional[PointRef]:
        for a, b in self.edges:
            if a == ref:
                return b
            if b == ref:
                return a
        return None

    def order(self, f_index: int, ref: PointRef) -> Optional[Fraction]:
        return self.divisors[f_index].order(ref)

    def nonzero_on(self, comp: int) -> list[int]:
        return [i for i, d in enumerate(self.divisors) if comp not in d.zero_on]

    def denominator_bound(self) -> int:
        """lcm of the aut orders and of the denominators of the deg_L."""
        return lcm([p.aut for c in self.components for p in c.points] + [c.deg_L.denominator for c in self.components])

    def check_consistency(self, bidegrees: Sequence[BiDegree]) -> None:
        """Raise InconsistentDivisor unless the divisor data is realizable
        degree-wise.  The checks are: integrality of orders, the degree sum
        rule on every component, and agreement of vanishing at both branches
        of each node."""
        if len(bidegrees) != len(self.divisors):
            raise InconsistentDivisor(f"{len(self.divisors)} divisors recorded for {len(bidegrees)} elements of S")
        for fi, (bd, div) in enumerate(zip(bidegrees, self.divisors)):
            sums = [Fraction(0)] * len(self.components)
            for ref, v in div.orders:
                if ref[0] in div.zero_on:
                    raise InconsistentDivisor(f"f{fi}: order recorded on component {ref[0]} where it is identically zero")
                pt = self.point(ref)
                if v < 0 or (v * pt.aut).denominator != 1:
                    raise InconsistentDivisor(f"f{fi}: order {v} at {ref} is not in (1/{pt.aut})Z_>=0")
                sums[ref[0]] += v
            for ci, comp in enumerate(self.components):
                if ci in div.zero_on:
                    continue
                expected = bd.k * comp.deg_L + bd.c * comp.deg_wlog
                if sums[ci] != expected:
                    raise InconsistentDivisor(
                        f"f{fi} on component {ci}: orders sum to {sums[ci]} but the section has degree {expected}"
                    )
            for a, b in self.edges:
                oa, ob = div.order(a), div.order(b)
                if (oa == 0) != (ob == 0):
                    raise InconsistentDivisor(f"f{fi} vanishes on only one branch of node {a}-{b}")


def component(genus: int, deg_L: Fraction, points: Iterable[tuple] = ()) -> ComponentData:
    """Shorthand: points given as (id,), (id, kind) or (id, kind, aut)."""
    return ComponentData(genus, Fraction(deg_L), tuple(Point(*p) for p in points))
