"""Omega-stability of combinatorial LG-quasimaps, walls in A, and the
numerical rewrites (common theta-weight, re-indexing, projective push)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import AllZeroNearX, EmptyInterval, InconsistentDivisor, InvalidPackage, NotNormalized
from .package import (
    BiDegree,
    MonomialElt,
    OmegaTriple,
    TorusPackage,
    make_common_theta_weight,
    n0_and_D,
    reindex,
    s_max,
)
from .quasimap import ComponentData, Point, PointRef, QuasimapGraph, SectionDivisor
from .rational import lcm

OMEGA1 = "Omega1"
OMEGA2 = "Omega2"
OMEGA3 = "Omega3"
CONSISTENCY = "consistency"

FINITE_A = "finite-A"
A_INFINITY = "A-infinity"

AUTO_POSITIVE = "auto-positive"
NEEDS_DEGREE = "needs-degree"
DELTA_MINUS = "delta-minus"


@dataclass(frozen=True)
class Failure:
    condition: str
    location: str
    witness: Optional[Fraction] = None


@dataclass(frozen=True)
class StabilityReport:
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        return "stable" if not self.failures else "unstable"

    @property
    def stable(self) -> bool:
        return not self.failures

    def __add__(self, other: "StabilityReport") -> "StabilityReport":
        return StabilityReport(self.failures + other.failures)

    def conditions(self) -> set[str]:
        return {f.condition for f in self.failures}


def _bidegrees(omega: OmegaTriple) -> list[BiDegree]:
    return [f.bidegree for f in omega.S]


def _branches(xi: QuasimapGraph, ref: PointRef) -> list[PointRef]:
    other = xi.other_branch(ref)
    return [ref] if other is None else [ref, other]


def check_omega1(xi: QuasimapGraph, omega: OmegaTriple) -> StabilityReport:
    xi.check_consistency(_bidegrees(omega))
    failures = []
    for ci, comp in enumerate(xi.components):
        if not xi.nonzero_on(ci):
            failures.append(Failure(OMEGA1, f"component {ci}"))
    done: set[PointRef] = set()
    for ci, comp in enumerate(xi.components):
        for p in comp.special_points:
            ref = (ci, p.id)
            if ref in done:
                continue
            branches = _branches(xi, ref)
            done.update(branches)
            ok = any(all(xi.order(fi, b) == 0 for b in branches) for fi in range(len(omega.S)))
            if not ok:
                worst = _base_order(xi, branches, len(omega.S))
                label = "node" if len(branches) == 2 else p.kind
                failures.append(Failure(OMEGA1, f"{label} {ci}/{p.id}", worst))
    return StabilityReport(tuple(failures))


def _base_order(xi: QuasimapGraph, branches: list[PointRef], n: int) -> Optional[Fraction]:
    """Smallest order over f and branches, skipping identically-zero branches."""
    vals = [xi.order(fi, b) for fi in range(n) for b in branches]
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


def normalized_min_order(xi: QuasimapGraph, ref: PointRef, omega: OmegaTriple) -> Fraction:
    """min over f not identically zero near the point of ord/k_f + slope(f)."""
    values = []
    for fi, f in enumerate(omega.S):
        orders = [xi.order(fi, b) for b in _branches(xi, ref)]
        if any(o is None for o in orders):
            continue
        k = f.bidegree.k
        values.append(max(orders) / k + f.slope)
    if not values:
        raise AllZeroNearX(f"every element of S vanishes identically near {ref}")
    return min(values)


def check_omega2(xi: QuasimapGraph, omega: OmegaTriple) -> StabilityReport:
    failures = []
    for ci, comp in enumerate(xi.components):
        if not xi.nonzero_on(ci):
            continue
        for p in comp.plain_points:
            value = normalized_min_order(xi, (ci, p.id), omega)
            if value > omega.A:
                failures.append(Failure(OMEGA2, f"point {ci}/{p.id}", value))
    return StabilityReport(tuple(failures))


def omega3_value(comp: ComponentData, A: Fraction) -> Fraction:
    return comp.deg_L + A * comp.deg_wlog


def check_omega3(xi: QuasimapGraph, omega: OmegaTriple, mode: str = FINITE_A) -> StabilityReport:
    failures = []
    for ci, comp in enumerate(xi.components):
        if mode == FINITE_A:
            value = omega3_value(comp, omega.A)
            if value <= 0:
                failures.append(Failure(OMEGA3, f"component {ci}", value))
        elif mode == A_INFINITY:
            w = comp.deg_wlog
            if w < 0 or (w == 0 and comp.deg_L <= 0):
                failures.append(Failure(OMEGA3, f"component {ci}", Fraction(w) if w < 0 else comp.deg_L))
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return StabilityReport(tuple(failures))


def classify_components(xi: QuasimapGraph, omega: OmegaTriple) -> list[str]:
    tags = []
    for comp in xi.components:
        w = comp.deg_wlog
        tags.append(AUTO_POSITIVE if w > 0 else NEEDS_DEGREE if w == 0 else DELTA_MINUS)
    return tags


def lower_bound_delta(omega: OmegaTriple, D: int) -> Fraction:
    """Half the smallest positive gap between deg_L values and s_max.

    When s_max has denominator dividing D this is 1/(2D)."""
    return Fraction(1, 2 * lcm([D, s_max(omega).denominator]))


def consistency_lower_bound(xi: QuasimapGraph, omega: OmegaTriple, D: int) -> StabilityReport:
    smax = s_max(omega)
    delta = lower_bound_delta(omega, D)
    failures = []
    for ci, comp in enumerate(xi.components):
        w = comp.deg_wlog
        value = comp.deg_L + (smax if w >= 0 else smax + delta) * w
        if value < 0:
            failures.append(Failure(CONSISTENCY, f"component {ci}", value))
    return StabilityReport(tuple(failures))


def check_stable(
    xi: QuasimapGraph, omega: OmegaTriple, mode: str = FINITE_A, D: Optional[int] = None
) -> StabilityReport:
    """All clauses together.  ``D`` defaults to the denominator bound read
    off the instance itself (aut orders and degrees)."""
    om1 = check_omega1(xi, omega)
    om2 = check_omega2(xi, omega) if mode == FINITE_A else StabilityReport()
    om3 = check_omega3(xi, omega, mode)
    cons = StabilityReport()
    if not om2.failures and not om1.failures:
        cons = consistency_lower_bound(xi, omega, D or xi.denominator_bound())
    return cons + om1 + om2 + om3


def walls(
    pkg: TorusPackage,
    omega: OmegaTriple,
    g: int,
    k: int,
    d: Fraction,
    interval: tuple[Fraction, Fraction],
    closed_right: bool = True,
) -> tuple[int, list[Fraction]]:
    """Chamber modulus M and the candidate walls lying in the interval.

    Candidates: Omega-2 thresholds (m + c_f)/k_f, rational-tail thresholds
    p/D, and d/2 for the single smooth component when (g, k) = (0, 0)."""
    a0, a1 = Fraction(interval[0]), Fraction(interval[1])
    if a1 <= a0:
        raise EmptyInterval(f"interval ({a0}, {a1}] is empty")
    if a0 < s_max(omega):
        raise EmptyInterval(f"interval starts below s_max = {s_max(omega)}")
    _, D = n0_and_D(pkg)
    M = lcm([2 * D] + [f.bidegree.k for f in omega.S])

    def inside(x: Fraction) -> bool:
        return a0 < x and (x <= a1 if closed_right else x < a1)

    cands: set[Fraction] = set()
    for f in omega.S:
        kf, cf = f.bidegree.k, f.bidegree.c
        for j in range(max(cf, math.floor(a0 * kf)), math.floor(a1 * kf) + 1):
            if inside(Fraction(j, kf)):
                cands.add(Fraction(j, kf))
    for p in range(math.floor(a0 * D), math.floor(a1 * D) + 1):
        if inside(Fraction(p, D)):
            cands.add(Fraction(p, D))
    if (g, k) == (0, 0) and inside(Fraction(d) / 2):
        cands.add(Fraction(d) / 2)
    return M, sorted(cands)


def chamber_representatives(M: int, a0: Fraction, a1: Fraction) -> list[Fraction]:
    """Left ends i/M of the chambers meeting (a0, a1]."""
    return [Fraction(i, M) for i in range(math.floor(a0 * M), math.floor(a1 * M) + 1)]


# rewrites of the quasimap that accompany rewrites of Omega


def scale_quasimap(xi: QuasimapGraph, deg_factor: Fraction, order_factors: Sequence[Fraction]) -> QuasimapGraph:
    comps = tuple(ComponentData(c.genus, c.deg_L * deg_factor, c.points) for c in xi.components)
    divs = tuple(
        SectionDivisor(d.zero_on, tuple((ref, v * s) for ref, v in d.orders)) for d, s in zip(xi.divisors, order_factors)
    )
    return QuasimapGraph(comps, xi.edges, divs)


def normalize_quasimap(omega: OmegaTriple, xi: QuasimapGraph) -> tuple[OmegaTriple, QuasimapGraph]:
    """Common-theta-weight rewrite of both Omega and the quasimap: the line
    bundle becomes its m-th power and f^(m/k_f) has m/k_f times the orders."""
    new_omega, m = make_common_theta_weight(omega)
    factors = [Fraction(m, f.bidegree.k) for f in omega.S]
    return new_omega, scale_quasimap(xi, Fraction(m), factors)


def reindex_quasimap(omega: OmegaTriple, xi: QuasimapGraph, a: int) -> tuple[OmegaTriple, QuasimapGraph]:
    new_omega, _ = reindex(omega, xi.genus, xi.markings_total, xi.degree, a)
    comps = tuple(ComponentData(c.genus, c.deg_L - a * c.deg_wlog, c.points) for c in xi.components)
    return new_omega, QuasimapGraph(comps, xi.edges, xi.divisors)


def adjoin_products(
    omega: OmegaTriple, xi: QuasimapGraph, pairs: Iterable[tuple[int, int]]
) -> tuple[OmegaTriple, QuasimapGraph]:
    """Enlarge S by products f_i f_j; the product's orders add and it is
    identically zero wherever a factor is."""
    S = list(omega.S)
    divs = list(xi.divisors)
    for i, j in pairs:
        f, h = omega.S[i], omega.S[j]
        exps = tuple(a + b for a, b in zip(f.exponents, h.exponents))
        S.append(MonomialElt(exps, f.bidegree + h.bidegree, f"({f.name})*({h.name})"))
        di, dj = xi.divisors[i], xi.divisors[j]
        orders = di.order_map()
        for ref, v in dj.orders:
            orders[ref] = orders.get(ref, Fraction(0)) + v
        zero = di.zero_on | dj.zero_on
        divs.append(SectionDivisor(zero, {r: v for r, v in orders.items() if r[0] not in zero}))
    return OmegaTriple(tuple(S), omega.A, omega.vartheta, omega.epsilon), QuasimapGraph(xi.components, xi.edges, tuple(divs))


def push_to_projective(
    pkg: TorusPackage, omega: OmegaTriple, xi: QuasimapGraph
) -> tuple[TorusPackage, OmegaTriple, QuasimapGraph]:
    """Coarse image in P^(|S|-1) with charges c_f; needs every k_f = 1.

    Orbifold structure is forgotten, so orders at special points must be
    integers already."""
    if any(f.bidegree.k != 1 for f in omega.S):
        raise NotNormalized("push_to_projective needs every element of S to have theta-weight 1")
    n = len(omega.S)
    charges = tuple(f.bidegree.c for f in omega.S)
    names = tuple(f"phi[{f.name or i}]" for i, f in enumerate(omega.S))
    target_pkg = TorusPackage(((1,) * n, charges), (0, 1), (1, 0), names)
    coords = [target_pkg.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)]
    target_omega = OmegaTriple(tuple(coords), omega.A, target_pkg.vartheta, target_pkg.epsilon)
    for div in xi.divisors:
        for ref, v in div.orders:
            if v.denominator != 1:
                raise InconsistentDivisor(f"order {v} at {ref} does not descend to the coarse curve")
    comps = tuple(
        ComponentData(c.genus, c.deg_L, tuple(Point(p.id, p.kind, 1) for p in c.points)) for c in xi.components
    )
    return target_pkg, target_omega, QuasimapGraph(comps, xi.edges, xi.divisors)


def require_window(omega: OmegaTriple, A: Fraction) -> None:
    if Fraction(A) <= s_max(omega):
        raise InvalidPackage(f"A = {A} lies outside the window above s_max = {s_max(omega)}")
