"""Boundedness certificates for abelian packages.

A degree vector is a homomorphism d: Z^r -> Q (the degrees of the line
bundles u*L_chi on one component), stored as a row vector so that
d(chi) = d . chi.  The certificate bounds d(vartheta), d(epsilon) and
-d(vartheta_i) for auxiliary characters vartheta_i near vartheta, and checks
that these bounds cut out a bounded polytope.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .errors import NoValidRays
from .package import OmegaTriple, TorusPackage, n0_and_D, s_max, stable_supports
from .rational import format_fraction, lcm
from .stability import lower_bound_delta

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class RaySystem:
    rays: tuple[tuple[int, ...], ...]
    lifts: tuple[tuple[int, ...], ...]


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(Fraction(v).denominator for v in vec)
    ints = [int(Fraction(v) * den) for v in vec]
    g = math.gcd(*ints) or 1
    return tuple(v // g for v in ints)


def rays_valid(pkg: TorusPackage, rays: Sequence[Sequence[int]]) -> bool:
    """Every stable cone contains every ray, theta is a positive combination
    of the rays, and the rays span."""
    theta = pkg.theta
    n = len(theta)
    if len(rays) != n or lp.rank(rays) < n:
        return False
    for I in stable_supports(pkg):
        cols = [pkg.g_weights[j] for j in sorted(I)]
        if not all(lp.in_cone(cols, ray) for ray in rays):
            return False
    # theta = sum(nu_i ray_i) with nu_i >= 1 after scaling theta by t >= 0
    return lp.in_cone_interior(list(rays), theta)


@lru_cache(maxsize=64)
def select_theta_rays(pkg: TorusPackage, max_halvings: int = 64) -> RaySystem:
    """theta +- t*v_i for a simplex {v_i} in a coordinate hyperplane
    complementary to theta, halving t until all memberships hold."""
    theta = [Fraction(t) for t in pkg.theta]
    n = len(theta)
    if n == 1:
        rays = (_primitive(theta),)
    else:
        # complement: the coordinate directions other than the largest entry of theta
        j0 = max(range(n), key=lambda j: (abs(theta[j]), j))
        basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n) if j != j0]
        simplex = basis + [[-sum(col) for col in zip(*basis)]]
        t = Fraction(1)
        for _ in range(max_halvings):
            cand = tuple(_primitive([a + t * b for a, b in zip(theta, v)]) for v in simplex)
            if rays_valid(pkg, cand):
                rays = cand
                break
            t /= 2
        else:
            raise NoValidRays("no valid rays found near theta")
    if not rays_valid(pkg, rays):
        raise NoValidRays("theta does not lie in the interior of the stable chamber")
    return RaySystem(tuple(rays), tuple(pkg.lift(r, 0) for r in rays))


# polytope of degree vectors


@dataclass(frozen=True)
class Constraint:
    """coeffs . d <= rhs, or == rhs when ``equal``."""

    coeffs: Vector
    rhs: Fraction
    equal: bool = False


@dataclass(frozen=True)
class DegreePolytope:
    dim: int
    constraints: tuple[Constraint, ...]

    @property
    def equalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.equal]

    @property
    def inequalities(self) -> list[Constraint]:
        return [c for c in self.constraints if not c.equal]

    def contains(self, d: Sequence[Fraction]) -> bool:
        for c in self.constraints:
            value = sum(a * Fraction(x) for a, x in zip(c.coeffs, d))
            if (value != c.rhs) if c.equal else (value > c.rhs):
                return False
        return True

    def recession_bounded(self) -> bool:
        """Recession cone is {0}: no direction with some coordinate >= 1
        (or <= -1) keeps every homogeneous constraint."""
        eq = [list(c.coeffs) for c in self.equalities]
        ge = [[-a for a in c.coeffs] for c in self.inequalities]
        for j in range(self.dim):
            for sign in (1, -1):
                row = [Fraction(sign * int(i == j)) for i in range(self.dim)]
                sol = lp.feasible_point(eq, [0] * len(eq), ge + [row], [0] * len(ge) + [1], n=self.dim)
                if sol is not None:
                    return False
        return True

    def hull_bounded(self) -> bool:
        """Independent test: the constraint normals (both signs for
        equalities) have 0 in the interior of their convex hull."""
        normals = [list(c.coeffs) for c in self.inequalities]
        for c in self.equalities:
            normals.append(list(c.coeffs))
            normals.append([-a for a in c.coeffs])
        if lp.rank(normals) < self.dim:
            return False
        # sum(mu_k n_k) = 0 with every mu_k >= 1, written with nu = mu - 1 >= 0
        A = [[n[i] for n in normals] for i in range(self.dim)]
        b = [-sum(n[i] for n in normals) for i in range(self.dim)]
        return lp.nonneg_solution(A, b) is not None

    def vertices(self) -> list[Vector]:
        """Vertices of the (closed) polytope by solving every square subsystem."""
        eqs = self.equalities
        ineqs = self.inequalities
        need = self.dim - len(eqs)
        out: set[Vector] = set()
        if need < 0:
            return []
        for tight in itertools.combinations(ineqs, need):
            rows = [c.coeffs for c in eqs] + [c.coeffs for c in tight]
            sol = lp.solve_square(rows, [c.rhs for c in eqs] + [c.rhs for c in tight])
            if sol is not None and self.contains(sol):
                out.add(tuple(sol))
        return sorted(out)

    def to_json(self) -> dict:
        def enc(c: Constraint) -> dict:
            return {"coeffs": [format_fraction(a) for a in c.coeffs], "rhs": format_fraction(c.rhs)}

        bounded = self.recession_bounded()
        return {
            "equalities": [enc(c) for c in self.equalities],
            "inequalities": [enc(c) for c in self.inequalities],
            "vertices": [[format_fraction(x) for x in v] for v in self.vertices()] if bounded else [],
            "bounded": bounded,
        }


def _vec(chi: Sequence[int]) -> Vector:
    return tuple(Fraction(x) for x in chi)


def degree_polytope(
    pkg: TorusPackage, lifts: Sequence[Sequence[int]], d1: Fraction, d2: Fraction, B: Fraction
) -> DegreePolytope:
    """{d : d(vartheta) = d1, d(epsilon) = d2, -d(vartheta_i) <= B}."""
    cons = [Constraint(_vec(pkg.vartheta), Fraction(d1), True), Constraint(_vec(pkg.epsilon), Fraction(d2), True)]
    cons += [Constraint(tuple(-x for x in _vec(l)), Fraction(B)) for l in lifts]
    return DegreePolytope(pkg.rank, tuple(cons))


# component counts and degree ranges


@dataclass(frozen=True)
class ComponentBounds:
    total: Fraction  # d + s_max (2g - 2 + k)
    delta: Fraction
    empty: bool
    delta_minus_wlog_sum_min: Fraction
    delta_plus_wlog_sum_max: Fraction
    delta_minus_max: int
    delta_plus_max: int
    delta_zero_max: int
    wlog_min: int
    wlog_max: int
    deg_L_min: Fraction
    deg_L_max: Fraction

    @property
    def components_max(self) -> int:
        return self.delta_minus_max + self.delta_plus_max + self.delta_zero_max

    @property
    def deg_L_abs_max(self) -> Fraction:
        return max(abs(self.deg_L_min), abs(self.deg_L_max))

    def to_json(self) -> dict:
        out = {}
        for key, val in self.__dict__.items():
            out[key] = format_fraction(val) if isinstance(val, Fraction) else val
        out["components_max"] = self.components_max
        return out


def component_degree_bounds(omega: OmegaTriple, g: int, k: int, d: Fraction, D: int) -> ComponentBounds:
    """Counts of components with deg_wlog < 0, > 0, = 0 and the range of
    deg_L on a single component, for Omega-stable quasimaps of type (g, k, d).

    Every component contributes deg_L + s_max deg_wlog >= 0 to the total
    d + s_max(2g - 2 + k), and a component with deg_wlog < 0 contributes at
    least delta |deg_wlog|; a component with deg_wlog = 0 contributes at
    least 1/D."""
    s = s_max(omega)
    delta = lower_bound_delta(omega, D)
    chi = 2 * g - 2 + k
    total = Fraction(d) + s * chi
    if total < 0:
        zero = Fraction(0)
        return ComponentBounds(total, delta, True, zero, zero, 0, 0, 0, 0, 0, zero, zero)
    minus_sum = -total / delta
    plus_sum = chi + total / delta
    minus_max = math.floor(total / delta)
    plus_max = max(0, math.floor(plus_sum))
    zero_max = math.floor(total * D)
    if minus_max == 0:
        wlog_min = 0
    else:
        # deg_wlog = -2 only for a smooth rational curve without markings
        wlog_min = -2 if (g, k) == (0, 0) else -1
    wlog_max = plus_max
    lows = []
    highs = []
    for w in range(wlog_min, wlog_max + 1):
        lows.append(-(s + delta) * w if w < 0 else -s * w)
        highs.append(total - s * w)
    return ComponentBounds(
        total, delta, False, minus_sum, plus_sum, minus_max, plus_max, zero_max, wlog_min, wlog_max, min(lows), max(highs)
    )


def ray_monomial(pkg: TorusPackage, support: frozenset[int], ray: Sequence[int]) -> Optional[tuple[tuple[int, ...], int]]:
    """(exponents, k) of a monomial supported in ``support`` with G-weight
    k * ray, found by scaling a rational cone combination."""
    idx = sorted(support)
    coeffs = lp.cone_combination([pkg.g_weights[j] for j in idx], ray)
    if coeffs is None:
        return None
    k = lcm(c.denominator for c in coeffs)
    exps = [0] * pkg.num_coords
    for j, c in zip(idx, coeffs):
        exps[j] = int(c * k)
    return tuple(exps), k


@lru_cache(maxsize=64)
def _ray_charge_ratios(pkg: TorusPackage, rays: RaySystem) -> tuple[Fraction, ...]:
    """c / k for a monomial of character k vartheta_i + c epsilon, one per
    stable support and ray."""
    out = []
    for I in stable_supports(pkg):
        for ray, lift in zip(rays.rays, rays.lifts):
            found = ray_monomial(pkg, I, ray)
            if found is None:
                raise NoValidRays(f"ray {ray} is not in the cone of support {sorted(I)}")
            exps, k = found
            chi = [sum(row[j] * e for j, e in enumerate(exps)) for row in pkg.weights]
            c = pkg.epsilon_part(chi) - k * pkg.epsilon_part(lift)
            out.append(Fraction(c, k))
    return tuple(out)


def ray_bound(pkg: TorusPackage, rays: RaySystem, wlog_min: int, wlog_max: int) -> Fraction:
    """A bound on -d(vartheta_i) valid on every component.

    The generic point of a component has a stable support I, and a
    monomial f supported in I of character k vartheta_i + c epsilon gives a
    nonzero section, so k d(vartheta_i) + c deg_wlog >= 0."""
    best = Fraction(0)
    for r in _ray_charge_ratios(pkg, rays):
        best = max(best, r * wlog_min, r * wlog_max)
    return best


def certificate_polytope(pkg: TorusPackage, rays: RaySystem, bounds: ComponentBounds, B: Fraction) -> DegreePolytope:
    vt, eps = _vec(pkg.vartheta), _vec(pkg.epsilon)
    neg = lambda v: tuple(-x for x in v)  # noqa: E731
    cons = [
        Constraint(vt, bounds.deg_L_max),
        Constraint(neg(vt), -bounds.deg_L_min),
        Constraint(eps, Fraction(bounds.wlog_max)),
        Constraint(neg(eps), Fraction(-bounds.wlog_min)),
    ]
    cons += [Constraint(neg(_vec(l)), Fraction(B)) for l in rays.lifts]
    return DegreePolytope(pkg.rank, tuple(cons))


def certify_bounded(
    pkg: TorusPackage, omega: OmegaTriple, g: int, k: int, d: Fraction, B: Optional[Fraction] = None
) -> dict:
    n0, D = n0_and_D(pkg)
    rays = select_theta_rays(pkg)
    bounds = component_degree_bounds(omega, g, k, d, D)
    if bounds.empty:
        return {
            "n0": n0,
            "D": D,
            "empty": True,
            "reason": "d + s_max(2g-2+k) < 0 while every component contributes a non-negative amount",
            "rays": [list(r) for r in rays.rays],
            "lifts": [list(l) for l in rays.lifts],
            "component_bounds": bounds.to_json(),
        }
    B_value = Fraction(B) if B is not None else ray_bound(pkg, rays, bounds.wlog_min, bounds.wlog_max)
    poly = certificate_polytope(pkg, rays, bounds, B_value)
    return {
        "n0": n0,
        "D": D,
        "empty": False,
        "rays": [list(r) for r in rays.rays],
        "lifts": [list(l) for l in rays.lifts],
        "B": format_fraction(B_value),
        "polytope": poly.to_json(),
        "component_bounds": bounds.to_json(),
    }
