"""R-charged torus packages and their invariant-theoretic data.

A package is a torus Gamma = (C*)^r acting on C^N through an integer weight
matrix, together with a primitive character ``epsilon`` (the R-charge
character; its kernel is the gauge group G) and a character ``vartheta``
lifting the polarization theta of G.  Every G-weight computation happens in
the quotient lattice Z^r / Z*epsilon, which is identified with Z^(r-1) by a
unimodular matrix W sending epsilon to the last basis vector.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import lp
from .errors import (
    EmptyEnumeration,
    InvalidPackage,
    NoStableSupport,
    NotInvariant,
    ZeroThetaWeight,
)
from .lattice import is_primitive, mat_vec, subgroup_index, unimodular_sending_to_last
from .rational import lcm

Support = frozenset

STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class BiDegree:
    """theta-weight ``k`` and R-charge ``c`` of a homogeneous invariant."""

    k: int
    c: int

    @property
    def slope(self) -> Fraction:
        if self.k == 0:
            raise ZeroThetaWeight("slope is undefined for theta-weight 0")
        return Fraction(self.c, self.k)

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.k + other.k, self.c + other.c)


@dataclass(frozen=True)
class MonomialElt:
    exponents: tuple[int, ...]
    bidegree: BiDegree
    name: str = ""

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    @property
    def slope(self) -> Fraction:
        return self.bidegree.slope


@dataclass(frozen=True)
class TorusPackage:
    weights: tuple[tuple[int, ...], ...]
    epsilon: tuple[int, ...]
    vartheta: tuple[int, ...]
    coord_names: tuple[str, ...] = ()
    ambient_restriction: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        weights = tuple(tuple(int(v) for v in row) for row in self.weights)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "epsilon", tuple(int(v) for v in self.epsilon))
        object.__setattr__(self, "vartheta", tuple(int(v) for v in self.vartheta))
        r = len(weights)
        if r < 2:
            raise InvalidPackage("the torus must have rank at least 2 (G nontrivial)")
        n = len(weights[0])
        if n == 0 or any(len(row) != n for row in weights):
            raise InvalidPackage("weight matrix rows must have one common positive length")
        if len(self.epsilon) != r or len(self.vartheta) != r:
            raise InvalidPackage("epsilon and vartheta must have length equal to the rank")
        if not is_primitive(self.epsilon):
            raise InvalidPackage(f"epsilon {list(self.epsilon)} is not primitive")
        names = tuple(self.coord_names) or tuple(f"z{j + 1}" for j in range(n))
        if len(names) != n or len(set(names)) != n:
            raise InvalidPackage("coord_names must be N distinct strings")
        object.__setattr__(self, "coord_names", names)
        restr = self.ambient_restriction
        restr = frozenset(range(n)) if restr is None else frozenset(int(i) for i in restr)
        if not restr <= frozenset(range(n)):
            raise InvalidPackage("ambient_restriction must index existing coordinates")
        object.__setattr__(self, "ambient_restriction", restr)
        if not any(self.theta):
            raise InvalidPackage("vartheta must not reduce to the zero character of G")

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def num_coords(self) -> int:
        return len(self.weights[0])

    @cached_property
    def _split(self) -> tuple[list[list[int]], list[list[int]]]:
        return unimodular_sending_to_last(self.epsilon)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.weights)

    def to_g(self, chi: Sequence[int]) -> tuple[int, ...]:
        """Image of a Gamma-character in the G-character lattice Z^(r-1)."""
        return tuple(mat_vec(self._split[0], chi)[:-1])

    def epsilon_part(self, chi: Sequence[int]) -> int:
        return mat_vec(self._split[0], chi)[-1]

    def lift(self, y: Sequence[int], eps_part: int = 0) -> tuple[int, ...]:
        """The Gamma-character with G-image ``y`` and the given epsilon part."""
        return tuple(mat_vec(self._split[1], list(y) + [eps_part]))

    @property
    def theta(self) -> tuple[int, ...]:
        return self.to_g(self.vartheta)

    @cached_property
    def g_weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.to_g(self.column(j)) for j in range(self.num_coords))

    def coord_index(self, name: str) -> int:
        try:
            return self.coord_names.index(name)
        except ValueError:
            raise InvalidPackage(f"unknown coordinate {name!r}") from None

    def with_vartheta(self, vartheta: Sequence[int]) -> "TorusPackage":
        return TorusPackage(self.weights, self.epsilon, tuple(vartheta), self.coord_names, self.ambient_restriction)

    def restricted(self, coords: Iterable[int]) -> "TorusPackage":
        return TorusPackage(self.weights, self.epsilon, self.vartheta, self.coord_names, frozenset(coords))

    def supports(self) -> Iterator[frozenset[int]]:
        """All subsets of the ambient restriction, smallest first."""
        allowed = sorted(self.ambient_restriction)
        for size in range(len(allowed) + 1):
            for combo in itertools.combinations(allowed, size):
                yield frozenset(combo)

    def monomial(self, exponents: Sequence[int], vartheta: Optional[Sequence[int]] = None) -> MonomialElt:
        exps = tuple(int(e) for e in exponents)
        return MonomialElt(exps, bidegree(self, exps, vartheta), monomial_name(self, exps))

    def monomial_from_map(self, powers: dict[str, int]) -> MonomialElt:
        exps = [0] * self.num_coords
        for name, e in powers.items():
            exps[self.coord_index(name)] += int(e)
        return self.monomial(exps)


def monomial_name(pkg: TorusPackage, exponents: Sequence[int]) -> str:
    parts = []
    for name, e in zip(pkg.coord_names, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class OmegaTriple:
    """Stability datum: the set S, the parameter A and the lift vartheta.

    ``epsilon`` rides along so that re-indexing can shift vartheta.
    """

    S: tuple[MonomialElt, ...]
    A: Fraction
    vartheta: tuple[int, ...]
    epsilon: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", tuple(self.S))
        object.__setattr__(self, "A", Fraction(self.A))
        if not self.S:
            raise InvalidPackage("S must be nonempty")
        if any(f.bidegree.k < 1 for f in self.S):
            raise InvalidPackage("every element of S needs theta-weight at least 1")
        if self.A <= s_max(self):
            raise InvalidPackage(f"A = {self.A} must exceed the maximal slope {s_max(self)}")

    def with_A(self, A: Fraction) -> "OmegaTriple":
        return OmegaTriple(self.S, A, self.vartheta, self.epsilon)

    def index_of(self, name: str) -> int:
        for i, f in enumerate(self.S):
            if f.name == name:
                return i
        raise InvalidPackage(f"{name!r} is not an element of S")


def make_omega(pkg: TorusPackage, S: Iterable[Sequence[int] | MonomialElt], A: Fraction) -> OmegaTriple:
    elems = tuple(f if isinstance(f, MonomialElt) else pkg.monomial(f) for f in S)
    return OmegaTriple(elems, A, pkg.vartheta, pkg.epsilon)


def bidegree(pkg: TorusPackage, exponents: Sequence[int], vartheta: Optional[Sequence[int]] = None) -> BiDegree:
    """Solve weights . a = k vartheta + c epsilon with k a non-negative integer."""
    if len(exponents) != pkg.num_coords or any(e < 0 for e in exponents):
        raise NotInvariant("exponent vector has the wrong length or a negative entry")
    if any(e and j not in pkg.ambient_restriction for j, e in enumerate(exponents)):
        raise NotInvariant("monomial uses a coordinate outside the ambient restriction")
    vt = pkg.vartheta if vartheta is None else tuple(vartheta)
    chi = mat_vec(pkg.weights, exponents)
    g_chi = pkg.to_g(chi)
    theta = pkg.to_g(vt)
    j = next(i for i, t in enumerate(theta) if t != 0)
    k = Fraction(g_chi[j], theta[j])
    if k.denominator != 1 or k < 0 or any(g != k * t for g, t in zip(g_chi, theta)):
        raise NotInvariant(f"G-weight {list(g_chi)} is not a non-negative multiple of theta {list(theta)}")
    k_int = int(k)
    c = pkg.epsilon_part(chi) - k_int * pkg.epsilon_part(vt)
    return BiDegree(k_int, c)


def slope(pkg: TorusPackage, f: MonomialElt) -> Fraction:
    return f.bidegree.slope


def s_max(omega: OmegaTriple) -> Fraction:
    return max(f.slope for f in omega.S)


def a_window(omega: OmegaTriple) -> tuple[Fraction, None]:
    """The admissible A form the open half-line (s_max, infinity); None marks infinity."""
    return (s_max(omega), None)


def support_status(pkg: TorusPackage, support: frozenset[int]) -> str:
    cols = [pkg.g_weights[i] for i in sorted(support)]
    theta = pkg.theta
    if not lp.in_cone(cols, theta):
        return UNSTABLE
    if lp.in_cone_interior(cols, theta) and subgroup_index(cols, len(theta)) != math.inf:
        return STABLE
    return STRICTLY_SEMISTABLE


@lru_cache(maxsize=64)
def _support_table(pkg: TorusPackage) -> tuple[tuple[frozenset[int], str], ...]:
    return tuple((I, support_status(pkg, I)) for I in pkg.supports())


def semistable_supports(pkg: TorusPackage) -> dict[frozenset[int], str]:
    """Status of every support inside the ambient restriction."""
    return dict(_support_table(pkg))


def stable_supports(pkg: TorusPackage) -> list[frozenset[int]]:
    return [I for I, st in semistable_supports(pkg).items() if st == STABLE]


def check_ss_eq_s(pkg: TorusPackage) -> tuple[bool, Optional[frozenset[int]]]:
    """Whether semistable = stable and nonempty; the witness is the first
    strictly semistable support (smallest size, then lexicographic)."""
    table = semistable_supports(pkg)
    for I in sorted(table, key=lambda s: (len(s), sorted(s))):
        if table[I] == STRICTLY_SEMISTABLE:
            return False, I
    return any(st == STABLE for st in table.values()), None


def vanishes_on(f: MonomialElt, support: frozenset[int]) -> bool:
    """A monomial is identically zero on points with exactly this support
    iff it uses a coordinate outside it."""
    return not f.support <= support


def is_full(pkg: TorusPackage, S: Sequence[MonomialElt]) -> tuple[bool, Optional[frozenset[int]]]:
    table = semistable_supports(pkg)
    for I in sorted(table, key=lambda s: (len(s), sorted(s))):
        unstable = table[I] == UNSTABLE
        all_vanish = all(vanishes_on(f, I) for f in S)
        if unstable != all_vanish:
            return False, I
    return True, None


def stabilizer_order(pkg: TorusPackage, support: frozenset[int]) -> float | int:
    cols = [pkg.g_weights[i] for i in sorted(support)]
    return subgroup_index(cols, pkg.rank - 1)


@lru_cache(maxsize=64)
def n0_and_D(pkg: TorusPackage) -> tuple[int, int]:
    orders = [stabilizer_order(pkg, I) for I in stable_supports(pkg)]
    if not orders:
        raise NoStableSupport("the package has no stable support")
    return int(max(orders)), lcm(int(o) for o in orders)


def reindex(omega: OmegaTriple, g: int, k: int, d: Fraction, a: int) -> tuple[OmegaTriple, Fraction]:
    """Shift vartheta by -a epsilon: A -> A+a, every c -> c + k_f a,
    and d -> d - a(2g-2+k)."""
    S = tuple(MonomialElt(f.exponents, BiDegree(f.bidegree.k, f.bidegree.c + f.bidegree.k * a), f.name) for f in omega.S)
    vartheta = tuple(v - a * e for v, e in zip(omega.vartheta, omega.epsilon))
    new = OmegaTriple(S, omega.A + a, vartheta, omega.epsilon)
    return new, Fraction(d) - a * (2 * g - 2 + k)


def _graded_vectors(pkg: TorusPackage, total: int) -> Iterator[tuple[list[int], list[int]]]:
    """Yield (exponents, G-weight of the monomial) for every exponent vector
    of total degree at most ``total`` supported on the ambient restriction.
    The yielded lists are reused between iterations."""
    coords = sorted(pkg.ambient_restriction)
    cols = [pkg.g_weights[j] for j in coords]
    exps = [0] * pkg.num_coords
    acc = [0] * (pkg.rank - 1)

    def rec(pos: int, remaining: int) -> Iterator[tuple[list[int], list[int]]]:
        if pos == len(coords):
            yield exps, acc
            return
        j, col = coords[pos], cols[pos]
        yield from rec(pos + 1, remaining)
        for e in range(1, remaining + 1):
            exps[j] = e
            for i, w in enumerate(col):
                acc[i] += w
            yield from rec(pos + 1, remaining - e)
        exps[j] = 0
        for i, w in enumerate(col):
            acc[i] -= remaining * w

    yield from rec(0, total)


def enumerate_invariant_monomials(pkg: TorusPackage, k_max: int, total_degree_max: int) -> list[MonomialElt]:
    """All monomials of total degree at most the bound whose bidegree has
    1 <= k <= k_max.  Plain bounded search; no Hilbert basis."""
    out = []
    theta = pkg.theta
    j0 = next(i for i, t in enumerate(theta) if t != 0)
    t0 = theta[j0]
    for exps, g_chi in _graded_vectors(pkg, total_degree_max):
        q, rem = divmod(g_chi[j0], t0)
        if rem or not 1 <= q <= k_max:
            continue
        if any(g != q * t for g, t in zip(g_chi, theta)):
            continue
        out.append(pkg.monomial(exps))
    return out


def s_max_global(pkg: TorusPackage, k_max: int, total_degree_max: int) -> Fraction:
    elems = enumerate_invariant_monomials(pkg, k_max, total_degree_max)
    if not elems:
        raise EmptyEnumeration("no invariant of positive theta-weight within the bounds")
    return max(f.slope for f in elems)


def good_lift_probe(pkg: TorusPackage, k_max: int, total_degree_max: int) -> bool:
    """True when the slope-0 invariants found within the bounds cut out the
    unstable supports exactly."""
    zero_slope = [f for f in enumerate_invariant_monomials(pkg, k_max, total_degree_max) if f.bidegree.c == 0]
    table = semistable_supports(pkg)
    return all((st == UNSTABLE) == all(vanishes_on(f, I) for f in zero_slope) for I, st in table.items())


def make_common_theta_weight(omega: OmegaTriple) -> tuple[OmegaTriple, int]:
    """Replace f by f^(m/k_f), vartheta by m vartheta and A by m A, where m is
    the lcm of the theta-weights.  Returns the new triple and m."""
    m = lcm(f.bidegree.k for f in omega.S)
    S = []
    for f in omega.S:
        e = m // f.bidegree.k
        name = f.name if e == 1 else f"({f.name})^{e}"
        S.append(MonomialElt(tuple(e * x for x in f.exponents), BiDegree(1, f.bidegree.c * e), name))
    vartheta = tuple(m * v for v in omega.vartheta)
    return OmegaTriple(tuple(S), m * omega.A, vartheta, omega.epsilon), m


def is_projective_quotient(pkg: TorusPackage, total_degree_max: int) -> bool:
    """No nonconstant invariant of theta-weight 0 up to the degree bound."""
    return not any(any(exps) and not any(g) for exps, g in _graded_vectors(pkg, total_degree_max))
