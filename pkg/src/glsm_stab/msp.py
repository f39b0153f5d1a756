"""Automorphism finiteness for irreducible genus-0 MSP fields whose pointed
curve has infinitely many automorphisms (at most two special points).

The fields are phi in H^0(L)^5, rho in H^0(L^-5 (x) w_log), mu in H^0(L (x) N)
and nu in H^0(N).  Each marking is an orbifold point where (L, N) has
monodromy (a, b) in (Z/5)^2; a section of a bundle with nontrivial monodromy
m at a marking vanishes there to order (m mod 5)/5 at least.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import InconsistentFlags

FIELDS = ("phi", "rho", "mu", "nu")
# pairs that may never vanish simultaneously
PAIRS = (("phi", "mu"), ("mu", "nu"), ("rho", "nu"))


@dataclass(frozen=True)
class MspComponent:
    """One smooth genus-0 component with ``s`` markings and the set of
    fields that vanish identically."""

    s: int
    deg_L: Fraction
    deg_N: Fraction
    zero: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg_L", Fraction(self.deg_L))
        object.__setattr__(self, "deg_N", Fraction(self.deg_N))
        object.__setattr__(self, "zero", frozenset(self.zero))
        if self.s not in (0, 1, 2):
            raise InconsistentFlags("only s in {0, 1, 2} gives a pointed curve with infinite automorphisms")
        if not self.zero <= set(FIELDS):
            raise InconsistentFlags(f"unknown field names in {sorted(self.zero)}")
        if (5 * self.deg_L).denominator != 1 or (5 * self.deg_N).denominator != 1:
            raise InconsistentFlags("degrees must lie in (1/5)Z")

    @property
    def deg_wlog(self) -> int:
        return self.s - 2

    def field_degree(self, name: str) -> Fraction:
        dL, dN, w = self.deg_L, self.deg_N, self.deg_wlog
        return {"phi": dL, "rho": -5 * dL + w, "mu": dL + dN, "nu": dN}[name]


def _monodromy(name: str, a: int, b: int) -> int:
    if name == "phi":
        return a % 5
    if name == "mu":
        return (a + b) % 5
    if name == "nu":
        return b % 5
    return 0


def _candidate_monodromies(data: MspComponent) -> Iterator[tuple[tuple[int, int], ...]]:
    """Assignments whose total monodromy matches the fractional parts of the
    degrees of L and N (the other fields then have integral coarse degree)."""
    target_a = int(5 * data.deg_L) % 5
    target_b = int(5 * data.deg_N) % 5
    if data.s == 0:
        if target_a == 0 and target_b == 0:
            yield ()
        return
    for head in itertools.product(itertools.product(range(5), repeat=2), repeat=data.s - 1):
        a_last = (target_a - sum(a for a, _ in head)) % 5
        b_last = (target_b - sum(b for _, b in head)) % 5
        yield head + ((a_last, b_last),)


def _consistent_with(data: MspComponent, monos: tuple[tuple[int, int], ...]) -> bool:
    # all quantities below are measured in units of 1/5
    forced = {n: [_monodromy(n, a, b) for a, b in monos] for n in FIELDS}
    coarse = {n: int(5 * data.field_degree(n)) - sum(forced[n]) for n in FIELDS}

    def nowhere_zero(n: str) -> bool:
        # phi is a 5-vector: a base-point-free one exists as soon as the
        # coarse degree is non-negative; a single section needs degree 0
        if any(forced[n]):
            return False
        return coarse[n] >= 0 if n == "phi" else coarse[n] == 0

    for n in FIELDS:
        if n not in data.zero and coarse[n] < 0:
            return False
    for x, y in PAIRS:
        zx, zy = x in data.zero, y in data.zero
        if zx and zy:
            return False
        if zx and not nowhere_zero(y):
            return False
        if zy and not nowhere_zero(x):
            return False
        if not zx and not zy and any(fx and fy for fx, fy in zip(forced[x], forced[y])):
            return False
    return True


def find_monodromy(data: MspComponent) -> Optional[tuple[tuple[int, int], ...]]:
    """A monodromy assignment at the markings realizing the data, if any."""
    # cheap necessary conditions: monodromy only lowers coarse degrees
    if any(n not in data.zero and data.field_degree(n) < 0 for n in FIELDS):
        return None
    if any(x in data.zero and y in data.zero for x, y in PAIRS):
        return None
    for monos in _candidate_monodromies(data):
        if _consistent_with(data, monos):
            return monos
    return None


def check_consistent(data: MspComponent) -> None:
    if find_monodromy(data) is None:
        raise InconsistentFlags(f"no MSP field realizes {data}")


def msp_aut_is_finite(data: MspComponent) -> bool:
    """Decide finiteness of Aut by the case analysis on deg(w_log) and on the
    sign of deg(rho)."""
    check_consistent(data)
    dL, dN, w = data.deg_L, data.deg_N, data.deg_wlog
    if w == 0:
        # every field lives in a degree-0 bundle exactly when dL = dN = 0
        return not (dL == 0 and dN == 0)
    if data.field_degree("rho") >= 0:
        # rho is allowed to be nonzero; the translation-invariant case
        return dL != Fraction(-1, 5)
    # rho vanishes, nu trivializes N, and the field is a map to P^5 of degree dL
    return dL != 0


def positivity(data: MspComponent, A: Fraction) -> bool:
    """deg(L (x) N^2 (x) w_log^A) > 0."""
    return data.deg_L + 2 * data.deg_N + A * data.deg_wlog > 0


def enumerate_consistent(bound: int = 3) -> Iterator[MspComponent]:
    """All consistent inputs with degrees in (1/5)Z within [-bound, bound];
    degrees are integral when there are no markings."""
    fifths = [Fraction(i, 5) for i in range(-5 * bound, 5 * bound + 1)]
    integers = [Fraction(i) for i in range(-bound, bound + 1)]
    flag_sets = [frozenset(c) for r in range(len(FIELDS) + 1) for c in itertools.combinations(FIELDS, r)]
    for s in (0, 1, 2):
        values = integers if s == 0 else fifths
        for dL in values:
            for dN in values:
                for zero in flag_sets:
                    data = MspComponent(s, dL, dN, zero)
                    if find_monodromy(data) is not None:
                        yield data
