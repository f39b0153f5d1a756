"""The blowup delta-reduction on pairs of vanishing-order vectors.

lambda records the (charge-shifted) orders of the coordinate sections along a
divisor D1 through a point of the special fiber, mu their orders along the
fiber component C.  Blowing up the point replaces C by the exceptional curve
and mu by lambda + mu - min(lambda + mu); lambda is unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BadMu, DeltaZero, NotNormalized


@dataclass(frozen=True)
class ReductionPair:
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(int(v) for v in self.lam))
        object.__setattr__(self, "mu", tuple(int(v) for v in self.mu))
        if len(self.lam) != len(self.mu) or not self.lam:
            raise NotNormalized("lambda and mu must be nonempty and of equal length")

    @property
    def normalized(self) -> bool:
        return min(self.lam) == 0 and min(self.mu) == 0 and min(self.lam + self.mu) >= 0


@dataclass(frozen=True)
class ReductionTrace:
    states: tuple[ReductionPair, ...] = field(default_factory=tuple)
    deltas: tuple[int, ...] = field(default_factory=tuple)

    @property
    def steps(self) -> int:
        return len(self.states) - 1


def delta(p: ReductionPair) -> int:
    if not p.normalized:
        raise NotNormalized(f"pair {p.lam}/{p.mu} is not normalized")
    return min(m for l, m in zip(p.lam, p.mu) if l == 0) + min(l for l, m in zip(p.lam, p.mu) if m == 0)


def blowup_step(p: ReductionPair) -> ReductionPair:
    if delta(p) == 0:
        raise DeltaZero("delta is already 0; nothing to blow up")
    sums = [l + m for l, m in zip(p.lam, p.mu)]
    low = min(sums)
    return ReductionPair(p.lam, tuple(s - low for s in sums))


def reduce(p: ReductionPair) -> ReductionTrace:
    """Blow up until delta = 0.  The trace lists every state with its delta;
    a pair that already has delta 0 gives a trace without steps."""
    states = [p]
    deltas = [delta(p)]
    while deltas[-1] > 0:
        states.append(blowup_step(states[-1]))
        deltas.append(delta(states[-1]))
    return ReductionTrace(tuple(states), tuple(deltas))


def pair_from_orders(
    ord_d1: Sequence[int], ord_c: Sequence[int], charges: Optional[Sequence[int]] = None
) -> ReductionPair:
    if min(ord_c) != 0:
        raise BadMu(f"min of the fiber orders {list(ord_c)} must be 0")
    shifted = [o + c for o, c in zip(ord_d1, charges)] if charges is not None else list(ord_d1)
    low = min(shifted)
    return ReductionPair(tuple(s - low for s in shifted), tuple(ord_c))
