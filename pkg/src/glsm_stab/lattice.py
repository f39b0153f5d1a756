"""Integer lattice helpers: unimodular completion of a primitive vector and
subgroup indices via the Smith normal form."""
from __future__ import annotations

import math
from functools import reduce
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

IntMatrix = list[list[int]]


def is_primitive(vec: Sequence[int]) -> bool:
    return reduce(math.gcd, (abs(v) for v in vec), 0) == 1


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def unimodular_sending_to_last(vec: Sequence[int]) -> tuple[IntMatrix, IntMatrix]:
    """Return (W, W_inv), integer and mutually inverse, with W @ vec = e_last.

    The rows of W are computed by a Euclidean reduction of ``vec`` where every
    row operation is mirrored (inverted) on the column side of W_inv.
    """
    n = len(vec)
    if not is_primitive(vec):
        raise ValueError(f"{list(vec)} is not primitive")
    v = list(vec)
    W = _identity(n)
    Winv = _identity(n)

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src on (v, W); column_src -= q * column_dst on W_inv
        v[dst] += q * v[src]
        W[dst] = [a + q * b for a, b in zip(W[dst], W[src])]
        for row in Winv:
            row[src] -= q * row[dst]

    def swap(i: int, j: int) -> None:
        v[i], v[j] = v[j], v[i]
        W[i], W[j] = W[j], W[i]
        for row in Winv:
            row[i], row[j] = row[j], row[i]

    def negate(i: int) -> None:
        v[i] = -v[i]
        W[i] = [-a for a in W[i]]
        for row in Winv:
            row[i] = -row[i]

    while sum(1 for x in v if x != 0) > 1:
        piv = min((i for i in range(n) if v[i] != 0), key=lambda i: abs(v[i]))
        for i in range(n):
            if i != piv and v[i] != 0:
                add_row(i, piv, -(v[i] // v[piv]))
    piv = next(i for i in range(n) if v[i] != 0)
    if piv != n - 1:
        swap(piv, n - 1)
    if v[n - 1] < 0:
        negate(n - 1)
    return W, Winv


def mat_vec(M: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in M]


def subgroup_index(columns: Sequence[Sequence[int]], dim: int) -> float | int:
    """Index of the sublattice spanned by ``columns`` inside Z^dim.

    This is the product of the invariant factors, or ``math.inf`` when the
    columns have rank below ``dim``.  For a torus with character lattice Z^dim
    it is also the order of the common kernel of the characters.
    """
    if dim == 0:
        return 1
    if not columns:
        return math.inf
    M = Matrix([[col[i] for col in columns] for i in range(dim)])
    factors = [abs(int(f)) for f in invariant_factors(M, domain=ZZ)]
    nonzero = [f for f in factors if f != 0]
    if len(nonzero) < dim:
        return math.inf
    return math.prod(nonzero)
