"""Independent reference computations used by the tests.

Nothing here calls into glsm_stab's LP or lattice code: cone membership
goes through Caratheodory subsets solved with sympy, lattice indices through
determinants of maximal minors.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

from sympy import Matrix, Rational


def _solve_exact(cols: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[Fraction]]:
    M = Matrix([[Rational(c[i]) for c in cols] for i in range(len(target))])
    t = Matrix([Rational(v) for v in target])
    try:
        sol, params = M.gauss_jordan_solve(t)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(x.p), int(x.q)) for x in sol]


def cone_combination_bruteforce(gens: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[Fraction]]:
    """Non-negative coefficients with sum c_i gens_i = target, searched over
    every linearly independent subset of the generators."""
    if all(v == 0 for v in target):
        return [Fraction(0)] * len(gens)
    dim = len(target)
    for size in range(1, min(dim, len(gens)) + 1):
        for idx in itertools.combinations(range(len(gens)), size):
            cols = [gens[i] for i in idx]
            if Matrix([list(c) for c in cols]).rank() != size:
                continue
            sol = _solve_exact(cols, target)
            if sol is not None and all(x >= 0 for x in sol):
                full = [Fraction(0)] * len(gens)
                for i, x in zip(idx, sol):
                    full[i] = x
                return full
    return None


def in_cone_bruteforce(gens: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    return cone_combination_bruteforce(gens, target) is not None


def in_interior_bruteforce(gens: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Interior of a full-dimensional cone: target is strictly inside every
    supporting hyperplane spanned by dim - 1 of the generators."""
    dim = len(target)
    if not gens or Matrix([list(g) for g in gens]).rank() < dim:
        return False
    if not in_cone_bruteforce(gens, target):
        return False
    for rows in itertools.combinations(gens, dim - 1):
        M = Matrix([list(r) for r in rows]) if rows else Matrix.zeros(0, dim)
        if M.rank() != dim - 1:
            continue
        n = M.nullspace()[0] if rows else Matrix([1])
        vals = [sum(n[i] * g[i] for i in range(dim)) for g in gens]
        if all(v >= 0 for v in vals):
            sign = 1
        elif all(v <= 0 for v in vals):
            sign = -1
        else:
            continue
        if sign * sum(n[i] * target[i] for i in range(dim)) <= 0:
            return False
    return True


def gcd_of_maximal_minors(columns: Sequence[Sequence[int]], dim: int) -> float | int:
    """Index of the subgroup of Z^dim spanned by the columns: the gcd of
    the dim x dim minors, or infinity when they all vanish."""
    if dim == 0:
        return 1
    g = 0
    for idx in itertools.combinations(range(len(columns)), dim):
        M = Matrix([[columns[j][i] for j in idx] for i in range(dim)])
        g = math.gcd(g, abs(int(M.det())))
    return g if g else math.inf


def msp_semistable_formula(support: frozenset[str]) -> bool:
    """{(x, u) != 0} and {(u, v) != 0} and {(p, v) != 0} on a support."""
    has_x = any(n.startswith("x") for n in support)
    return (has_x or "u" in support) and ("u" in support or "v" in support) and ("p" in support or "v" in support)
