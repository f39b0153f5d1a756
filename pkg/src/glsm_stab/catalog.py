"""Built-in example packages together with their standard choice of S."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidPackage
from .package import OmegaTriple, TorusPackage, make_omega

MSP_NAMES = ("x1", "x2", "x3", "x4", "x5", "p", "u", "v")


def msp_quintic() -> TorusPackage:
    """Quintic master-space package: Gamma = (C*)^3 on (x, p, u, v)."""
    weights = (
        (1, 1, 1, 1, 1, -5, 1, 0),
        (0, 0, 0, 0, 0, 0, 1, 1),
        (0, 0, 0, 0, 0, 1, 0, 0),
    )
    return TorusPackage(weights, (0, 0, 1), (1, 2, 0), MSP_NAMES)


def msp_omega(pkg: Optional[TorusPackage] = None, A: Fraction = Fraction(3, 10)) -> OmegaTriple:
    pkg = pkg or msp_quintic()
    S = [pkg.monomial_from_map({f"x{i}": 1, "v": 2}) for i in range(1, 6)]
    S.append(pkg.monomial_from_map({"u": 1, "v": 1}))
    S.append(pkg.monomial_from_map({"u": 10, "p": 1}))
    return make_omega(pkg, S, A)


def msp_x_zero() -> TorusPackage:
    """The coordinate subspace x = 0 of the MSP space (coordinates p, u, v)."""
    pkg = msp_quintic()
    return pkg.restricted(pkg.coord_index(n) for n in ("p", "u", "v"))


def msp_x_zero_omega(A: Fraction = Fraction(3, 10)) -> OmegaTriple:
    pkg = msp_x_zero()
    S = [pkg.monomial_from_map({"u": 1, "v": 1}), pkg.monomial_from_map({"u": 10, "p": 1})]
    return make_omega(pkg, S, A)


def pn_charges(charges: Sequence[int]) -> TorusPackage:
    """P^(N-1) with R-charges c_i: Gamma = C* x C*, x_i of weight (1, c_i)."""
    n = len(charges)
    if n < 1:
        raise InvalidPackage("need at least one coordinate")
    names = tuple(f"x{i + 1}" for i in range(n))
    return TorusPackage(((1,) * n, tuple(int(c) for c in charges)), (0, 1), (1, 0), names)


def pn_omega(charges: Sequence[int], A: Fraction) -> OmegaTriple:
    pkg = pn_charges(charges)
    n = len(charges)
    return make_omega(pkg, [tuple(int(i == j) for j in range(n)) for i in range(n)], A)


def ci_lg(n: int, degrees: Sequence[int]) -> TorusPackage:
    """LG phase of a complete intersection of the given degrees in P^(n-1):
    x_i of weight (1, 0), p_j of weight (-l_j, 1), vartheta = (-1, 0)."""
    s = len(degrees)
    if n < 1 or s < 1 or any(d < 1 for d in degrees):
        raise InvalidPackage("need n >= 1 and positive degrees")
    names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"p{j + 1}" for j in range(s))
    row1 = (1,) * n + tuple(-int(d) for d in degrees)
    row2 = (0,) * n + (1,) * s
    return TorusPackage((row1, row2), (0, 1), (-1, 0), names)


def ci_omega(n: int, degrees: Sequence[int], A: Optional[Fraction] = None, pkg: Optional[TorusPackage] = None) -> OmegaTriple:
    pkg = pkg or ci_lg(n, degrees)
    S = [pkg.monomial_from_map({f"p{j + 1}": 1}) for j in range(len(degrees))]
    if A is None:
        A = Fraction(1, min(degrees)) + 1
    return make_omega(pkg, S, A)


def ci_p_only(n: int, degrees: Sequence[int]) -> TorusPackage:
    """The coordinate subspace x = 0 of the complete-intersection LG space."""
    pkg = ci_lg(n, degrees)
    return pkg.restricted(range(n, n + len(degrees)))


def quasimap(g_weights: Sequence[Sequence[int]], theta: Sequence[int], names: Optional[Sequence[str]] = None) -> TorusPackage:
    """Trivial R-charge: Gamma = G x C*, every coordinate has epsilon weight 0."""
    rows = [tuple(int(v) for v in row) for row in g_weights]
    n = len(rows[0])
    rows.append((0,) * n)
    r = len(rows)
    eps = tuple(int(i == r - 1) for i in range(r))
    vartheta = tuple(int(t) for t in theta) + (0,)
    return TorusPackage(tuple(rows), eps, vartheta, tuple(names) if names else ())


def quasimap_p1() -> TorusPackage:
    return quasimap([[1, 1]], [1], ["x1", "x2"])


def coordinate_omega(pkg: TorusPackage, A: Fraction) -> OmegaTriple:
    """S = all coordinates, for packages where each coordinate is invariant."""
    n = pkg.num_coords
    return make_omega(pkg, [tuple(int(i == j) for j in range(n)) for i in range(n)], A)
