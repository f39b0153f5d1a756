"""Exact Omega-stability computations for torus packages with R-charge."""
from .catalog import ci_lg, ci_omega, msp_omega, msp_quintic, pn_charges, pn_omega, quasimap, quasimap_p1
from .errors import GlsmStabError
from .package import (
    BiDegree,
    MonomialElt,
    OmegaTriple,
    TorusPackage,
    bidegree,
    check_ss_eq_s,
    is_full,
    make_omega,
    n0_and_D,
    s_max,
    semistable_supports,
    stable_supports,
    stabilizer_order,
)
from .quasimap import ComponentData, Point, QuasimapGraph, SectionDivisor
from .reduction import ReductionPair, blowup_step, delta, reduce
from .stability import StabilityReport, check_stable, walls

__version__ = "0.1.0"

__all__ = [
    "BiDegree",
    "ComponentData",
    "GlsmStabError",
    "MonomialElt",
    "OmegaTriple",
    "Point",
    "QuasimapGraph",
    "ReductionPair",
    "SectionDivisor",
    "StabilityReport",
    "TorusPackage",
    "bidegree",
    "blowup_step",
    "check_ss_eq_s",
    "check_stable",
    "ci_lg",
    "ci_omega",
    "delta",
    "is_full",
    "make_omega",
    "msp_omega",
    "msp_quintic",
    "n0_and_D",
    "pn_charges",
    "pn_omega",
    "quasimap",
    "quasimap_p1",
    "reduce",
    "s_max",
    "semistable_supports",
    "stabilizer_order",
    "stable_supports",
    "walls",
]
