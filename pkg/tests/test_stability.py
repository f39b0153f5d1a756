import itertools
import random
from fractions import Fraction

import pytest

from glsm_stab import catalog
from glsm_stab.cli import stable_example
from glsm_stab.errors import AllZeroNearX, EmptyInterval, InconsistentDivisor, NotNormalized
from glsm_stab.package import s_max
from glsm_stab.quasimap import QuasimapGraph, SectionDivisor, component
from glsm_stab.stability import (
    A_INFINITY,
    AUTO_POSITIVE,
    CONSISTENCY,
    DELTA_MINUS,
    FINITE_A,
    NEEDS_DEGREE,
    OMEGA1,
    OMEGA2,
    OMEGA3,
    adjoin_products,
    chamber_representatives,
    check_omega1,
    check_omega2,
    check_omega3,
    check_stable,
    classify_components,
    consistency_lower_bound,
    lower_bound_delta,
    normalize_quasimap,
    normalized_min_order,
    push_to_projective,
    reindex_quasimap,
    walls,
)

from generators import random_quasimap

F = Fraction
MSP = catalog.msp_quintic()
MSP_OMEGA = catalog.msp_omega(MSP)


def single(genus, deg_L, points, divisors):
    return QuasimapGraph((component(genus, deg_L, points),), (), tuple(divisors))


def nowhere_zero(n):
    return [SectionDivisor() for _ in range(n)]


# Omega-1


def test_omega1_passes_without_base_points():
    om = catalog.pn_omega((0, 0), F(1))
    divs = [SectionDivisor(frozenset(), {(0, "q"): 1}), SectionDivisor(frozenset(), {(0, "r"): 1})]
    xi = single(0, 1, [("m", "marking"), ("q",), ("r",)], divs)
    # deg_wlog = -1 makes Omega-3 fail, but Omega-1 is clean
    assert check_omega1(xi, om).failures == ()


def test_omega1_flags_identically_zero_component():
    om = catalog.pn_omega((0, 0), F(1))
    xi = single(1, 1, [("q",)], [SectionDivisor(frozenset({0})), SectionDivisor(frozenset({0}))])
    rep = check_omega1(xi, om)
    assert [(f.condition, f.location) for f in rep.failures] == [(OMEGA1, "component 0")]
    assert check_stable(xi, om).conditions() == {OMEGA1}


def test_omega1_flags_base_point_at_node():
    # every coordinate has order at least 1/2 on both branches of the node
    om = catalog.pn_omega((0, 0), F(1))
    comps = (
        component(1, F(3, 2), [("n", "node", 2), ("q",)]),
        component(1, F(3, 2), [("n", "node", 2), ("q",)]),
    )
    half = F(1, 2)
    divs = [
        SectionDivisor(frozenset(), {(0, "n"): half, (0, "q"): 1, (1, "n"): half, (1, "q"): 1}),
        SectionDivisor(frozenset(), {(0, "n"): F(3, 2), (1, "n"): F(3, 2)}),
    ]
    xi = QuasimapGraph(comps, (((0, "n"), (1, "n")),), tuple(divs))
    rep = check_omega1(xi, om)
    assert [(f.condition, f.location, f.witness) for f in rep.failures] == [(OMEGA1, "node 0/n", half)]


def test_inconsistent_degrees_are_rejected():
    om = catalog.pn_omega((0, 0), F(1))
    xi = single(1, 2, [("q",)], [SectionDivisor(frozenset(), {(0, "q"): 1}), SectionDivisor(frozenset(), {(0, "q"): 2})])
    with pytest.raises(InconsistentDivisor):
        check_stable(xi, om)
    bad_order = single(1, F(1, 2), [("m", "marking", 1)], [SectionDivisor(frozenset(), {(0, "m"): F(1, 2)})] * 2)
    with pytest.raises(InconsistentDivisor):
        check_omega1(bad_order, om)


# Omega-2


def pn_point(orders):
    """Genus-1 component of degree 2 over P^1 with charges (0, 1); the given
    orders sit at q and the rest at r."""
    om = catalog.pn_omega((0, 1), F(3, 2))
    divs = [SectionDivisor(frozenset(), {(0, "q"): o, (0, "r"): 2 - o}) for o in orders]
    return om, single(1, 2, [("q",), ("r",)], divs)


def test_omega2_threshold_pass():
    om, xi = pn_point((2, 0))
    assert normalized_min_order(xi, (0, "q"), om) == 1
    assert check_omega2(xi, om).failures == ()


def test_omega2_threshold_fail():
    om, xi = pn_point((2, 1))
    rep = check_omega2(xi, om)
    assert [(f.condition, f.location, f.witness) for f in rep.failures] == [(OMEGA2, "point 0/q", 2)]


def test_normalized_min_order_msp_point():
    orders = [3] * 5 + [1, 0]
    divs = [SectionDivisor(frozenset(), {(0, "q"): o}) for o in orders]
    xi = single(1, 1, [("q",)], divs)
    assert normalized_min_order(xi, (0, "q"), MSP_OMEGA) == F(1, 5)
    om2, xi2 = adjoin_products(MSP_OMEGA, xi, [(5, 0)])
    assert om2.S[-1].bidegree.k == 2 and om2.S[-1].bidegree.c == 0
    assert xi2.order(len(om2.S) - 1, (0, "q")) == 4
    assert normalized_min_order(xi2, (0, "q"), om2) == F(1, 5)


def test_normalized_min_order_bounded_by_nonvanishing_slope():
    xi = single(1, 1, [("q",)], nowhere_zero(7))
    assert normalized_min_order(xi, (0, "q"), MSP_OMEGA) <= s_max(MSP_OMEGA)


def test_normalized_min_order_all_zero():
    om = catalog.pn_omega((0, 0), F(1))
    xi = single(1, 1, [("q",)], [SectionDivisor(frozenset({0}))] * 2)
    with pytest.raises(AllZeroNearX):
        normalized_min_order(xi, (0, "q"), om)


def test_s_independence_of_min_order_fuzz():
    rng = random.Random(7)
    pairs = list(itertools.combinations_with_replacement(range(len(MSP_OMEGA.S)), 2))
    for _ in range(100):
        orders = [rng.choice([0, 0, 1, 2, 3, F(1, 5), F(7, 5)]) for _ in MSP_OMEGA.S]
        zero = [rng.random() < 0.2 for _ in MSP_OMEGA.S]
        if all(zero):
            zero[0] = False
        divs = [SectionDivisor(frozenset({0}) if z else frozenset(), {} if z else {(0, "q"): o}) for o, z in zip(orders, zero)]
        xi = single(1, 1, [("q", "marking", 5)], divs)
        om2, xi2 = adjoin_products(MSP_OMEGA, xi, pairs)
        assert normalized_min_order(xi, (0, "q"), MSP_OMEGA) == normalized_min_order(xi2, (0, "q"), om2)


# Omega-3 and component classes


@pytest.mark.parametrize("deg_L, ok", [(1, False), (2, True)])
def test_omega3_rational_curve_without_special_points(deg_L, ok):
    om = catalog.pn_omega((0, 0), F(1, 2))
    xi = single(0, deg_L, [], nowhere_zero(2))
    assert check_omega3(xi, om).stable == ok


@pytest.mark.parametrize("deg_L, ok", [(0, False), (F(1, 5), True)])
def test_omega3_genus_one_sign_of_degree(deg_L, ok):
    xi = single(1, deg_L, [], nowhere_zero(7))
    for mode in (FINITE_A, A_INFINITY):
        assert check_omega3(xi, MSP_OMEGA, mode).stable == ok


def test_a_infinity_mode_rejects_rational_tails():
    xi = single(0, 5, [("m", "marking")], nowhere_zero(7))
    assert not check_omega3(xi, MSP_OMEGA, A_INFINITY).stable
    assert check_omega3(xi, MSP_OMEGA, FINITE_A).stable


def test_classify_components():
    comps = (
        component(2, 0, [("n", "node")]),
        component(1, 0, [("n", "node"), ("k", "node")]),
        component(0, 0, [("k", "node")]),
    )
    xi = QuasimapGraph(comps, (((0, "n"), (1, "n")), ((1, "k"), (2, "k"))), tuple(nowhere_zero(7)))
    assert classify_components(xi, MSP_OMEGA) == [AUTO_POSITIVE, AUTO_POSITIVE, DELTA_MINUS]
    lone = single(1, 0, [], nowhere_zero(7))
    assert classify_components(lone, MSP_OMEGA) == [NEEDS_DEGREE]
    assert not check_omega3(lone, MSP_OMEGA).stable


# the consistency lower bound


def test_lower_bound_delta():
    assert lower_bound_delta(MSP_OMEGA, 5) == F(1, 10)
    assert lower_bound_delta(catalog.ci_omega(5, (2, 3)), 3) == F(1, 12)


def test_consistency_lower_bound_examples():
    tail = single(0, F(1, 5), [("m", "marking", 5)], nowhere_zero(7))
    rep = consistency_lower_bound(tail, MSP_OMEGA, 5)
    assert rep.conditions() == {CONSISTENCY}
    assert rep.failures[0].witness == F(1, 5) - (F(1, 5) + F(1, 10))
    flat = single(1, 0, [], nowhere_zero(7))
    assert consistency_lower_bound(flat, MSP_OMEGA, 5).stable
    pos = single(2, -F(1, 5) * 2 + F(1, 5), [], nowhere_zero(7))
    assert consistency_lower_bound(pos, MSP_OMEGA, 5).stable


# check_stable end to end


def test_stable_example_is_stable():
    pf, xi = stable_example()
    rep = check_stable(xi, pf.omega)
    assert rep.stable and rep.verdict == "stable"


def test_length_two_base_point_fails_omega2():
    pts = [("b",)]
    divs = [SectionDivisor(frozenset(), {(0, "b"): 2})] * 6 + [SectionDivisor(frozenset(), {(0, "b"): 10})]
    xi = single(1, 2, pts, divs)
    rep = check_stable(xi, MSP_OMEGA)
    assert rep.conditions() == {OMEGA2}
    assert rep.failures[0].witness == 2


# walls


def test_walls_msp_window_has_no_candidates():
    M, cands = walls(MSP, MSP_OMEGA, 1, 1, F(1), (F(1, 5), F(2, 5)), closed_right=False)
    assert cands == [] and M == 10


def test_walls_msp_genus_zero_extra_wall():
    _, cands = walls(MSP, MSP_OMEGA, 0, 0, F(3, 5), (F(1, 5), F(2, 5)), closed_right=False)
    assert cands == [F(3, 10)]


def test_walls_quasimap_p1():
    pkg = catalog.quasimap_p1()
    om = catalog.coordinate_omega(pkg, F(1))
    assert walls(pkg, om, 0, 5, F(3), (F(0), F(5)))[1] == [1, 2, 3, 4, 5]
    assert walls(pkg, om, 0, 2, F(3), (F(0), F(3)))[1] == [1, 2, 3]


def test_walls_reject_bad_intervals():
    with pytest.raises(EmptyInterval):
        walls(MSP, MSP_OMEGA, 1, 1, F(1), (F(2, 5), F(1, 5)))
    with pytest.raises(EmptyInterval):
        walls(MSP, MSP_OMEGA, 1, 1, F(1), (F(0), F(1)))


def test_chamber_representatives():
    assert chamber_representatives(2, F(0), F(1)) == [0, F(1, 2), 1]


def _verdicts_constant_between_walls(pkg, omega, xi, top):
    smax = s_max(omega)
    M, cands = walls(pkg, omega, xi.genus, xi.markings_total, xi.degree, (smax, top))
    edges = [smax] + cands + [top]
    for lo, hi in zip(edges, edges[1:]):
        # three sample points strictly inside each chamber
        samples = [lo + (hi - lo) * F(j, 4) for j in (1, 2, 3)]
        verdicts = {check_stable(xi, omega.with_A(a)).verdict for a in samples}
        if len(verdicts) != 1:
            return False
    return True


def test_verdict_constant_between_candidate_walls_fuzz():
    rng = random.Random(3)
    for _ in range(60):
        xi = random_quasimap(rng, MSP_OMEGA)
        assert _verdicts_constant_between_walls(MSP, MSP_OMEGA, xi, F(3))


def test_tail_witness_flips_exactly_at_candidate():
    pkg = catalog.quasimap_p1()
    om = catalog.coordinate_omega(pkg, F(1))
    comps = (component(1, 1, [("n", "node"), ("q",)]), component(0, 2, [("n", "node"), ("r",)]))
    divs = [
        SectionDivisor(frozenset(), {(0, "q"): 1, (1, "r"): 2}),
        SectionDivisor(frozenset(), {(0, "n"): 1, (1, "n"): 2}),
    ]
    xi = QuasimapGraph(comps, (((0, "n"), (1, "n")),), tuple(divs))
    M, cands = walls(pkg, om, xi.genus, xi.markings_total, xi.degree, (F(0), F(5)))
    assert F(2) in cands
    assert check_stable(xi, om.with_A(2 - F(1, M))).stable
    assert not check_stable(xi, om.with_A(F(2))).stable
    assert check_stable(xi, om.with_A(F(2))).conditions() == {OMEGA3}


# rewrites


def test_normalization_and_push_on_stable_example():
    pf, xi = stable_example()
    om2, xi2 = normalize_quasimap(pf.omega, xi)
    assert all(f.bidegree.k == 1 for f in om2.S)
    assert check_stable(xi2, om2).stable
    target, tom, pxi = push_to_projective(MSP, om2, xi2)
    assert target.weights[1] == (0, 0, 0, 0, 0, 0, 1)
    assert check_stable(pxi, tom).stable


def test_push_keeps_omega2_failure_location():
    xi = single(1, 2, [("b",)], [SectionDivisor(frozenset(), {(0, "b"): 2})] * 6 + [SectionDivisor(frozenset(), {(0, "b"): 10})])
    om2, xi2 = normalize_quasimap(MSP_OMEGA, xi)
    _, tom, pxi = push_to_projective(MSP, om2, xi2)
    loc = lambda rep: [(f.condition, f.location) for f in rep.failures]  # noqa: E731
    assert loc(check_stable(pxi, tom)) == loc(check_stable(xi, MSP_OMEGA)) == [(OMEGA2, "point 0/b")]


def test_push_needs_normalized_omega():
    pf, xi = stable_example()
    with pytest.raises(NotNormalized):
        push_to_projective(MSP, pf.omega, xi)


def test_normalization_and_push_preserve_verdicts_fuzz():
    rng = random.Random(10)
    verdicts = set()
    for _ in range(100):
        A = rng.choice([F(1, 4), F(3, 10), F(11, 30), F(1, 2), F(1), F(3, 2)])
        om = MSP_OMEGA.with_A(A)
        xi = random_quasimap(rng, om)
        rep = check_stable(xi, om)
        om2, xi2 = normalize_quasimap(om, xi)
        rep2 = check_stable(xi2, om2)
        _, tom, pxi = push_to_projective(MSP, om2, xi2)
        rep3 = check_stable(pxi, tom)
        assert rep.verdict == rep2.verdict == rep3.verdict
        verdicts.add(rep.verdict)
    assert verdicts == {"stable", "unstable"}


def test_reindex_quasimap_preserves_verdict():
    rng = random.Random(4)
    for _ in range(40):
        xi = random_quasimap(rng, MSP_OMEGA)
        for a in (1, 2):
            om2, xi2 = reindex_quasimap(MSP_OMEGA, xi, a)
            assert check_stable(xi2, om2).verdict == check_stable(xi, MSP_OMEGA).verdict
