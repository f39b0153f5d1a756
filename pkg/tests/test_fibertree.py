import json
import random
from fractions import Fraction

import pytest

from glsm_stab.errors import InvalidPackage, NegativeOrder, NonzeroDegree, NotTailOrBridge
from glsm_stab.fibertree import (
    MUST_CONTRACT,
    MUST_KEEP,
    FiberComponent,
    FiberNode,
    FiberTree,
    contract_bridge,
    contract_tail,
    contraction_decision,
    omega2_violations,
    random_tree,
    stabilize,
    to_quasimap,
)
from glsm_stab.stability import OMEGA2, OMEGA3, check_stable

F = Fraction


def spread(prefix, rest):
    """One plain point per coordinate carrying that coordinate's remaining degree."""
    n = len(rest)
    return {f"{prefix}{i}": tuple(r if j == i else 0 for j in range(n)) for i, r in enumerate(rest) if r}


def main_with_tail(tail_deg, nb_orders, charges=(0, 1), A=F(3, 2), main_deg=2):
    """Genus-1 main component M with a rational tail E of degree tail_deg."""
    tail_node = tuple(0 if v == 0 else 1 for v in nb_orders)
    # M has deg_wlog 1 and E has deg_wlog -1
    m_rest = tuple(main_deg + c - o for c, o in zip(charges, nb_orders))
    e_rest = tuple(tail_deg - c - o for c, o in zip(charges, tail_node))
    comps = {
        "M": FiberComponent(1, main_deg, 0, spread("p", m_rest)),
        "E": FiberComponent(0, tail_deg, 0, spread("e", e_rest)),
    }
    nodes = {"n1": FiberNode(("M", "E"), {"M": tuple(nb_orders), "E": tail_node})}
    tree = FiberTree(comps, nodes, tuple(charges), A)
    tree.validate()
    return tree


def chain_with_bridges(bridges, charges=(0, 0), A=F(3, 2)):
    """M - B1 - ... - Bk - M2, mains of genus 1 and degree 1, bridges of degree 0."""
    n = len(charges)
    ids = ["M"] + [f"B{i}" for i in range(1, bridges + 1)] + ["M2"]
    comps = {}
    for cid in ids:
        if cid.startswith("B"):
            comps[cid] = FiberComponent(0, 0)
        else:
            comps[cid] = FiberComponent(1, 1, 0, {"p": (1,) + (0,) * (n - 1), "r": (0,) + (1,) * (n - 1)})
    nodes = {
        f"n{i}": FiberNode((a, b), {a: (0,) * n, b: (0,) * n}) for i, (a, b) in enumerate(zip(ids, ids[1:]), start=1)
    }
    tree = FiberTree(comps, nodes, tuple(charges), A)
    tree.validate()
    return tree


# tails


def test_tail_contraction_creates_a_base_point():
    tree = main_with_tail(2, (0, 3))
    assert contraction_decision(tree, "E") == MUST_KEEP
    out, rec = contract_tail(tree, "E")
    assert rec.orders == (2, 4) and rec.into == "M"
    assert out.components["M"].deg_L == 4
    assert omega2_violations(out) == [("M", "q[E]", 2)]
    # the tail itself had positive Omega-3 value 2 - 3/2
    assert tree.components["E"].deg_L - tree.A == F(1, 2)


def test_tail_of_degree_one_contracts_without_violation():
    tree = main_with_tail(1, (3, 0), main_deg=3)
    assert contraction_decision(tree, "E") == MUST_CONTRACT
    out, rec = contract_tail(tree, "E")
    assert rec.orders == (4, 0)
    assert omega2_violations(out) == []


def test_charge_free_tail():
    tree = main_with_tail(1, (0, 0), charges=(0, 0), A=F(1, 2))
    out, rec = contract_tail(tree, "E")
    assert rec.orders == (1, 1)
    assert omega2_violations(out) == [("M", "q[E]", 1)]


def test_negative_orders_are_refused():
    tree = main_with_tail(2, (0, 3))
    tree.charges = (0, 9)
    with pytest.raises(NegativeOrder):
        contract_tail(tree, "E")


# bridges


def test_bridge_contraction_joins_the_mains():
    tree = chain_with_bridges(1)
    assert contraction_decision(tree, "B1") == MUST_CONTRACT
    out, _ = contract_bridge(tree, "B1")
    assert sorted(out.components) == ["M", "M2"]
    assert [set(n.ends) for n in out.nodes.values()] == [{"M", "M2"}]
    out.validate()


def test_bridge_with_degree_is_kept():
    tree = chain_with_bridges(1)
    tree.components["B1"].deg_L = 1
    assert contraction_decision(tree, "B1") == MUST_KEEP
    with pytest.raises(NonzeroDegree):
        contract_bridge(tree, "B1")
    with pytest.raises(NotTailOrBridge):
        contract_bridge(tree, "M")


def test_two_bridges_contract_in_either_order():
    tree = chain_with_bridges(2)
    a, _ = contract_bridge(tree, "B1")
    a, _ = contract_bridge(a, "B2")
    b, _ = contract_bridge(tree, "B2")
    b, _ = contract_bridge(b, "B1")
    assert a.canonical() == b.canonical()


# stabilize


def test_stabilize_contracts_degree_zero_tail():
    comps = {
        "M": FiberComponent(1, 2, 0, {"p": (2, 0), "r": (0, 2)}),
        "E": FiberComponent(0, 0, 0, {}),
    }
    nodes = {"n1": FiberNode(("M", "E"), {"M": (0, 0), "E": (0, 0)})}
    tree = FiberTree(comps, nodes, (0, 0), F(1, 2))
    tree.validate()
    out, log = stabilize(tree)
    assert list(out.components) == ["M"] and len(log) == 1
    omega, xi = to_quasimap(out)
    assert check_stable(xi, omega).stable


def test_stabilize_leaves_stable_tree_alone():
    tree = main_with_tail(2, (0, 3))
    out, log = stabilize(tree)
    assert log == [] and out.canonical() == tree.canonical()


def test_stabilize_removes_bridge():
    out, log = stabilize(chain_with_bridges(1))
    assert sorted(out.components) == ["M", "M2"] and [r.kind for r in log] == ["bridge"]


def test_contraction_decision_needs_tail_or_bridge():
    with pytest.raises(NotTailOrBridge):
        contraction_decision(main_with_tail(2, (0, 3)), "M")


# validation and serialization


def test_validation_rejects_bad_trees():
    tree = main_with_tail(2, (0, 3))
    tree.nodes["n1"].orders["E"] = (1, 1)
    with pytest.raises(InvalidPackage):
        tree.validate()
    tree = main_with_tail(2, (0, 3))
    tree.components["M"].points["p0"] = (5, 0)
    with pytest.raises(InvalidPackage):
        tree.validate()


def test_json_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        tree = random_tree(rng)
        doc = json.loads(json.dumps(tree.to_json()))
        assert FiberTree.from_json(doc).canonical() == tree.canonical()


# random corpus


def test_stabilization_is_order_independent_and_stable():
    rng = random.Random(2024)
    for _ in range(100):
        tree = random_tree(rng, max_components=8)
        forms = {stabilize(tree, random.Random(rng.random()))[0].canonical() for _ in range(10)}
        assert len(forms) == 1
        out = FiberTree.from_json(json.loads(forms.pop()))
        omega, xi = to_quasimap(out)
        rep = check_stable(xi, omega)
        assert not rep.conditions() & {OMEGA2, OMEGA3}


def test_omega2_violation_persists():
    rng = random.Random(99)
    for _ in range(100):
        tree = random_tree(rng, max_components=8, violate_omega2=True)
        assert omega2_violations(tree)
        out, _ = stabilize(tree, random.Random(rng.random()))
        assert omega2_violations(out)
        omega, xi = to_quasimap(out)
        assert OMEGA2 in check_stable(xi, omega).conditions()
