"""Special-fiber trees for P^(N-1) with R-charges and their stabilization.

Each component carries the integral degree of L, a marking count, named
plain points with the vanishing orders of the N coordinate sections, and at
each node the orders of the sections on its branch.  The i-th coordinate is
a section of L (x) w_log^(c_i), so on a component its orders add up to
deg_L + c_i * deg_wlog.  No coordinate vanishes identically on a component.
"""
from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidPackage, NegativeOrder, NonzeroDegree, NotATail, NotTailOrBridge
from .rational import format_fraction

MUST_CONTRACT = "must-contract"
MUST_KEEP = "must-keep"

Orders = tuple[int, ...]


@dataclass
class FiberComponent:
    genus: int
    deg_L: int
    markings: int = 0
    points: dict[str, Orders] = field(default_factory=dict)


@dataclass
class FiberNode:
    ends: tuple[str, str]
    orders: dict[str, Orders]


@dataclass
class FiberTree:
    components: dict[str, FiberComponent]
    nodes: dict[str, FiberNode]
    charges: tuple[int, ...]
    A: Fraction

    def copy(self) -> "FiberTree":
        return copy.deepcopy(self)

    # structure

    def nodes_of(self, cid: str) -> list[str]:
        return sorted(nid for nid, n in self.nodes.items() if cid in n.ends)

    def neighbor(self, nid: str, cid: str) -> str:
        a, b = self.nodes[nid].ends
        return b if a == cid else a

    def deg_wlog(self, cid: str) -> int:
        c = self.components[cid]
        return 2 * c.genus - 2 + len(self.nodes_of(cid)) + c.markings

    def is_tail(self, cid: str) -> bool:
        c = self.components[cid]
        return c.genus == 0 and c.markings == 0 and len(self.nodes_of(cid)) == 1

    def is_bridge(self, cid: str) -> bool:
        """Genus 0 with exactly two special points, at least one of them a node."""
        c = self.components[cid]
        n = len(self.nodes_of(cid))
        return c.genus == 0 and n >= 1 and n + c.markings == 2

    def section_degree(self, cid: str, i: int) -> int:
        return self.components[cid].deg_L + self.charges[i] * self.deg_wlog(cid)

    def validate(self) -> None:
        n = len(self.charges)
        ids = list(self.components)
        if not ids:
            raise InvalidPackage("a fiber tree needs a component")
        if len(self.nodes) != len(ids) - 1:
            raise InvalidPackage("a tree on V components has V - 1 nodes")
        parent = {c: c for c in ids}

        def find(c: str) -> str:
            while parent[c] != c:
                c = parent[c]
            return c

        for nid, node in self.nodes.items():
            a, b = node.ends
            if a == b or a not in self.components or b not in self.components:
                raise InvalidPackage(f"node {nid} must join two distinct existing components")
            if set(node.orders) != {a, b}:
                raise InvalidPackage(f"node {nid} needs branch orders for exactly its two ends")
            za = {i for i, v in enumerate(node.orders[a]) if v == 0}
            zb = {i for i, v in enumerate(node.orders[b]) if v == 0}
            for end in (a, b):
                o = node.orders[end]
                if len(o) != n or min(o) < 0:
                    raise InvalidPackage(f"node {nid}: bad orders {o} on branch {end}")
                if min(o) != 0:
                    raise InvalidPackage(f"node {nid}: every coordinate vanishes on branch {end}")
            if za != zb:
                raise InvalidPackage(f"node {nid}: the branches disagree on which coordinates vanish")
            if find(a) == find(b):
                raise InvalidPackage("the dual graph has a cycle")
            parent[find(a)] = find(b)
        for cid, comp in self.components.items():
            for pid, o in comp.points.items():
                if len(o) != n or min(o) < 0:
                    raise InvalidPackage(f"point {cid}/{pid}: bad orders {o}")
            for i in range(n):
                total = sum(o[i] for o in comp.points.values())
                total += sum(self.nodes[nid].orders[cid][i] for nid in self.nodes_of(cid))
                if total != self.section_degree(cid, i):
                    raise InvalidPackage(
                        f"component {cid}, coordinate {i}: orders sum to {total}, expected {self.section_degree(cid, i)}"
                    )

    # serialization

    def to_json(self) -> dict:
        return {
            "charges": list(self.charges),
            "A": format_fraction(self.A),
            "components": [
                {
                    "id": cid,
                    "genus": c.genus,
                    "deg_L": c.deg_L,
                    "markings": c.markings,
                    "points": {pid: list(o) for pid, o in sorted(c.points.items())},
                }
                for cid, c in sorted(self.components.items())
            ],
            "edges": [{"id": nid, "ends": list(n.ends)} for nid, n in sorted(self.nodes.items())],
            "node_orders": {nid: {cid: list(o) for cid, o in sorted(n.orders.items())} for nid, n in sorted(self.nodes.items())},
        }

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, doc: dict) -> "FiberTree":
        from .rational import to_fraction

        comps = {
            str(c["id"]): FiberComponent(
                int(c["genus"]),
                int(c["deg_L"]),
                int(c.get("markings", 0)),
                {str(p): tuple(int(v) for v in o) for p, o in c.get("points", {}).items()},
            )
            for c in doc["components"]
        }
        nodes = {}
        for e in doc.get("edges", []):
            nid = str(e["id"])
            a, b = (str(x) for x in e["ends"])
            raw = doc["node_orders"][nid]
            nodes[nid] = FiberNode((a, b), {str(k): tuple(int(v) for v in o) for k, o in raw.items()})
        tree = cls(comps, nodes, tuple(int(c) for c in doc["charges"]), to_fraction(doc["A"]))
        tree.validate()
        return tree


@dataclass(frozen=True)
class ContractionRecord:
    kind: str
    component: str
    into: str
    new_point: Optional[str] = None
    orders: Optional[Orders] = None


def contract_tail(tree: FiberTree, cid: str) -> tuple[FiberTree, ContractionRecord]:
    """Contract the rational tail ``cid`` to a plain point on its neighbor."""
    if cid not in tree.components or not tree.is_tail(cid):
        raise NotATail(f"{cid} is not a rational tail")
    out = tree.copy()
    (nid,) = out.nodes_of(cid)
    nb = out.neighbor(nid, cid)
    e_deg = out.components[cid].deg_L
    node_orders = out.nodes[nid].orders[nb]
    q = tuple(o + e_deg - c for o, c in zip(node_orders, out.charges))
    if min(q) < 0:
        raise NegativeOrder(f"contracting {cid} gives negative orders {q}")
    pid = f"q[{cid}]"
    out.components[nb].points[pid] = q
    out.components[nb].deg_L += e_deg
    del out.nodes[nid]
    del out.components[cid]
    return out, ContractionRecord("tail", cid, nb, pid, q)


def contract_bridge(tree: FiberTree, cid: str) -> tuple[FiberTree, ContractionRecord]:
    """Contract a degree-0 genus-0 component with two special points.

    With two nodes the nodes merge; with a node and a marking the marking
    moves to the neighbor."""
    if cid not in tree.components or not tree.is_bridge(cid):
        raise NotTailOrBridge(f"{cid} is not a rational bridge")
    if tree.components[cid].deg_L != 0:
        raise NonzeroDegree(f"bridge {cid} has degree {tree.components[cid].deg_L}")
    out = tree.copy()
    nids = out.nodes_of(cid)
    if len(nids) == 2:
        n1, n2 = nids
        x, y = out.neighbor(n1, cid), out.neighbor(n2, cid)
        merged = FiberNode((x, y), {x: out.nodes[n1].orders[x], y: out.nodes[n2].orders[y]})
        del out.nodes[n1], out.nodes[n2]
        out.nodes[min(n1, n2)] = merged
        into = f"{x}|{y}"
    else:
        (n1,) = nids
        x = out.neighbor(n1, cid)
        del out.nodes[n1]
        out.components[x].markings += 1
        into = x
    del out.components[cid]
    return out, ContractionRecord("bridge", cid, into)


def contraction_decision(tree: FiberTree, cid: str, A: Optional[Fraction] = None) -> str:
    A = tree.A if A is None else Fraction(A)
    deg = tree.components[cid].deg_L
    if tree.is_tail(cid):
        return MUST_CONTRACT if deg - A <= 0 else MUST_KEEP
    if tree.is_bridge(cid):
        return MUST_CONTRACT if deg == 0 else MUST_KEEP
    raise NotTailOrBridge(f"{cid} is neither a rational tail nor a rational bridge")


def contractible_tails(tree: FiberTree) -> list[str]:
    return [c for c in sorted(tree.components) if tree.is_tail(c) and tree.components[c].deg_L <= tree.A]


def contractible_bridges(tree: FiberTree) -> list[str]:
    return [c for c in sorted(tree.components) if tree.is_bridge(c) and tree.components[c].deg_L == 0]


def stabilize(tree: FiberTree, rng: Optional[random.Random] = None) -> tuple[FiberTree, list[ContractionRecord]]:
    """Contract unstable rational tails until none is left, then degree-0
    bridges.  By default the lexicographically first candidate goes first;
    an ``rng`` picks candidates at random instead."""
    log: list[ContractionRecord] = []
    for finder, op in ((contractible_tails, contract_tail), (contractible_bridges, contract_bridge)):
        while len(tree.components) > 1:
            cands = finder(tree)
            if not cands:
                break
            pick = rng.choice(cands) if rng else cands[0]
            tree, rec = op(tree, pick)
            log.append(rec)
    return tree, log


def omega2_violations(tree: FiberTree) -> list[tuple[str, str, int]]:
    """Recorded plain points where min_i(ord_i + c_i) exceeds A."""
    bad = []
    for cid, comp in sorted(tree.components.items()):
        for pid, o in sorted(comp.points.items()):
            value = min(v + c for v, c in zip(o, tree.charges))
            if value > tree.A:
                bad.append((cid, pid, value))
    return bad


def to_quasimap(tree: FiberTree):
    """The same fiber as a QuasimapGraph over the P^(N-1) package with
    charges c, together with its Omega (S = coordinates, parameter A)."""
    from .catalog import pn_omega
    from .quasimap import MARKING, NODE, ComponentData, Point, QuasimapGraph, SectionDivisor

    ids = sorted(tree.components)
    index = {cid: i for i, cid in enumerate(ids)}
    comps = []
    for cid in ids:
        c = tree.components[cid]
        pts = [Point(pid) for pid in sorted(c.points)]
        pts += [Point(f"node:{nid}", NODE) for nid in tree.nodes_of(cid)]
        pts += [Point(f"mark:{j}", MARKING) for j in range(c.markings)]
        comps.append(ComponentData(c.genus, Fraction(c.deg_L), tuple(pts)))
    edges = [((index[a], f"node:{nid}"), (index[b], f"node:{nid}")) for nid, n in sorted(tree.nodes.items()) for a, b in [n.ends]]
    divisors = []
    for i in range(len(tree.charges)):
        orders = {}
        for cid in ids:
            for pid, o in tree.components[cid].points.items():
                orders[(index[cid], pid)] = o[i]
            for nid in tree.nodes_of(cid):
                orders[(index[cid], f"node:{nid}")] = tree.nodes[nid].orders[cid][i]
        divisors.append(SectionDivisor(frozenset(), orders))
    omega = pn_omega(tree.charges, tree.A)
    return omega, QuasimapGraph(tuple(comps), tuple(edges), tuple(divisors))


def random_tree(
    rng: random.Random,
    n_coords: int = 2,
    max_components: int = 8,
    charges: Optional[Sequence[int]] = None,
    A: Optional[Fraction] = None,
    violate_omega2: bool = False,
) -> FiberTree:
    """A random consistent tree satisfying Omega-2 at its recorded points,
    or violating it at one or more of them when asked.

    The root has positive genus and degree, so stabilization never ends in a
    lone unstable rational curve."""
    for _ in range(1000):
        tree = _random_tree_attempt(rng, n_coords, max_components, charges, A, violate_omega2)
        if bool(omega2_violations(tree)) == violate_omega2:
            return tree
    raise RuntimeError("random_tree could not meet the Omega-2 requirement")


def _random_tree_attempt(rng, n_coords, max_components, charges, A, violate) -> FiberTree:
    charges = tuple(charges) if charges is not None else tuple(rng.randint(0, 1) for _ in range(n_coords))
    smax = max(charges)
    A = Fraction(A) if A is not None else smax + Fraction(rng.randint(1, 7), 4)
    n = rng.randint(1, max_components)
    ids = [f"c{i}" for i in range(n)]
    parent = {i: rng.randrange(i) for i in range(1, n)}
    incident = {ci: [i for i in parent if i == ci or parent[i] == ci] for ci in range(n)}
    genus = [rng.randint(1, 2)] + [0 if rng.random() < 0.8 else 1 for _ in range(1, n)]
    markings = [1 if rng.random() < 0.2 else 0 for _ in range(n)]
    wlog = [2 * genus[ci] - 2 + len(incident[ci]) + markings[ci] for ci in range(n)]
    degs = []
    for ci in range(n):
        low = max([0] + [-c * wlog[ci] for c in charges])
        if ci == 0:
            low = max(low, 1)
        extra = rng.choice([0, 0, 1, 1, 2, 3])
        if violate and rng.random() < 0.5:
            extra += int(A) + 2
        degs.append(low + extra)
    budgets = {ci: [degs[ci] + c * wlog[ci] for c in charges] for ci in range(n)}

    # coordinates that do not vanish at node i (order 0 on both branches)
    free = {i: {j for j in range(n_coords) if rng.random() < 0.5} | {rng.randrange(n_coords)} for i in parent}
    changed = True
    while changed:
        changed = False
        for ci in range(n):
            for j in range(n_coords):
                needed = [i for i in incident[ci] if j not in free[i]]
                while len(needed) > budgets[ci][j]:
                    free[needed.pop()].add(j)
                    changed = True

    node_orders = {i: {ids[i]: [0] * n_coords, ids[parent[i]]: [0] * n_coords} for i in parent}
    comps = {}
    for ci in range(n):
        points: dict[str, list[int]] = {}
        for j in range(n_coords):
            required = [i for i in incident[ci] if j not in free[i]]
            for i in required:
                node_orders[i][ids[ci]][j] = 1
            remaining = budgets[ci][j] - len(required)
            slots = [("node", i) for i in required] + [("pt", f"p{ci}_{t}") for t in range(2)]
            while remaining > 0:
                kind, key = rng.choice(slots)
                amount = rng.randint(1, remaining)
                if kind == "node":
                    node_orders[key][ids[ci]][j] += amount
                else:
                    points.setdefault(key, [0] * n_coords)[j] += amount
                remaining -= amount
        comps[ids[ci]] = FiberComponent(genus[ci], degs[ci], markings[ci], {k: tuple(o) for k, o in points.items()})
    nodes = {
        f"n{i}": FiberNode((ids[i], ids[parent[i]]), {k: tuple(v) for k, v in node_orders[i].items()}) for i in parent
    }
    tree = FiberTree(comps, nodes, charges, A)
    tree.validate()
    return tree
