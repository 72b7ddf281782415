"""Tree-decompositions from nested sets of graph separations.

The builder inserts the separations of a nested set one at a time, in
canonical order, each splitting the unique tree node whose region contains
it; bags are the intersections of the big sides pointing at a node.  Every
build is validated (decomposition validity plus an exact round trip of the
induced separations) before it is returned.

Small or trivial members are tolerated: they produce leaf-ish bags, are
reported in ``flags``, and ambiguous attachments are resolved towards the
canonical orientation.  ``is_tree_set`` is the strict check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalContradictionError, NotNestedError, SeparationError
from .sepsys import Universe
from .universes import Graph

__all__ = [
    "TreeDecomposition",
    "is_tree_set",
    "build_tree_decomposition",
    "induced_separations",
    "induced_uids",
    "is_valid_tree_decomposition",
    "displays",
    "decomposition_to_json",
    "decomposition_to_dot",
]


@dataclass
class TreeDecomposition:
    """A tree plus bags; ``edges`` may carry the separation that created them."""

    graph: Graph
    bags: dict
    edges: list
    flags: dict = field(default_factory=dict)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    def neighbors(self, x: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == x:
                out.append(b)
            elif b == x:
                out.append(a)
        return sorted(out)

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


def is_tree_set(universe: Universe, seps) -> bool:
    """Pairwise nested with no member trivial relative to the set."""
    uids = sorted({universe.uid(s) for s in seps})
    for i, a in enumerate(uids):
        for b in uids[i + 1 :]:
            if not universe.nested(a, b):
                return False
    uidset = set(uids)
    for a in uids:
        for o in universe.orientations(a):
            for w in uidset:
                w1, w2 = universe.orientations(w)
                if universe.lt(o, w1) and universe.lt(o, w2):
                    return False
    return True


def build_tree_decomposition(g: Graph, universe: Universe, seps) -> TreeDecomposition:
    """Tree-decomposition of ``g`` whose induced separations are exactly ``seps``."""
    if tuple(g.vertices) != tuple(universe.labels):
        raise SeparationError("universe was not built from this graph")
    uids = sorted({universe.uid(s) for s in seps})
    for i, a in enumerate(uids):
        for b in uids[i + 1 :]:
            if not universe.nested(a, b):
                raise NotNestedError(f"separations {a} and {b} cross")

    flagged_small = [
        a
        for a in uids
        if universe.is_small(a) or universe.is_small(universe.inv(a))
    ]
    flagged_trivial = []
    for a in uids:
        for o in universe.orientations(a):
            if any(
                universe.lt(o, w1) and universe.lt(o, w2)
                for w in uids
                for w1, w2 in [universe.orientations(w)]
            ):
                flagged_trivial.append(a)
                break

    # incident[x] holds the oriented ids pointing at node x
    incident: list[list[int]] = [[]]
    edges: list[tuple[int, int, int]] = []
    for uid in uids:
        fwd = uid
        bwd = universe.inv(uid)
        host = None
        for x in range(len(incident)):
            if all(universe.leq(t, fwd) or universe.leq(t, bwd) for t in incident[x]):
                host = x
                break
        if host is None:
            raise InternalContradictionError(f"no node can host separation {uid}")
        new = len(incident)
        stay = [t for t in incident[host] if universe.leq(t, fwd)]
        move = [t for t in incident[host] if not universe.leq(t, fwd)]
        # host becomes the A-side node, the new node the B-side one
        incident[host] = stay + [bwd]
        incident.append(move + [fwd])
        # reattach the moved edges' endpoints
        moved = set(move)
        for i, (a, b, s) in enumerate(edges):
            if a == host and universe.inv(s) in moved:
                edges[i] = (new, b, s)
            elif b == host and s in moved:
                edges[i] = (a, new, s)
        edges.append((host, new, fwd))

    full = universe.full_mask
    bags = {}
    for x, ts in enumerate(incident):
        m = full
        for t in ts:
            m &= universe.sides(t)[1]
        bags[x] = frozenset(universe.labels_of(m))

    td = TreeDecomposition(
        graph=g,
        bags=bags,
        edges=[(a, b) for a, b, _ in edges],
        flags={
            "small_members": flagged_small,
            "trivial_members": flagged_trivial,
            "edge_separations": {f"{a}-{b}": s for a, b, s in edges},
        },
    )
    ok, reason = is_valid_tree_decomposition(td)
    if not ok:
        raise InternalContradictionError(f"built decomposition is invalid: {reason}")
    got = induced_uids(td, universe)
    if got != frozenset(uids):
        raise InternalContradictionError(
            f"induced separations {sorted(got)} differ from input {uids}"
        )
    return td


def _edge_split(td: TreeDecomposition, a: int, b: int) -> tuple[set, set]:
    """Nodes on the two sides of tree edge (a, b)."""
    adj: dict[int, set] = {x: set() for x in td.bags}
    for x, y in td.edges:
        adj[x].add(y)
        adj[y].add(x)
    side = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in side and not (x == a and y == b):
                side.add(y)
                stack.append(y)
    return side, set(td.bags) - side


def induced_separations(td: TreeDecomposition) -> set[tuple[tuple, tuple]]:
    """The separations induced by the tree edges, as canonical side-label pairs."""
    out = set()
    for a, b in td.edges:
        left, right = _edge_split(td, a, b)
        ua = frozenset().union(*(td.bags[x] for x in left))
        ub = frozenset().union(*(td.bags[x] for x in right))
        pa = tuple(sorted(ua, key=lambda v: (v.__class__.__name__, v)))
        pb = tuple(sorted(ub, key=lambda v: (v.__class__.__name__, v)))
        out.add(min((pa, pb), (pb, pa)))
    return out


def induced_uids(td: TreeDecomposition, universe: Universe) -> frozenset:
    out = set()
    for a, b in td.edges:
        left, right = _edge_split(td, a, b)
        ua = frozenset().union(*(td.bags[x] for x in left))
        ub = frozenset().union(*(td.bags[x] for x in right))
        oid = universe.find(universe.mask_of(ua), universe.mask_of(ub))
        if oid is None:
            raise SeparationError(
                f"induced pair ({sorted(ua)}, {sorted(ub)}) is not a separation of the universe"
            )
        out.add(universe.uid(oid))
    return frozenset(out)


def is_valid_tree_decomposition(td: TreeDecomposition) -> tuple[bool, str]:
    """Standard validity: tree shape, coverage, and connected vertex subtrees."""
    g = td.graph
    nodes = set(td.bags)
    if not nodes:
        return False, "no nodes"
    if len(td.edges) != len(nodes) - 1:
        return False, "edge count is not nodes - 1"
    adj: dict[int, set] = {x: set() for x in nodes}
    for x, y in td.edges:
        if x not in nodes or y not in nodes:
            return False, "edge endpoint is not a node"
        adj[x].add(y)
        adj[y].add(x)
    seen = set()
    stack = [next(iter(nodes))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x] - seen)
    if seen != nodes:
        return False, "tree is not connected"
    covered = set().union(*td.bags.values()) if td.bags else set()
    if covered != set(g.vertices):
        return False, "bags do not cover all vertices"
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags.values()):
            return False, f"edge ({u!r}, {v!r}) is in no bag"
    for v in g.vertices:
        holding = {x for x, bag in td.bags.items() if v in bag}
        comp = set()
        stack = [next(iter(holding))]
        while stack:
            x = stack.pop()
            if x in comp or x not in holding:
                continue
            comp.add(x)
            stack.extend(adj[x] & holding)
        if comp != holding:
            return False, f"bags holding {v!r} are not connected"
    return True, "ok"


def displays(td: TreeDecomposition, tangles, universe: Universe) -> bool:
    """Whether every distinguishable pair of tangles is efficiently
    distinguished by some induced separation."""
    from .profiles import distinguishers

    induced = induced_uids(td, universe)
    for i, p in enumerate(tangles):
        for q in tangles[i + 1 :]:
            ds = distinguishers(p, q)
            if not ds:
                continue
            best = min(universe.order(d) for d in ds)
            if not any(
                d in induced and universe.order(d) == best for d in ds
            ):
                return False
    return True


# ----------------------------------------------------------------------
# exports


def decomposition_to_json(td: TreeDecomposition) -> dict:
    return {
        "nodes": [
            {"id": x, "bag": sorted(td.bags[x], key=lambda v: (v.__class__.__name__, v))}
            for x in td.nodes
        ],
        "edges": sorted([min(a, b), max(a, b)] for a, b in td.edges),
    }


def decomposition_to_dot(td: TreeDecomposition) -> str:
    lines = ["graph treedec {", "  node [shape=box];"]
    for x in td.nodes:
        label = ",".join(str(v) for v in sorted(td.bags[x], key=lambda v: (v.__class__.__name__, v)))
        lines.append(f'  n{x} [label="{{{label}}}"];')
    for a, b in sorted((min(a, b), max(a, b)) for a, b in td.edges):
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
