"""Input parsing and artifact emission.

Graphs arrive either as edge-list text (``u v`` per line, ``#`` comments,
isolated vertices as a single token) or as JSON documents
``{"vertices": [...], "edges": [[u, v], ...]}``.  Circle ground sets arrive
as JSON ``{"points": [... in cyclic order ...], "order_graph": [[u, v, w],
...]}``.  Emitted artifacts all carry ``"schema": "totkit/1"`` and are
byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import json

from .errors import InputError, SeparationError, VerificationError
from .profiles import orientation_to_json
from .sepsys import Universe
from .universes import Graph, cut_order_fn

SCHEMA = "totkit/1"

__all__ = [
    "SCHEMA",
    "parse_graph_text",
    "parse_graph_json",
    "load_graph",
    "load_circle",
    "parse_order_spec",
    "dump_json",
    "nested_set_payload",
    "verify_artifact",
]


def _token(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_graph_text(text: str) -> Graph:
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [_token(t) for t in line.split()]
        if len(parts) == 1:
            vertices.append(parts[0])
        elif len(parts) == 2:
            vertices.extend(parts)
            edges.append((parts[0], parts[1]))
        else:
            raise InputError(f"line {lineno}: expected 'u v' or a single vertex")
    if not vertices:
        raise InputError("no vertices in edge list")
    try:
        return Graph(vertices, edges)
    except SeparationError as exc:
        raise InputError(str(exc)) from exc


def parse_graph_json(doc) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError('graph JSON needs {"vertices": [...], "edges": [...]}')
    try:
        return Graph(doc["vertices"], [tuple(e) for e in doc.get("edges", [])])
    except (SeparationError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def load_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
        return parse_graph_json(doc)
    return parse_graph_text(text)


def load_circle(path: str):
    """Returns (points, order_graph-or-None)."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "points" not in doc:
        raise InputError('circle JSON needs {"points": [...], "order_graph": optional}')
    points = doc["points"]
    if len(set(map(repr, points))) != len(points):
        raise InputError("duplicate points in cyclic order")
    order_graph = doc.get("order_graph")
    if order_graph is not None:
        order_graph = [tuple(e) for e in order_graph]
        for e in order_graph:
            if len(e) != 3:
                raise InputError("order_graph entries must be [u, v, weight]")
    return points, order_graph


def _load_weighted_edges(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"{path} line {lineno}: expected 'u v weight'")
        try:
            w = int(parts[2])
        except ValueError:
            raise InputError(f"{path} line {lineno}: weight must be an integer")
        edges.append((_token(parts[0]), _token(parts[1]), w))
    return edges


def parse_order_spec(spec: str | None, points=None):
    """Resolve an order-function specification for bipartition universes.

    ``cut:FILE`` loads a weighted edge list; ``cycle`` and ``complete`` build
    unit-weight cut functions on the given points; ``graph-order`` (the
    graph-separation default) returns None so callers use the separator
    size.
    """
    if spec is None or spec == "graph-order":
        return None, spec or "graph-order"
    if spec in ("cycle", "complete"):
        if points is None:
            raise InputError(f"order function {spec!r} needs a circle ground set")
        from .pipelines import complete_cut_order, cycle_cut_order

        fn = cycle_cut_order(points) if spec == "cycle" else complete_cut_order(points)
        return fn, spec
    if spec.startswith("cut:"):
        path = spec[4:]
        edges = _load_weighted_edges(path)
        if points is None:
            raise InputError("cut order functions apply to circle/bipartition inputs")
        try:
            return cut_order_fn(points, edges), spec
        except (SeparationError, KeyError) as exc:
            raise InputError(f"bad cut graph: {exc}") from exc
    raise InputError(f"unknown order-fn spec {spec!r}")


# ----------------------------------------------------------------------
# artifacts


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _side_lists(universe: Universe, uid: int):
    a, b = universe.side_labels(uid)
    return [list(a), list(b)]


def nested_set_payload(universe: Universe, nested) -> list:
    return sorted(
        (_side_lists(universe, uid) for uid in nested),
        key=lambda p: (p[0], p[1]),
    )


def graph_payload(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def tangle_levels_payload(result) -> list:
    out = []
    for threshold, level in zip(result.chain.thresholds, result.levels):
        out.append(
            {
                "max_order": threshold,
                "count": len(level),
                "tangles": [orientation_to_json(p) for p in level],
            }
        )
    return out


# ----------------------------------------------------------------------
# verification


def _find_uid(universe: Universe, pair) -> int:
    a, b = pair
    oid = universe.find(universe.mask_of(a), universe.mask_of(b))
    if oid is None:
        raise VerificationError(f"({a}, {b}) is not a separation of this universe")
    return universe.uid(oid)


def verify_artifact(doc: dict) -> dict:
    """Re-check an exported artifact; raises VerificationError with a diagnostic.

    Checks nestedness of the exported set, validity and exact induced set of
    the decomposition, display of the (recomputed) tangles, and, for
    canonical commands, equivariance under every graph automorphism.
    """
    from .pipelines import circle_pipeline, clique_pipeline, graph_pipeline
    from .splinter import extract_canonical, map_family
    from .treedec import TreeDecomposition, induced_uids, is_valid_tree_decomposition
    from .universes import automorphisms, lift_permutation

    if doc.get("schema") != SCHEMA:
        raise VerificationError(f"unknown schema {doc.get('schema')!r}")
    command = doc.get("command")
    diag: dict = {"command": command, "checks": []}

    if command in ("tot", "canonical-tot", "clique-tot"):
        g = parse_graph_json(doc["graph"])
        canonical = command == "canonical-tot"
        if command == "clique-tot":
            result = clique_pipeline(g, canonical=True)
        else:
            result = graph_pipeline(g, canonical=canonical)
        universe = result.universe
        nested = frozenset(_find_uid(universe, p) for p in doc["nested_set"])
        vals = sorted(nested)
        for i, a in enumerate(vals):
            for b in vals[i + 1 :]:
                if not universe.nested(a, b):
                    raise VerificationError(
                        f"exported separations {universe.side_labels(a)} and "
                        f"{universe.side_labels(b)} cross"
                    )
        diag["checks"].append("nested")
        dd = doc.get("decomposition")
        if dd is not None:
            td = TreeDecomposition(
                graph=g,
                bags={nd["id"]: frozenset(nd["bag"]) for nd in dd["nodes"]},
                edges=[tuple(e) for e in dd["edges"]],
            )
            ok, reason = is_valid_tree_decomposition(td)
            if not ok:
                raise VerificationError(f"decomposition invalid: {reason}")
            if induced_uids(td, universe) != nested:
                raise VerificationError("decomposition does not induce the exported set")
            diag["checks"].append("decomposition")
        from .pipelines import efficiently_distinguishes_all

        if not efficiently_distinguishes_all(nested, result.profiles, universe):
            raise VerificationError("exported set does not efficiently distinguish the tangles")
        diag["checks"].append("display")
        if canonical or command == "clique-tot":
            if result.family is not None:
                for perm in automorphisms(g):
                    mapping = lift_permutation(universe, perm)
                    mapped = map_family(result.family, mapping)
                    image = extract_canonical(mapped).nested
                    expect = frozenset(universe.uid(mapping[uid]) for uid in nested)
                    if image != expect:
                        raise VerificationError(
                            f"not canonical under vertex permutation {perm}"
                        )
            diag["checks"].append("canonical")
        return diag

    if command == "circle-tangles":
        points = doc["circle"]["points"]
        spec = doc["params"].get("order_fn", "cycle")
        if spec.startswith("cut:inline"):
            fn = cut_order_fn(points, [tuple(e) for e in doc["circle"]["order_graph"]])
        else:
            fn, _ = parse_order_spec(spec, points)
        result = circle_pipeline(points, m=doc["params"]["m"], n=doc["params"]["n"], order_fn=fn)
        universe = result.universe
        nested = frozenset(_find_uid(universe, p) for p in doc["tree_set"])
        vals = sorted(nested)
        for i, a in enumerate(vals):
            for b in vals[i + 1 :]:
                if not universe.nested(a, b):
                    raise VerificationError("exported circle separations cross")
        diag["checks"].append("nested")
        circle = result.meta["circle"]
        for uid in nested:
            if uid not in circle.members:
                raise VerificationError("exported element is not a circle separation")
        from .pipelines import efficiently_distinguishes_all

        if not efficiently_distinguishes_all(nested, result.profiles, universe):
            raise VerificationError("tree set does not efficiently distinguish the tangles")
        diag["checks"].append("display")
        return diag

    if command in ("tangles", "corpus"):
        diag["checks"].append("schema")
        return diag

    raise VerificationError(f"unknown command {command!r}")
