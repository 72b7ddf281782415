"""End-to-end pipelines: tangles to nested sets to tree-decompositions.

Each pipeline enumerates the tangles or profiles of a graph, a clique
system, or a circle system, builds the efficient-distinguisher family over
the distinguishable pairs, extracts a nested transversal (canonically or
not), and, for graph separations, converts it into a tree-decomposition.
Results carry every intermediate object so that callers and tests can
inspect them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .profiles import (
    PROFILE,
    Orientation,
    build_distinguisher_family,
    circle_tangle_kind,
    distinguishers,
    efficient_distinguishers,
    enumerate_chain_profiles,
    graph_tangle_kind,
    maximal_profiles,
    sequence_efficient_distinguishers,
)
from .sepsys import Universe
from .splinter import (
    IndexedFamily,
    extract_canonical,
    extract_transversal,
)
from .treedec import TreeDecomposition, build_tree_decomposition, displays
from .universes import (
    DEFAULT_MAX_VERTICES,
    Graph,
    SubsystemChain,
    clique_subsystem,
    cut_order_fn,
    enumerate_circle_separations,
    enumerate_graph_separations,
    slice_chain,
)

__all__ = [
    "PipelineResult",
    "graph_pipeline",
    "clique_pipeline",
    "circle_pipeline",
    "sequence_family",
    "efficiently_distinguishes_all",
    "complete_cut_order",
    "cycle_cut_order",
]


@dataclass
class PipelineResult:
    graph: Graph | None
    universe: Universe
    chain: SubsystemChain
    levels: list
    profiles: list
    family: IndexedFamily | None
    nested: frozenset
    decomposition: TreeDecomposition | None = None
    extraction: object = None
    displays_ok: bool | None = None
    meta: dict = field(default_factory=dict)

    def tangle_counts(self) -> list[int]:
        return [len(l) for l in self.levels]


def efficiently_distinguishes_all(
    nested: frozenset,
    profiles: list[Orientation],
    universe: Universe,
    chain: SubsystemChain | None = None,
) -> bool:
    """Whether ``nested`` holds an efficient distinguisher for every
    distinguishable pair of ``profiles``."""
    for i, p in enumerate(profiles):
        for q in profiles[i + 1 :]:
            if not distinguishers(p, q):
                continue
            if chain is None:
                eff = efficient_distinguishers(p, q)
            else:
                eff = sequence_efficient_distinguishers(chain, p, q)
            if not any(d in nested for d in eff):
                return False
    return True


def _extract(family: IndexedFamily | None, canonical: bool, prune_redundant: bool):
    if family is None or not len(family):
        return None, frozenset()
    if canonical:
        res = extract_canonical(family, prune_redundant=prune_redundant)
        return res, res.nested
    res = extract_transversal(family)
    return res, res.nested_set()


def graph_pipeline(
    g: Graph,
    canonical: bool = False,
    prune_redundant: bool = False,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_order: int | None = None,
) -> PipelineResult:
    """Tangles of a graph, the efficient families over its maximal tangles,
    a nested distinguishing set, and the displaying tree-decomposition."""
    universe = enumerate_graph_separations(g, max_vertices)
    chain = slice_chain(universe)
    if max_order is not None:
        keep = [i for i, t in enumerate(chain.thresholds) if t < max_order]
        chain = SubsystemChain(
            universe,
            tuple(chain.systems[i] for i in keep),
            thresholds=tuple(chain.thresholds[i] for i in keep),
        )
    levels = enumerate_chain_profiles(chain, graph_tangle_kind(), graph=g)
    tangles = [p for lvl in levels for p in lvl]
    maximal = maximal_profiles(tangles)
    family = (
        build_distinguisher_family(maximal, mode="efficient", order_mode="by-order")
        if len(maximal) > 1
        else None
    )
    extraction, nested = _extract(family, canonical, prune_redundant)
    decomposition = build_tree_decomposition(g, universe, nested)
    ok = displays(decomposition, maximal, universe)
    return PipelineResult(
        graph=g,
        universe=universe,
        chain=chain,
        levels=levels,
        profiles=maximal,
        family=family,
        nested=nested,
        decomposition=decomposition,
        extraction=extraction,
        displays_ok=ok,
        meta={"kind": "graph-tangle", "canonical": canonical},
    )


def clique_pipeline(
    g: Graph,
    canonical: bool = True,
    prune_redundant: bool = False,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> PipelineResult:
    """Profiles of the clique-separation slices of a graph and a (canonical)
    nested set of clique separations distinguishing them efficiently."""
    universe = enumerate_graph_separations(g, max_vertices)
    cliques = clique_subsystem(g, universe, None)
    chain = slice_chain(universe, within=cliques)
    levels = enumerate_chain_profiles(chain, PROFILE)
    profiles = [p for lvl in levels for p in lvl]
    family = (
        build_distinguisher_family(profiles, mode="efficient", order_mode="by-order")
        if len(profiles) > 1
        else None
    )
    extraction, nested = _extract(family, canonical, prune_redundant)
    decomposition = build_tree_decomposition(g, universe, nested)
    ok = efficiently_distinguishes_all(nested, profiles, universe)
    return PipelineResult(
        graph=g,
        universe=universe,
        chain=chain,
        levels=levels,
        profiles=profiles,
        family=family,
        nested=nested,
        decomposition=decomposition,
        extraction=extraction,
        displays_ok=ok,
        meta={"kind": "clique-profile", "canonical": canonical},
    )


def complete_cut_order(points) -> Callable[[int, int], int]:
    points = tuple(points)
    edges = [
        (points[i], points[j], 1)
        for i in range(len(points))
        for j in range(i + 1, len(points))
    ]
    return cut_order_fn(points, edges)


def cycle_cut_order(points) -> Callable[[int, int], int]:
    points = tuple(points)
    n = len(points)
    return cut_order_fn(points, [(points[i], points[(i + 1) % n], 1) for i in range(n)])


def circle_pipeline(
    points,
    m: int,
    n: int,
    order_fn: Callable[[int, int], int] | None = None,
    canonical: bool = True,
    prune_redundant: bool = False,
) -> PipelineResult:
    """Circle tangles of a cyclically ordered set and a (canonical) tree set
    of circle separations distinguishing all distinguishable tangles."""
    universe, circle = enumerate_circle_separations(points, order_fn)
    chain = slice_chain(universe, within=circle)
    levels = enumerate_chain_profiles(chain, circle_tangle_kind(m, n))
    tangles = [p for lvl in levels for p in lvl]
    family = (
        build_distinguisher_family(tangles, mode="efficient", order_mode="by-order")
        if len(tangles) > 1
        else None
    )
    extraction, nested = _extract(family, canonical, prune_redundant)
    ok = efficiently_distinguishes_all(nested, tangles, universe)
    return PipelineResult(
        graph=None,
        universe=universe,
        chain=chain,
        levels=levels,
        profiles=tangles,
        family=family,
        nested=nested,
        decomposition=None,
        extraction=extraction,
        displays_ok=ok,
        meta={"kind": "circle-tangle", "m": m, "n": n, "circle": circle},
    )


def sequence_family(
    g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES
) -> tuple[PipelineResult, IndexedFamily | None]:
    """The graph pipeline re-run with chain-level efficiency semantics.

    Returns the order-function pipeline result plus the family built from
    the same maximal tangles using minimal-chain-level distinguishers.
    """
    base = graph_pipeline(g)
    if len(base.profiles) <= 1:
        return base, None
    fam = build_distinguisher_family(
        base.profiles, mode="efficient-sequence", order_mode="by-order", chain=base.chain
    )
    return base, fam
