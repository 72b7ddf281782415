import pytest

from totkit import corpus
from totkit.universes import Graph, bipartition_universe, enumerate_graph_separations


@pytest.fixture(scope="session")
def bip4():
    """Bipartition universe over {1, 2, 3, 4} with the complete-graph cut order."""
    points = (1, 2, 3, 4)
    from totkit.pipelines import complete_cut_order

    return bipartition_universe(points, complete_cut_order(points))


@pytest.fixture(scope="session")
def p4():
    return Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture(scope="session")
def p4_universe(p4):
    return enumerate_graph_separations(p4)


@pytest.fixture(scope="session")
def two_k4():
    return corpus.two_cliques(4)


@pytest.fixture(scope="session")
def two_k4_universe(two_k4):
    return enumerate_graph_separations(two_k4)


@pytest.fixture(scope="session")
def small_corpus():
    """Connected graphs on at most 5 vertices, up to isomorphism."""
    return corpus.all_connected_graphs(5)
