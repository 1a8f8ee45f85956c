import pytest

from coarsetd import (
    EmptySetError,
    Graph,
    UNREACHABLE,
    complement_graph,
    induced_subgraph,
    is_bipartite,
    is_tree,
    power_graph,
    weak_diameter,
)
from helpers import complete_graph, cycle_graph, edgeless_graph, path_graph


def test_construction_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(1, 4)])
    with pytest.raises(ValueError):
        Graph(3, [(2, 2)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_duplicate_edges_collapse():
    g = Graph(3, [(1, 2), (2, 1), (1, 2)])
    assert g.m == 1


def test_distances_on_path():
    g = path_graph(5)
    assert g.distances().dist(1, 5) == 4
    assert g.distances().dist(3, 3) == 0


def test_distances_cross_component():
    g = Graph(4, [(1, 2), (3, 4)])
    assert g.distances().dist(1, 3) is UNREACHABLE
    assert g.distances().dist(1, 2) == 1


def test_distances_antipodal_cycle():
    g = cycle_graph(6)
    assert g.distances().dist(1, 4) == 3


def test_weak_diameter():
    g = cycle_graph(6)
    assert weak_diameter(g, {1}) == 0
    assert weak_diameter(g, {1, 2, 3}) == 2
    with pytest.raises(EmptySetError):
        weak_diameter(g, set())


def test_weak_diameter_across_components():
    g = Graph(6, [(1, 2), (2, 3), (4, 5), (5, 6)])
    assert weak_diameter(g, {1, 4}) is UNREACHABLE


def test_power_graph_identity():
    g = cycle_graph(6)
    assert power_graph(g, 1) == g


def test_power_graph_c6():
    g = cycle_graph(6)
    p2 = power_graph(g, 2)
    assert all(p2.degree(v) == 4 for v in p2.vertices)
    assert power_graph(g, 5) == complete_graph(6)


def test_power_graph_restricted_relabels():
    g = path_graph(5)
    # restrict to {2, 4}: distance 2, so adjacent at d=2 but not d=1
    assert power_graph(g, 2, {2, 4}).m == 1
    assert power_graph(g, 1, {2, 4}).m == 0


def test_induced_subgraph():
    g = cycle_graph(6)
    sub, vs = induced_subgraph(g, {2, 3, 4})
    assert vs == [2, 3, 4]
    assert sub.edges == frozenset({(1, 2), (2, 3)})


def test_components():
    g = Graph(5, [(1, 2), (4, 5)])
    comps = g.connected_components()
    assert comps == [frozenset({1, 2}), frozenset({3}), frozenset({4, 5})]
    assert not g.is_connected()
    assert cycle_graph(4).is_connected()


def test_is_tree():
    assert is_tree(path_graph(4))
    assert not is_tree(cycle_graph(4))
    assert not is_tree(Graph(3, [(1, 2)]))


def test_bipartite_c6():
    ok, coloring = is_bipartite(cycle_graph(6))
    assert ok
    assert all(coloring[u] != coloring[v] for u, v in cycle_graph(6).edges)


def test_bipartite_edgeless():
    ok, _ = is_bipartite(edgeless_graph(4))
    assert ok


def test_odd_cycle_witness():
    g = cycle_graph(5)
    ok, cycle = is_bipartite(g)
    assert not ok
    assert len(cycle) % 2 == 1
    for i, v in enumerate(cycle):
        assert g.has_edge(v, cycle[(i + 1) % len(cycle)])


def test_complement():
    g = path_graph(3)
    comp = complement_graph(g)
    assert comp.edges == frozenset({(1, 3)})
