"""Small graph builders shared across tests."""

from coarsetd import Graph, TreeDecomposition


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def star_graph(leaves):
    return Graph(leaves + 1, [(1, v) for v in range(2, leaves + 2)])


def edgeless_graph(n):
    return Graph(n)


def single_bag_td(g):
    return TreeDecomposition(Graph(1), {1: frozenset(g.vertices)})


def random_graph(rng, n, p):
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < p
    ]
    return Graph(n, edges)
