"""Sim-width machinery: branch decompositions, the induced-matching cut
value, conversion to a domination-bounded tree decomposition, and the
end-to-end run through the width-reducing pipeline.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import TreeDecomposition
from .errors import (
    EmptySetError,
    MalformedDecompositionError,
    TooLargeError,
)
from .exact import (
    DEFAULT_CAP,
    exact_independence_number,
    minimum_dominating_set,
)
from .graph import Graph, induced_subgraph, is_tree, weak_diameter
from .pipeline import PipelineReport, run_pipeline

SIMVAL_CAP = 32


class BranchDecomposition:
    """A subcubic tree with the graph's vertices mapped bijectively onto
    its leaves. Removing any tree edge splits the vertex set in two."""

    __slots__ = ("tree", "leaf_map")

    def __init__(self, tree, leaf_map):
        if not is_tree(tree):
            raise MalformedDecompositionError("branch decomposition is not a tree")
        if any(tree.degree(t) > 3 for t in tree.vertices):
            raise MalformedDecompositionError("branch tree has a node of degree > 3")
        n = len(leaf_map)
        if tree.n == 1:
            leaves = {1}
        else:
            leaves = {t for t in tree.vertices if tree.degree(t) == 1}
        if n >= 3:
            bad = [
                t
                for t in tree.vertices
                if t not in leaves and tree.degree(t) != 3
            ]
            if bad:
                raise MalformedDecompositionError(
                    f"internal nodes {bad} do not have degree 3"
                )
        if set(leaf_map.values()) != leaves or len(set(leaf_map.values())) != n:
            raise MalformedDecompositionError(
                "leaf map is not a bijection onto the leaves"
            )
        if set(leaf_map.keys()) != set(range(1, n + 1)):
            raise MalformedDecompositionError(
                "leaf map must cover vertices 1..n exactly"
            )
        self.tree = tree
        self.leaf_map = dict(leaf_map)

    @property
    def n(self):
        return len(self.leaf_map)

    def leaf_of(self, v):
        return self.leaf_map[v]

    def vertex_at(self, leaf):
        for v, t in self.leaf_map.items():
            if t == leaf:
                return v
        raise KeyError(leaf)

    def side(self, edge):
        """Vertices mapped into the component of edge[0] after removing edge."""
        a, b = edge
        if b not in self.tree.adjacency[a]:
            raise ValueError(f"({a},{b}) is not a tree edge")
        # the unique (a,b)-path is this edge, so skipping it cuts off b's side
        seen = {a}
        queue = deque([a])
        while queue:
            t = queue.popleft()
            for s in self.tree.adjacency[t]:
                if t == a and s == b:
                    continue
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return frozenset(v for v, t in self.leaf_map.items() if t in seen)

    def __repr__(self):
        return f"BranchDecomposition(n={self.n}, tree_nodes={self.tree.n})"


def simval(g, a, cap=SIMVAL_CAP):
    """Maximum induced matching with one endpoint inside `a` and one outside.

    The cut edges conflict when they share an endpoint or any graph edge
    joins their endpoints; an induced matching is an independent set in
    that conflict graph, found exactly.
    """
    inside = frozenset(a)
    for v in inside:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} outside range 1..{g.n}")
    cut = sorted(
        (u, v) if u in inside else (v, u)
        for u, v in g.edges
        if (u in inside) != (v in inside)
    )
    if len(cut) > cap:
        raise TooLargeError(len(cut), cap, "cut")
    if not cut:
        return 0
    conflicts = []
    for i, (a1, b1) in enumerate(cut):
        for j in range(i + 1, len(cut)):
            a2, b2 = cut[j]
            if (
                a1 == a2
                or b1 == b2
                or g.has_edge(a1, a2)
                or g.has_edge(b1, b2)
                or g.has_edge(a1, b2)
                or g.has_edge(a2, b1)
            ):
                conflicts.append((i + 1, j + 1))
    conflict_graph = Graph(len(cut), conflicts)
    return exact_independence_number(conflict_graph, cap)


def branch_width_sim(g, bd, cap=SIMVAL_CAP):
    """Maximum cut value over the tree edges of the branch decomposition."""
    if bd.n != g.n:
        raise MalformedDecompositionError(
            f"branch decomposition covers {bd.n} vertices, graph has {g.n}"
        )
    best = 0
    for edge in sorted(bd.tree.edges):
        value = simval(g, bd.side(edge), cap)
        if value > best:
            best = value
    return best


def _tree_paths(tree):
    """Parent/depth tables rooted at node 1, for path walks."""
    parent = {1: None}
    depth = {1: 0}
    queue = deque([1])
    while queue:
        t = queue.popleft()
        for s in tree.adjacency[t]:
            if s not in parent:
                parent[s] = t
                depth[s] = depth[t] + 1
                queue.append(s)
    return parent, depth


def _path_nodes(parent, depth, a, b):
    nodes_a = []
    nodes_b = []
    while depth[a] > depth[b]:
        nodes_a.append(a)
        a = parent[a]
    while depth[b] > depth[a]:
        nodes_b.append(b)
        b = parent[b]
    while a != b:
        nodes_a.append(a)
        nodes_b.append(b)
        a = parent[a]
        b = parent[b]
    return nodes_a + [a] + list(reversed(nodes_b))


def sim_to_td(g, bd):
    """Tree decomposition on the branch tree, placing each edge's endpoints
    along the leaf-to-leaf path.

    Every vertex also sits in the bag of its own leaf, which keeps isolated
    vertices covered; leaf bags are dominated by their own vertex. With
    branch width k, every bag has domination number at most 6k (at most 1
    at the leaves).
    """
    if bd.n != g.n:
        raise MalformedDecompositionError(
            f"branch decomposition covers {bd.n} vertices, graph has {g.n}"
        )
    if g.n == 0:
        raise EmptySetError("cannot decompose the empty graph")
    bags = {t: set() for t in bd.tree.vertices}
    for v in g.vertices:
        bags[bd.leaf_map[v]].add(v)
    parent, depth = _tree_paths(bd.tree)
    for u, v in sorted(g.edges):
        for t in _path_nodes(parent, depth, bd.leaf_map[u], bd.leaf_map[v]):
            bags[t].add(u)
            bags[t].add(v)
    return TreeDecomposition(
        bd.tree, {t: frozenset(bag) for t, bag in bags.items()}
    )


def dominating_partition(g, s, cap=DEFAULT_CAP):
    """Split `s` so every piece huddles around one member of a minimum
    dominating set of the induced subgraph.

    Non-dominators join their smallest-id adjacent dominator, so each piece
    has weak diameter at most 2 in g and there are exactly gamma(g[s])
    pieces: a certificate that s is (gamma, 3)-centred.
    """
    members = frozenset(s)
    if not members:
        raise EmptySetError("cannot partition the empty set")
    sub, vs = induced_subgraph(g, members)
    dominators = sorted(vs[u - 1] for u in minimum_dominating_set(sub, cap))
    local = {v: i + 1 for i, v in enumerate(vs)}
    groups = {dom: [dom] for dom in dominators}
    for v in sorted(members):
        if v in groups:
            continue
        adjacent = [
            dom for dom in dominators if local[dom] in sub.adjacency[local[v]]
        ]
        groups[adjacent[0]].append(v)
    return tuple(frozenset(groups[dom]) for dom in dominators)


@dataclass(frozen=True)
class SimwidthReport:
    """Record of a sim-width run: conversion, certificates, pipeline."""

    branch_width: int
    decomposition: TreeDecomposition
    bag_domination_max: int
    certificates: dict[int, tuple[frozenset, ...]]
    centred_k: int
    centred_d: int
    pipeline: PipelineReport

    @property
    def width_out(self):
        return self.pipeline.width_out

    @property
    def checks(self):
        checks = {
            "bag_domination_le_6k": self.bag_domination_max
            <= max(6 * self.branch_width, 1),
            "width_le_12k_minus_1": self.width_out
            <= 2 * self.centred_k - 1,
        }
        checks.update(
            {f"pipeline_{name}": ok for name, ok in self.pipeline.checks.items()}
        )
        return checks

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        out = {
            "branch_width": self.branch_width,
            "bag_domination_max": self.bag_domination_max,
            "centred_k": self.centred_k,
            "centred_d": self.centred_d,
        }
        out.update(self.pipeline.to_dict())
        return out


def simwidth_pipeline(g, bd, cap=DEFAULT_CAP, simval_cap=SIMVAL_CAP, budget=None):
    """Branch decomposition to low-treewidth quasi-isometry, end to end.

    Converts to a tree decomposition, certifies each bag as (6k,3)-centred
    through a dominating partition (pieces of weak diameter at most 2), and
    hands the certified decomposition to the pipeline with parameters
    (6k, 3); the final width is then at most 12k-1. A branch width of 0
    (edgeless graph) is clamped to centred parameter 1, since any non-empty
    bag needs at least one piece.
    """
    k = branch_width_sim(g, bd, simval_cap)
    td = sim_to_td(g, bd)
    centred_k = max(6 * k, 1)
    certificates = {}
    gamma_max = 0
    for t in sorted(td.nodes):
        bag = td.bag(t)
        if not bag:
            continue
        try:
            parts = dominating_partition(g, bag, cap)
        except TooLargeError as exc:
            raise TooLargeError(exc.size, exc.cap, f"bag {t}") from exc
        for part in parts:
            diam = weak_diameter(g, part)
            if not isinstance(diam, int) or diam > 2:
                raise AssertionError(
                    f"internal error: certificate part {sorted(part)} has "
                    f"weak diameter {diam}"
                )
        certificates[t] = parts
        if len(parts) > gamma_max:
            gamma_max = len(parts)
    report = run_pipeline(
        g, td, centred_k, 3, check_centred=False, budget=budget, cap=cap
    )
    return SimwidthReport(k, td, gamma_max, certificates, centred_k, 3, report)


def direction_classes(g, bd, td, t):
    """For a non-leaf branch node, the split of its bag by the component of
    the tree minus t holding each vertex's leaf."""
    comps = []
    removed = set(bd.tree.adjacency[t])
    for start in sorted(removed):
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for s in bd.tree.adjacency[x]:
                if s != t and s not in seen:
                    seen.add(s)
                    queue.append(s)
        comps.append(seen)
    bag = td.bag(t)
    return [
        frozenset(v for v in bag if bd.leaf_map[v] in comp) for comp in comps
    ]
