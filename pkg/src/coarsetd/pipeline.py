"""Forward pipeline: from a (k,d)-centred decomposition to a quasi-isometric
graph of width at most 2k-1.

Stage 1 augments the graph with edges between bag-mates at distance <= d,
making every bag a union of at most k cliques (bag independence <= k).
Stage 2 partitions the augmented graph into connected parts so that the
quotient is bipartite, contracts, and pushes the decomposition through the
contraction; bags of a bipartite graph with independence <= k hold at most
2k vertices. Both stages are quasi-isometries, measured individually, and
composed at the end.

Disconnected inputs run per component; the per-component decompositions are
joined by single tree edges (bags unchanged), and the quasi-isometry
constants are reported per component since cross-component distances are
undefined.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import (
    TreeDecomposition,
    bag_metrics,
    centred_check_decomposition,
    validate_decomposition,
)
from .errors import (
    BudgetExceededError,
    DiameterExceededError,
    DisconnectedError,
    EmptySetError,
    InvalidDecompositionError,
    InvalidPartitionError,
    PreconditionError,
)
from .exact import DEFAULT_CAP, _check_cap
from .graph import (
    Graph,
    UNREACHABLE,
    induced_subgraph,
    is_bipartite,
    weak_diameter,
)
from .quasiiso import QuasiIsometryMap, compose, identity_map, measure

EXACT_PARTITION_LIMIT = 12


class Partition:
    """Partition of V(g) into connected parts, in canonical order.

    Parts are sorted by smallest member; part i corresponds to vertex i of
    the quotient graph.
    """

    __slots__ = ("n", "parts", "index")

    def __init__(self, g, parts):
        cleaned = []
        seen = set()
        for part in parts:
            members = frozenset(part)
            if not members:
                raise InvalidPartitionError("empty part")
            if members & seen:
                raise InvalidPartitionError(
                    f"parts overlap at {sorted(members & seen)}"
                )
            seen |= members
            cleaned.append(members)
        if seen != set(g.vertices):
            missing = sorted(set(g.vertices) - seen)
            extra = sorted(seen - set(g.vertices))
            raise InvalidPartitionError(
                f"parts do not cover the vertex set (missing {missing}, extra {extra})"
            )
        for members in cleaned:
            if not _part_connected(g, members):
                raise InvalidPartitionError(
                    f"part {sorted(members)} does not induce a connected subgraph"
                )
        self.n = g.n
        self.parts = tuple(sorted(cleaned, key=min))
        self.index = {}
        for i, members in enumerate(self.parts, 1):
            for v in members:
                self.index[v] = i

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition(parts={len(self.parts)}, n={self.n})"


def _part_connected(g, members):
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w in members and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == members


def quotient(g, p):
    """Contract each part to a single vertex; parts are adjacent exactly
    when some edge crosses between them."""
    edges = set()
    for u, v in g.edges:
        a, b = p.index[u], p.index[v]
        if a != b:
            edges.add((a, b) if a < b else (b, a))
    return Graph(len(p), edges)


def quotient_map(g, p, d):
    """The contraction map v -> its part, measured; parts must have weak
    diameter strictly below d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    for part in p.parts:
        diam = weak_diameter(g, part)
        if diam is UNREACHABLE or diam >= d:
            raise DiameterExceededError(part, diam, d)
    target = quotient(g, p)
    phi = QuasiIsometryMap(g, target, dict(p.index))
    return measure(g, target, phi, d)


def push_decomposition(g, td, p):
    """Decomposition of quotient(g, p): a part joins every bag it meets."""
    bags = {}
    for t in td.nodes:
        bags[t] = frozenset(p.index[v] for v in td.bag(t))
    return TreeDecomposition(td.tree, bags, shape=td.shape)


def augment(g, td, d):
    """Add an edge between any two bag-mates at distance <= d.

    Returns (h, identity quasi-isometry g -> h, td), the decomposition being
    reused unchanged: new edges stay inside bags, traces are untouched. On a
    connected graph the identity map is measured (its constant is at most
    max(d, 1)); on a disconnected one it is returned unmeasured.
    """
    report = validate_decomposition(g, td)
    if not report.ok:
        raise InvalidDecompositionError(
            f"decomposition invalid: {report.kind} at {report.witness}"
        )
    if d < 0:
        raise ValueError("d must be non-negative")
    dm = g.distances()
    edges = set(g.edges)
    for t in td.nodes:
        bag = sorted(td.bag(t))
        for i, u in enumerate(bag):
            row = dm.row(u)
            for v in bag[i + 1:]:
                dist = row[v]
                if dist is not UNREACHABLE and dist <= d:
                    edges.add((u, v))
    h = Graph(g.n, edges)
    phi = identity_map(g, h)
    if g.n > 0 and g.is_connected():
        phi = measure(g, h, phi, max(d, 1))
    return h, phi, td


def layered_parts(g):
    """Connected components of each BFS layer, rooted at the smallest vertex.

    Same-layer edges stay inside parts and cross-layer edges only join
    consecutive layers, so layer parity properly 2-colors the quotient.
    """
    root = min(g.vertices)
    dist = g.distances().row(root)
    layers = {}
    for v in g.vertices:
        layers.setdefault(dist[v], set()).add(v)
    parts = []
    for _, layer in sorted(layers.items()):
        remaining = set(layer)
        while remaining:
            start = min(remaining)
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in g.adjacency[u]:
                    if w in layer and w not in comp:
                        comp.add(w)
                        queue.append(w)
            parts.append(frozenset(comp))
            remaining -= comp
    return parts


@dataclass(frozen=True)
class BipartitePartitionResult:
    partition: Partition
    max_diameter: int
    domination_number: int
    method: str


def bipartite_partition(g, td, budget=None, cap=DEFAULT_CAP, metrics=None):
    """Partition g into connected parts whose quotient is bipartite.

    The default is BFS layering; the achieved maximum weak diameter is
    measured and reported, not promised in advance. When a budget is given
    and layering misses it, graphs of up to 12 vertices fall back to the
    exhaustive minimum-diameter search before giving up.
    """
    if g.n == 0:
        raise EmptySetError("cannot partition the empty graph")
    if not g.is_connected():
        raise DisconnectedError("bipartite partition needs a connected graph")
    report = validate_decomposition(g, td)
    if not report.ok:
        raise InvalidDecompositionError(
            f"decomposition invalid: {report.kind} at {report.witness}"
        )
    if metrics is None:
        metrics = bag_metrics(g, td, cap=cap)
    partition = Partition(g, layered_parts(g))
    diam = max(weak_diameter(g, part) for part in partition.parts)
    method = "layering"
    if budget is not None and diam > budget:
        if g.n <= EXACT_PARTITION_LIMIT:
            partition, diam = minimum_diameter_bipartite_partition(g)
            method = "exact"
        if diam > budget:
            raise BudgetExceededError(diam, budget)
    bip, _ = is_bipartite(quotient(g, partition))
    if not bip:
        raise AssertionError("internal error: partition quotient is not bipartite")
    return BipartitePartitionResult(
        partition, diam, metrics.domination_number, method
    )


def minimum_diameter_bipartite_partition(g):
    """Exhaustive search for the partition with connected parts, bipartite
    quotient, and the smallest possible maximum weak diameter.

    Iterative deepening on the diameter bound with monotone pruning;
    exponential, so limited to 12 vertices.
    """
    if g.n == 0:
        raise EmptySetError("cannot partition the empty graph")
    if not g.is_connected():
        raise DisconnectedError("partition search needs a connected graph")
    _check_cap(g.n, EXACT_PARTITION_LIMIT, "graph")
    dm = g.distances()
    diameter = max(
        dm.dist(u, v) for u in g.vertices for v in g.vertices if u != v
    ) if g.n > 1 else 0
    for bound in range(diameter + 1):
        parts = _search_partition(g, dm, bound)
        if parts is not None:
            return Partition(g, parts), bound
    raise AssertionError("internal error: the one-part partition always works")


def _search_partition(g, dm, bound):
    n = g.n
    assignment = [0] * (n + 1)
    parts = []

    def feasible(v, members):
        row = dm.row(v)
        return all(row[u] is not UNREACHABLE and row[u] <= bound for u in members)

    def quotient_bipartite():
        color = {}
        adj = {i: set() for i in range(len(parts))}
        for u, v in g.edges:
            a, b = assignment[u], assignment[v]
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        for root in range(len(parts)):
            if root in color:
                continue
            color[root] = 0
            queue = deque([root])
            while queue:
                i = queue.popleft()
                for j in adj[i]:
                    if j not in color:
                        color[j] = color[i] ^ 1
                        queue.append(j)
                    elif color[j] == color[i]:
                        return False
        return True

    def extend(v):
        if v > n:
            if all(_part_connected(g, frozenset(part)) for part in parts):
                if quotient_bipartite():
                    return [list(part) for part in parts]
            return None
        for i, part in enumerate(parts):
            if feasible(v, part):
                part.append(v)
                assignment[v] = i
                got = extend(v + 1)
                if got is not None:
                    return got
                part.pop()
        parts.append([v])
        assignment[v] = len(parts) - 1
        got = extend(v + 1)
        if got is not None:
            return got
        parts.pop()
        return None

    return extend(1)


@dataclass(frozen=True)
class IndToTwResult:
    """Output of the contraction stage."""

    graph: Graph
    map: QuasiIsometryMap
    decomposition: TreeDecomposition
    partition: Partition
    partition_diameter: int
    domination_number: int
    independence_number: int
    partition_method: str


def ind_to_tw(g, td, k, budget=None, cap=DEFAULT_CAP, metrics=None):
    """Contract a bipartite-quotient partition and push the decomposition.

    Requires bag independence at most k; the pushed decomposition then has
    bags of at most 2k quotient vertices, i.e. width at most 2k-1.
    """
    if metrics is None:
        metrics = bag_metrics(g, td, cap=cap)
    if metrics.independence_number > k:
        raise PreconditionError(
            f"bag independence number {metrics.independence_number} exceeds {k}"
        )
    bp = bipartite_partition(g, td, budget=budget, cap=cap, metrics=metrics)
    quot = quotient(g, bp.partition)
    qmap = quotient_map(g, bp.partition, bp.max_diameter + 1)
    pushed = push_decomposition(g, td, bp.partition)
    return IndToTwResult(
        quot,
        qmap,
        pushed,
        bp.partition,
        bp.max_diameter,
        bp.domination_number,
        metrics.independence_number,
        bp.method,
    )


@dataclass(frozen=True)
class PipelineComponentRun:
    """One connected component's trip through both stages.

    Vertex ids inside are component-local (1..len(vertices)); `vertices`
    lists the original ids, position i holding the original of local i+1.
    """

    vertices: tuple[int, ...]
    graph: Graph
    augmented: Graph
    stage1: QuasiIsometryMap
    stage2: IndToTwResult
    composed: QuasiIsometryMap
    claimed_bound: int

    @property
    def width_out(self):
        return self.stage2.decomposition.width


@dataclass(frozen=True)
class PipelineReport:
    """End-to-end record of a pipeline run."""

    k: int
    d: int
    shape: str
    graph: Graph
    components: tuple[PipelineComponentRun, ...]
    final_graph: Graph
    final_decomposition: TreeDecomposition
    final_map: QuasiIsometryMap

    @property
    def width_out(self):
        return self.final_decomposition.width

    @property
    def stage1_constant(self):
        return max(c.stage1.measured_q for c in self.components)

    @property
    def stage2_constant(self):
        return max(c.stage2.map.measured_q for c in self.components)

    @property
    def composed_constant(self):
        return max(c.composed.measured_q for c in self.components)

    @property
    def claimed_bound(self):
        return max(c.claimed_bound for c in self.components)

    @property
    def partition_diameter(self):
        return max(c.stage2.partition_diameter for c in self.components)

    @property
    def checks(self):
        return {
            "width_le_2k_minus_1": self.width_out <= 2 * self.k - 1,
            "composed_le_claimed": all(
                c.composed.measured_q <= c.claimed_bound for c in self.components
            ),
            "shape_preserved": self.final_decomposition.shape == self.shape,
        }

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "k": self.k,
            "d": self.d,
            "width_out": self.width_out,
            "stage_constants": [self.stage1_constant, self.stage2_constant],
            "composed_constant": self.composed_constant,
            "claimed_bound": self.claimed_bound,
            "partition_diameter": self.partition_diameter,
        }


def _restrict_decomposition(td, vertex_set, local_id):
    bags = {
        t: frozenset(local_id[v] for v in td.bag(t) if v in vertex_set)
        for t in td.nodes
    }
    return TreeDecomposition(td.tree, bags, shape=td.shape)


def _pipeline_component(g, td, original_vertices, k, d, check_centred, budget, cap):
    if check_centred:
        res = centred_check_decomposition(g, td, k, d, cap=cap, mode="exact")
        if res.all_centred is not True:
            bad = sorted(
                t for t, r in res.per_bag.items() if r.centred is not True
            )
            raise PreconditionError(
                f"decomposition is not ({k},{d})-centred (bags {bad}); "
                "pass check_centred=False to waive"
            )
    h, phi1, _ = augment(g, td, d)
    stage2 = ind_to_tw(h, td, k, budget=budget, cap=cap)
    composed = compose(phi1, stage2.map)
    claimed = (d + 2) * stage2.map.measured_q
    return PipelineComponentRun(
        tuple(original_vertices), g, h, phi1, stage2, composed, claimed
    )


def _join_decompositions(tds, vertex_offsets, shape):
    node_offsets = []
    total = 0
    for td in tds:
        node_offsets.append(total)
        total += td.tree.n
    edges = []
    bags = {}
    for i, td in enumerate(tds):
        off = node_offsets[i]
        voff = vertex_offsets[i]
        for u, v in td.tree.edges:
            edges.append((u + off, v + off))
        for t in td.nodes:
            bags[t + off] = frozenset(v + voff for v in td.bag(t))
    for i in range(1, len(tds)):
        prev, cur = tds[i - 1], tds[i]
        if shape == "path":
            prev_ends = sorted(
                t for t in prev.nodes if prev.tree.degree(t) <= 1
            )
            cur_ends = sorted(t for t in cur.nodes if cur.tree.degree(t) <= 1)
            a = prev_ends[-1] + node_offsets[i - 1]
            b = cur_ends[0] + node_offsets[i]
        else:
            a = 1 + node_offsets[i - 1]
            b = 1 + node_offsets[i]
        edges.append((a, b))
    return TreeDecomposition(Graph(total, edges), bags, shape=shape)


def run_pipeline(g, td, k, d, *, check_centred=True, budget=None, cap=DEFAULT_CAP):
    """Run both stages and report every measured constant and check.

    Precondition: td is a valid (k,d)-centred decomposition of g; the
    centred check is run in exact mode unless waived with
    check_centred=False, in which case only measured outputs are reported.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if d < 0:
        raise ValueError("d must be non-negative")
    if g.n == 0:
        raise EmptySetError("cannot run the pipeline on the empty graph")
    report = validate_decomposition(g, td)
    if not report.ok:
        raise InvalidDecompositionError(
            f"decomposition invalid: {report.kind} at {report.witness}"
        )
    comps = g.connected_components()
    runs = []
    if len(comps) == 1:
        runs.append(
            _pipeline_component(
                g, td, list(g.vertices), k, d, check_centred, budget, cap
            )
        )
    else:
        for comp in comps:
            sub, vs = induced_subgraph(g, comp)
            local = {v: i + 1 for i, v in enumerate(vs)}
            sub_td = _restrict_decomposition(td, comp, local)
            runs.append(
                _pipeline_component(sub, sub_td, vs, k, d, check_centred, budget, cap)
            )
    vertex_offsets = []
    total = 0
    final_edges = []
    for run in runs:
        vertex_offsets.append(total)
        for u, v in run.stage2.graph.edges:
            final_edges.append((u + total, v + total))
        total += run.stage2.graph.n
    final_graph = Graph(total, final_edges)
    final_td = _join_decompositions(
        [run.stage2.decomposition for run in runs], vertex_offsets, td.shape
    )
    mapping = {}
    for i, run in enumerate(runs):
        for local_v, target in run.composed.mapping.items():
            mapping[run.vertices[local_v - 1]] = target + vertex_offsets[i]
    measured = runs[0].composed.measured_q if len(runs) == 1 else None
    final_map = QuasiIsometryMap(g, final_graph, mapping, measured_q=measured)
    return PipelineReport(
        k, d, td.shape, g, tuple(runs), final_graph, final_td, final_map
    )
