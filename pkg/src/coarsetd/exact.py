"""Exact exponential solvers for desk-scale graphs.

Each solver takes an explicit size cap and raises TooLargeError rather than
silently degrading. Greedy bounds are separate functions; their results are
upper bounds, never passed off as exact values.
"""

from __future__ import annotations

from .errors import EmptySetError, TooLargeError

DEFAULT_CAP = 20
TREEWIDTH_CAP = 16


def _check_cap(size, cap, what):
    if size > cap:
        raise TooLargeError(size, cap, what)


def _adjacency_masks(g):
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)
    return masks


def maximum_independent_set(g, cap=DEFAULT_CAP):
    """A maximum independent set, found by branch and bound over bitmasks."""
    _check_cap(g.n, cap, "graph")
    if g.n == 0:
        return frozenset()
    adj = _adjacency_masks(g)
    n = g.n
    best = [0, 0]  # size, mask

    def search(mask, chosen, size):
        # vertices with no neighbour left in mask always join the solution
        free = 0
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            if adj[bit.bit_length() - 1] & mask == 0:
                free |= bit
        if free:
            chosen |= free
            size += free.bit_count()
            mask &= ~free
        if mask == 0:
            if size > best[0]:
                best[0] = size
                best[1] = chosen
            return
        if size + mask.bit_count() <= best[0]:
            return
        # branch on a vertex of maximum remaining degree (lowest id on ties)
        v = -1
        vdeg = -1
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            deg = (adj[i] & mask).bit_count()
            if deg > vdeg:
                vdeg = deg
                v = i
        vbit = 1 << v
        search(mask & ~(adj[v] | vbit), chosen | vbit, size + 1)
        search(mask & ~vbit, chosen, size)

    search((1 << n) - 1, 0, 0)
    return frozenset(i + 1 for i in range(n) if best[1] >> i & 1)


def exact_independence_number(g, cap=DEFAULT_CAP):
    return len(maximum_independent_set(g, cap))


def minimum_dominating_set(g, cap=DEFAULT_CAP):
    """A minimum dominating set, by exact branch and bound."""
    if g.n == 0:
        raise EmptySetError("domination of the empty graph is undefined")
    _check_cap(g.n, cap, "graph")
    adj = _adjacency_masks(g)
    n = g.n
    closed = [adj[i] | (1 << i) for i in range(n)]
    full = (1 << n) - 1
    max_cover = max(c.bit_count() for c in closed)

    # greedy upper bound: repeatedly take the vertex covering the most
    greedy = 0
    undom = full
    while undom:
        pick = -1
        gain = -1
        for i in range(n):
            got = (closed[i] & undom).bit_count()
            if got > gain:
                gain = got
                pick = i
        greedy |= 1 << pick
        undom &= ~closed[pick]
    best = [greedy.bit_count(), greedy]

    def search(undominated, chosen, count):
        if undominated == 0:
            if count < best[0]:
                best[0] = count
                best[1] = chosen
            return
        need = -(-undominated.bit_count() // max_cover)  # ceil
        if count + need >= best[0]:
            return
        # dominate the undominated vertex with the fewest candidates
        v = -1
        vcands = n + 1
        m = undominated
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            c = closed[i].bit_count()
            if c < vcands:
                vcands = c
                v = i
        m = closed[v]
        while m:
            bit = m & -m
            m ^= bit
            u = bit.bit_length() - 1
            search(undominated & ~closed[u], chosen | bit, count + 1)

    search(full, 0, 0)
    return frozenset(i + 1 for i in range(n) if best[1] >> i & 1)


def exact_domination_number(g, cap=DEFAULT_CAP):
    return len(minimum_dominating_set(g, cap))


def k_coloring(g, k):
    """Lexicographically smallest proper k-coloring, or None.

    Vertices are assigned in id order; colors are numbered by first use, so
    the first assignment found by the ordered search is the canonical one.
    """
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    earlier = [None] * (n + 1)
    for v in g.vertices:
        earlier[v] = [w for w in sorted(g.adjacency[v]) if w < v]
    colors = [-1] * (n + 1)

    def assign(v, used):
        if v > n:
            return True
        limit = min(used + 1, k)
        blocked = {colors[w] for w in earlier[v]}
        for c in range(limit):
            if c in blocked:
                continue
            colors[v] = c
            if assign(v + 1, used + 1 if c == used else used):
                return True
        colors[v] = -1
        return False

    if assign(1, 0):
        return colors[1:]
    return None


def greedy_clique(g):
    """A maximal clique found greedily; its size is a chromatic lower bound."""
    if g.n == 0:
        return frozenset()
    start = max(g.vertices, key=lambda v: (g.degree(v), -v))
    clique = {start}
    candidates = set(g.adjacency[start])
    while candidates:
        v = max(sorted(candidates), key=lambda u: len(g.adjacency[u] & candidates))
        clique.add(v)
        candidates &= g.adjacency[v]
    return frozenset(clique)


def exact_chromatic_number(g, cap=DEFAULT_CAP):
    """Minimum proper coloring size by exhaustive k-colorability tests."""
    _check_cap(g.n, cap, "graph")
    if g.n == 0:
        return 0
    for k in range(len(greedy_clique(g)), g.n + 1):
        if k_coloring(g, k) is not None:
            return k
    raise AssertionError("unreachable: every graph is n-colorable")


def greedy_coloring(g):
    """Sequential coloring in id order: an upper bound, not the optimum."""
    assignment = {}
    for v in g.vertices:
        taken = {assignment[w] for w in g.adjacency[v] if w in assignment}
        c = 0
        while c in taken:
            c += 1
        assignment[v] = c
    count = max(assignment.values()) + 1 if assignment else 0
    return count, assignment


def _reach_boundary_count(adj, inside, v):
    """Future-degree of v once `inside` has been eliminated before it."""
    vbit = 1 << v
    allowed = inside | vbit
    seen = vbit
    frontier = vbit
    nbrs = 0
    while frontier:
        acc = 0
        m = frontier
        while m:
            bit = m & -m
            m ^= bit
            acc |= adj[bit.bit_length() - 1]
        nbrs |= acc
        frontier = acc & inside & ~seen
        seen |= frontier
    return (nbrs & ~allowed).bit_count()


def exact_treewidth(g, cap=TREEWIDTH_CAP):
    """Exact treewidth with a witness decomposition.

    Dynamic program over elimination-order prefixes; 2^n states, so keep n
    at desk scale.
    """
    from .decomposition import decomposition_from_order

    if g.n == 0:
        raise EmptySetError("treewidth of the empty graph is undefined")
    _check_cap(g.n, cap, "graph")
    n = g.n
    if n == 1:
        return 0, decomposition_from_order(g, [1])
    adj = _adjacency_masks(g)
    size = 1 << n
    dp = [0] * size
    choice = [0] * size
    dp[0] = -1
    for mask in range(1, size):
        best = n
        bestv = -1
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            v = bit.bit_length() - 1
            rest = mask ^ bit
            val = dp[rest]
            q = _reach_boundary_count(adj, rest, v)
            if q > val:
                val = q
            if val < best:
                best = val
                bestv = v
        dp[mask] = best
        choice[mask] = bestv
    order = []
    mask = size - 1
    while mask:
        v = choice[mask]
        order.append(v + 1)
        mask ^= 1 << v
    order.reverse()
    return dp[size - 1], decomposition_from_order(g, order)
