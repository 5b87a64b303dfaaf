"""Polynomial-time solvers: 2-SAT, bipartite matching, the matching-based
solver for two-coloured graphs, and the 2-SAT-based solver that decides
whether a connected graph of treewidth at most 2 splits into two colourful
connected blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomposition import (
    RootedDecomposition2CP,
    exact_tree_decomposition,
    normalize_for_2cp,
)
from .graph import (
    ColouredGraph,
    Partition,
    SolveResult,
    UnsupportedInstanceError,
    canonical_partition,
    connected_components,
    is_colourful_partition,
    is_colourful_set,
    norm_edge,
)


# ---------------------------------------------------------------------------
# 2-SAT
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoSatFormula:
    """CNF with at most two literals per clause.  Variables are 1..nvars and
    a literal is +v or -v; a unit clause repeats its literal."""

    nvars: int
    clauses: tuple[tuple[int, int], ...]

    def check(self, assignment: dict[int, bool]) -> bool:
        def lit(l: int) -> bool:
            return assignment[abs(l)] == (l > 0)

        return all(lit(x) or lit(y) for x, y in self.clauses)


def two_sat_solve(formula: TwoSatFormula) -> dict[int, bool] | None:
    """A satisfying assignment, or None.  Implication graph + Tarjan SCC;
    a variable is true when its positive literal's component is later in
    topological order (smaller Tarjan id) than its negative literal's."""
    n = formula.nvars
    for x, y in formula.clauses:
        for l in (x, y):
            if l == 0 or abs(l) > n:
                raise ValueError(f"literal {l} out of range")

    def node(l: int) -> int:
        return 2 * (abs(l) - 1) + (1 if l < 0 else 0)

    succ: list[list[int]] = [[] for _ in range(2 * n)]
    for x, y in formula.clauses:
        succ[node(-x)].append(node(y))
        if x != y:
            succ[node(-y)].append(node(x))

    index = [-1] * (2 * n)
    low = [0] * (2 * n)
    comp = [-1] * (2 * n)
    on_stack = [False] * (2 * n)
    stack: list[int] = []
    counter = 0
    ncomp = 0

    for start in range(2 * n):
        if index[start] != -1:
            continue
        work: list[tuple[int, int]] = [(start, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            elif low[succ[v][pi - 1]] < low[v]:
                low[v] = low[succ[v][pi - 1]]
            recursed = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if index[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recursed = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if recursed:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1

    out: dict[int, bool] = {}
    for v in range(1, n + 1):
        pos, neg = comp[node(v)], comp[node(-v)]
        if pos == neg:
            return None
        out[v] = pos < neg
    assert formula.check(out)
    return out


# ---------------------------------------------------------------------------
# Maximum bipartite matching (Hopcroft–Karp)
# ---------------------------------------------------------------------------


def hopcroft_karp(
    n_left: int, n_right: int, adj: Sequence[Iterable[int]]
) -> dict[int, int]:
    """Maximum matching of the bipartite graph with parts 0..n_left-1 and
    0..n_right-1; adj[u] lists right-neighbours of left vertex u.  Returns
    the matching as a left-to-right map."""
    INF = float("inf")
    adj_s = [sorted(set(a)) for a in adj]
    assert len(adj_s) == n_left
    for a in adj_s:
        assert all(0 <= v < n_right for v in a)
    match_l: list[int] = [-1] * n_left
    match_r: list[int] = [-1] * n_right
    dist: list[float] = [INF] * n_left

    def bfs() -> bool:
        queue = []
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj_s[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj_s[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)
    return {u: v for u, v in enumerate(match_l) if v != -1}


# ---------------------------------------------------------------------------
# Two-coloured graphs: both problems reduce to maximum matching
# ---------------------------------------------------------------------------


def solve_two_coloured(g: ColouredGraph, problem: str = "partition") -> SolveResult:
    """Exact solver for graphs using at most two colours.

    Same-coloured endpoints can never share a block, so only edges between
    the two colour classes matter and any solution keeps a matching of them:
    minimum partition size is n - |M| and minimum deletions is m - |M| for a
    maximum bichromatic matching M.
    """
    if problem not in ("partition", "components"):
        raise ValueError(f"unknown problem {problem!r}")
    colours = sorted(g.colour_set())
    if len(colours) > 2:
        raise ValueError("solver requires at most two colours")
    left = [v for v in range(g.n) if g.colours[v] == colours[0]]
    right = (
        [v for v in range(g.n) if g.colours[v] == colours[1]]
        if len(colours) == 2
        else []
    )
    rindex = {v: i for i, v in enumerate(right)}
    adj = [[rindex[w] for w in sorted(g.adj[u]) if w in rindex] for u in left]
    matching = hopcroft_karp(len(left), len(right), adj)
    pairs = sorted((left[u], right[v]) for u, v in matching.items())
    stats = {"matching": len(pairs)}
    if problem == "partition":
        matched = {u for p in pairs for u in p}
        blocks = [frozenset(p) for p in pairs]
        blocks.extend(frozenset({v}) for v in range(g.n) if v not in matched)
        witness = canonical_partition(blocks)
        assert is_colourful_partition(g, witness)
        assert len(witness) == g.n - len(pairs)
        return SolveResult(
            "partition", len(witness), witness, "two-coloured-matching", stats
        )
    kept = {norm_edge(u, v) for u, v in pairs}
    deleted = frozenset(e for e in g.edges() if e not in kept)
    assert len(deleted) == g.m - len(pairs)
    return SolveResult(
        "components", len(deleted), deleted, "two-coloured-matching", stats
    )


# ---------------------------------------------------------------------------
# Connected, treewidth <= 2: two colourful connected blocks via 2-SAT
# ---------------------------------------------------------------------------


def build_phi(g: ColouredGraph, dec: RootedDecomposition2CP) -> TwoSatFormula:
    """The 2-SAT formula whose models are exactly the two-block colourful
    partitions (V1, V2) with a in V1 and b in V2, for the rooted normal-form
    decomposition with root bag {a, b}.  Variable v+1 means "vertex v in V1".
    """
    a, b = dec.precut[dec.root]
    two_bags = {bag for bag in dec.bags if len(bag) == 2}

    def attached(x: int, y: int) -> bool:
        return g.has_edge(x, y) or frozenset({x, y}) in two_bags

    clauses: list[tuple[int, int]] = [(a + 1, a + 1), (-(b + 1), -(b + 1))]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.colours[u] == g.colours[v]:
                clauses.append((u + 1, v + 1))
                clauses.append((-(u + 1), -(v + 1)))
    for i, flag in enumerate(dec.head):
        if not flag:
            continue
        u, v = dec.precut[i]
        sub = dec.subtree_vertices[i]
        clauses.append((u + 1, -(v + 1)))
        for w in sorted(sub):
            if w != u:
                clauses.append((u + 1, -(w + 1)))
            if w != v:
                clauses.append((-(v + 1), w + 1))
        if len(dec.bags[i]) == 3:
            (w,) = dec.bags[i] - {u, v}
            if not attached(w, v):
                clauses.append((-(w + 1), u + 1))
                clauses.append((w + 1, -(u + 1)))
            if not attached(w, u):
                clauses.append((-(w + 1), v + 1))
                clauses.append((w + 1, -(v + 1)))
    for i, bag in enumerate(dec.bags):
        if len(bag) != 1:
            continue
        (u,) = bag
        for w in sorted(dec.subtree_vertices[i]):
            if w != u:
                clauses.append((-(u + 1), w + 1))
                clauses.append((u + 1, -(w + 1)))
    return TwoSatFormula(g.n, tuple(clauses))


def solve_2cp_treewidth2(g: ColouredGraph) -> Partition | None:
    """A colourful partition with at most two blocks, or None if none exists.
    Requires treewidth at most 2 (raises UnsupportedInstanceError otherwise).

    A two-block partition of a connected graph separates the ends of some
    edge, so one normalized decomposition and 2-SAT formula per edge
    orientation (a, b) covers every candidate.
    """
    if g.n == 0:
        return ()
    comps = connected_components(g)
    if len(comps) > 2:
        return None
    if len(comps) == 2:
        if all(is_colourful_set(g, c) for c in comps):
            return canonical_partition(comps)
        return None
    if is_colourful_set(g, frozenset(range(g.n))):
        return (frozenset(range(g.n)),)
    td = exact_tree_decomposition(g, 2)
    if td is None:
        raise UnsupportedInstanceError("solver requires treewidth at most 2")
    for a, b in g.edges():
        dec = normalize_for_2cp(td, g, a, b)
        assignment = two_sat_solve(build_phi(g, dec))
        if assignment is None:
            continue
        v1 = frozenset(v for v in range(g.n) if assignment[v + 1])
        v2 = frozenset(range(g.n)) - v1
        partition = canonical_partition([v1, v2])
        assert is_colourful_partition(g, partition)
        return partition
    return None
