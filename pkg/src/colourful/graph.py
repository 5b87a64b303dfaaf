"""Vertex-coloured graphs and the shared value types of the toolkit.

A coloured graph is a simple undirected graph on vertices 0..n-1 where every
vertex carries exactly one positive integer colour.  A set of vertices is
*colourful* when no colour appears twice in it; a *colourful partition* is a
partition of the vertex set into blocks that are colourful and induce
connected subgraphs.  The edge-deletion variant asks for a smallest edge set
whose removal leaves every connected component colourful.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]
Partition = tuple[frozenset[int], ...]
EdgeSet = frozenset[Edge]


class ParseError(ValueError):
    """Raised when an instance or solution file is malformed."""


class UnsupportedInstanceError(RuntimeError):
    """Raised when an instance falls outside a solver's supported range."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ColouredGraph:
    """Immutable simple graph with one colour per vertex.

    ``colours[v]`` is the colour of vertex ``v``; ``adj[v]`` its neighbour
    set.  Vertex ids are dense (0..n-1).  Colours are arbitrary positive
    integers; parsing normalizes them to a dense range but graphs built in
    code may use any positive ids.
    """

    n: int
    colours: tuple[int, ...]
    adj: tuple[frozenset[int], ...]

    @staticmethod
    def build(n: int, colours: Sequence[int], edges: Iterable[Edge]) -> "ColouredGraph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(colours) != n:
            raise ValueError(f"expected {n} colours, got {len(colours)}")
        if any(c <= 0 for c in colours):
            raise ValueError("colours must be positive integers")
        neigh: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            neigh[u].add(v)
            neigh[v].add(u)
        return ColouredGraph(n, tuple(colours), tuple(frozenset(s) for s in neigh))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[Edge]:
        """All edges as (u, v) pairs with u < v, sorted lexicographically."""
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def colour_set(self) -> set[int]:
        return set(self.colours)

    def subgraph(self, vertices: Iterable[int]) -> "ColouredGraph":
        """Induced subgraph, with vertices renumbered by sorted old id."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = [
            (index[u], index[v])
            for u in vs
            for v in self.adj[u]
            if u < v and v in index
        ]
        return ColouredGraph.build(len(vs), [self.colours[v] for v in vs], edges)


def connected_components(g: ColouredGraph, forbidden_edges: EdgeSet | None = None) -> Partition:
    """Connected components of g (optionally with some edges removed),
    ordered by smallest contained vertex."""
    skip = forbidden_edges or frozenset()
    seen = [False] * g.n
    out: list[frozenset[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        queue = deque([s])
        seen[s] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.adj[u]:
                if not seen[v] and norm_edge(u, v) not in skip:
                    seen[v] = True
                    queue.append(v)
        out.append(frozenset(comp))
    return tuple(out)


def is_connected(g: ColouredGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_colourful_set(g: ColouredGraph, block: Iterable[int]) -> bool:
    seen: set[int] = set()
    for v in block:
        c = g.colours[v]
        if c in seen:
            return False
        seen.add(c)
    return True


def induces_connected(g: ColouredGraph, block: frozenset[int]) -> bool:
    if not block:
        return False
    start = next(iter(block))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in block and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(block)


def is_colourful_partition(g: ColouredGraph, partition: Sequence[frozenset[int]]) -> bool:
    """True iff the blocks partition V(g) and each is colourful and connected."""
    covered: set[int] = set()
    total = 0
    for block in partition:
        if not block:
            return False
        total += len(block)
        covered |= block
        if not is_colourful_set(g, block):
            return False
        if not induces_connected(g, block):
            return False
    return total == g.n and covered == set(range(g.n))


def is_colourful_graph(g: ColouredGraph) -> bool:
    """True iff every connected component of g is colourful."""
    return all(is_colourful_set(g, comp) for comp in connected_components(g))


def components_after_deletion(g: ColouredGraph, deleted: Iterable[Edge]) -> Partition:
    """Components of g after removing the given edges (normalized)."""
    f = frozenset(norm_edge(u, v) for u, v in deleted)
    for u, v in f:
        if not g.has_edge(u, v):
            raise ValueError(f"({u},{v}) is not an edge of the graph")
    return connected_components(g, f)


def is_valid_deletion_set(g: ColouredGraph, deleted: Iterable[Edge]) -> bool:
    """True iff removing the edges leaves every component colourful."""
    try:
        comps = components_after_deletion(g, deleted)
    except ValueError:
        return False
    return all(is_colourful_set(g, comp) for comp in comps)


def colour_multiplicity(g: ColouredGraph) -> int:
    """Largest number of vertices sharing one colour (0 for the empty graph).

    Any colourful partition needs at least this many blocks, since two
    same-coloured vertices can never share a block.
    """
    counts: dict[int, int] = {}
    for c in g.colours:
        counts[c] = counts.get(c, 0) + 1
    return max(counts.values(), default=0)


def crossing_edges(g: ColouredGraph, partition: Sequence[frozenset[int]]) -> EdgeSet:
    """Edges of g whose endpoints lie in different blocks of the partition."""
    block_of: dict[int, int] = {}
    for i, block in enumerate(partition):
        for v in block:
            block_of[v] = i
    return frozenset(
        (u, v) for u, v in g.edges() if block_of[u] != block_of[v]
    )


def canonical_partition(blocks: Iterable[Iterable[int]]) -> Partition:
    """Blocks as frozensets, ordered by smallest contained vertex."""
    return tuple(sorted((frozenset(b) for b in blocks), key=min))


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver run.

    ``problem`` is ``"partition"`` or ``"components"``; ``witness`` is a
    Partition or an EdgeSet accordingly; ``solver`` names the algorithm that
    produced it.  ``stats`` carries solver-specific counters (table keys,
    search nodes, ...) for benchmarking.
    """

    problem: str
    optimum: int
    witness: Partition | EdgeSet
    solver: str
    stats: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# Text formats.
#
# Instance files:
#     cgraph <n> <m>
#     v <id> <colour>          (one line per vertex)
#     e <u> <v>                (one line per edge, u < v)
# Solution files:
#     partition <k>            followed by k "block <id> <id> ..." lines
#     deletions <p>            followed by p "e <u> <v>" lines
# '#' starts a comment; blank lines are ignored.
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> Iterator[list[str]]:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line.split()


def normalize_colours(colours: Sequence[int]) -> tuple[int, ...]:
    """Remap colours to 1..k by order of first appearance over vertex ids."""
    remap: dict[int, int] = {}
    out = []
    for c in colours:
        if c not in remap:
            remap[c] = len(remap) + 1
        out.append(remap[c])
    return tuple(out)


def parse_instance(text: str) -> ColouredGraph:
    """Parse an instance file.  Colours are normalized to a dense range."""
    lines = list(_content_lines(text))
    if not lines or lines[0][0] != "cgraph":
        raise ParseError("instance must start with a 'cgraph <n> <m>' line")
    head = lines[0]
    if len(head) != 3:
        raise ParseError("malformed cgraph header")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError("cgraph header fields must be integers") from exc
    if n < 0 or m < 0:
        raise ParseError("cgraph header fields must be non-negative")
    colours: dict[int, int] = {}
    edges: list[Edge] = []
    for parts in lines[1:]:
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise ParseError(f"malformed vertex line: {' '.join(parts)}")
            try:
                vid, col = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"bad vertex line: {' '.join(parts)}") from exc
            if not 0 <= vid < n:
                raise ParseError(f"vertex id {vid} out of range 0..{n - 1}")
            if vid in colours:
                raise ParseError(f"vertex {vid} declared twice")
            if col <= 0:
                raise ParseError(f"vertex {vid} has non-positive colour {col}")
            colours[vid] = col
        elif kind == "e":
            if len(parts) != 3:
                raise ParseError(f"malformed edge line: {' '.join(parts)}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"bad edge line: {' '.join(parts)}") from exc
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u},{v}) out of range")
            if u >= v:
                raise ParseError(f"edge ({u},{v}) must satisfy u < v")
            if (u, v) in edges:
                raise ParseError(f"duplicate edge ({u},{v})")
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line kind '{kind}'")
    if len(colours) != n:
        missing = sorted(set(range(n)) - set(colours))
        raise ParseError(f"vertices without colour: {missing}")
    if len(edges) != m:
        raise ParseError(f"header claims {m} edges, found {len(edges)}")
    dense = normalize_colours([colours[v] for v in range(n)])
    return ColouredGraph.build(n, dense, edges)


def serialize_instance(g: ColouredGraph) -> str:
    """Canonical text form: vertices by id, edges sorted, colours dense."""
    dense = normalize_colours(g.colours)
    out = [f"cgraph {g.n} {g.m}"]
    out.extend(f"v {v} {dense[v]}" for v in range(g.n))
    out.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> tuple[str, Partition | EdgeSet]:
    """Parse a solution file into ('partition', blocks) or ('deletions', edges)."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty solution file")
    head = lines[0]
    if head[0] == "partition":
        if len(head) != 2:
            raise ParseError("malformed partition header")
        try:
            k = int(head[1])
        except ValueError as exc:
            raise ParseError("partition count must be an integer") from exc
        blocks: list[frozenset[int]] = []
        for parts in lines[1:]:
            if parts[0] != "block":
                raise ParseError(f"expected 'block' line, got '{parts[0]}'")
            try:
                ids = [int(x) for x in parts[1:]]
            except ValueError as exc:
                raise ParseError(f"bad block line: {' '.join(parts)}") from exc
            if not ids:
                raise ParseError("empty block line")
            if len(set(ids)) != len(ids):
                raise ParseError(f"repeated vertex in block: {' '.join(parts)}")
            blocks.append(frozenset(ids))
        if len(blocks) != k:
            raise ParseError(f"header claims {k} blocks, found {len(blocks)}")
        return "partition", canonical_partition(blocks)
    if head[0] == "deletions":
        if len(head) != 2:
            raise ParseError("malformed deletions header")
        try:
            p = int(head[1])
        except ValueError as exc:
            raise ParseError("deletion count must be an integer") from exc
        edges: set[Edge] = set()
        for parts in lines[1:]:
            if parts[0] != "e" or len(parts) != 3:
                raise ParseError(f"expected 'e <u> <v>' line, got '{' '.join(parts)}'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"bad edge line: {' '.join(parts)}") from exc
            if u >= v:
                raise ParseError(f"deleted edge ({u},{v}) must satisfy u < v")
            if (u, v) in edges:
                raise ParseError(f"duplicate deleted edge ({u},{v})")
            edges.add((u, v))
        if len(edges) != p:
            raise ParseError(f"header claims {p} deletions, found {len(edges)}")
        return "deletions", frozenset(edges)
    raise ParseError("solution must start with 'partition' or 'deletions'")


def serialize_solution(kind: str, witness: Partition | EdgeSet) -> str:
    if kind == "partition":
        blocks = canonical_partition(witness)  # type: ignore[arg-type]
        out = [f"partition {len(blocks)}"]
        out.extend("block " + " ".join(str(v) for v in sorted(b)) for b in blocks)
        return "\n".join(out) + "\n"
    if kind == "deletions":
        edges = sorted(witness)  # type: ignore[arg-type]
        out = [f"deletions {len(edges)}"]
        out.extend(f"e {u} {v}" for u, v in edges)
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown solution kind '{kind}'")
