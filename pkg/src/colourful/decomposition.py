"""Tree decompositions: exact computation, nice form, and the rooted
normal form used by the width-2 two-block solver.

The text format for decompositions is:

    td <nodes> <width>
    bag <node> <id> <id> ...
    te <i> <j>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    ColouredGraph,
    ParseError,
    UnsupportedInstanceError,
    connected_components,
)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbours(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in self.bags]
        for i, j in self.edges:
            out[i].add(j)
            out[j].add(i)
        return out

    def validate(self, g: ColouredGraph) -> None:
        """Raise ValueError unless this is a tree decomposition of g."""
        k = len(self.bags)
        if k == 0:
            raise ValueError("decomposition needs at least one bag")
        for i, j in self.edges:
            if not (0 <= i < k and 0 <= j < k) or i == j:
                raise ValueError(f"bad tree edge ({i},{j})")
        if len(self.edges) != k - 1:
            raise ValueError("tree must have exactly one fewer edge than nodes")
        # connectivity of the tree
        nb = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in nb[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != k:
            raise ValueError("tree of bags is not connected")
        for bag in self.bags:
            for v in bag:
                if not 0 <= v < g.n:
                    raise ValueError(f"bag vertex {v} out of range")
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(range(g.n)):
            raise ValueError("bags do not cover the vertex set")
        for u, v in g.edges():
            if not any(u in bag and v in bag for bag in self.bags):
                raise ValueError(f"edge ({u},{v}) not inside any bag")
        # each vertex's bags must induce a subtree
        for v in range(g.n):
            nodes = [i for i, bag in enumerate(self.bags) if v in bag]
            seen_v = {nodes[0]}
            stack = [nodes[0]]
            node_set = set(nodes)
            while stack:
                u = stack.pop()
                for w in nb[u]:
                    if w in node_set and w not in seen_v:
                        seen_v.add(w)
                        stack.append(w)
            if len(seen_v) != len(nodes):
                raise ValueError(f"bags containing vertex {v} are not connected")

    def is_path(self) -> bool:
        degs = [0] * len(self.bags)
        for i, j in self.edges:
            degs[i] += 1
            degs[j] += 1
        return all(d <= 2 for d in degs)


def parse_td(text: str) -> TreeDecomposition:
    lines = [
        ln.split("#", 1)[0].split()
        for ln in text.splitlines()
        if ln.split("#", 1)[0].strip()
    ]
    if not lines or lines[0][0] != "td" or len(lines[0]) != 3:
        raise ParseError("decomposition must start with 'td <nodes> <width>'")
    try:
        count, width = int(lines[0][1]), int(lines[0][2])
    except ValueError as exc:
        raise ParseError("bad td header") from exc
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for parts in lines[1:]:
        if parts[0] == "bag":
            try:
                node = int(parts[1])
                ids = frozenset(int(x) for x in parts[2:])
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad bag line: {' '.join(parts)}") from exc
            if node in bags:
                raise ParseError(f"bag {node} declared twice")
            bags[node] = ids
        elif parts[0] == "te" and len(parts) == 3:
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except ValueError as exc:
                raise ParseError(f"bad tree edge line: {' '.join(parts)}") from exc
        else:
            raise ParseError(f"unknown decomposition line '{' '.join(parts)}'")
    if sorted(bags) != list(range(count)):
        raise ParseError(f"expected bags 0..{count - 1}")
    td = TreeDecomposition(tuple(bags[i] for i in range(count)), tuple(edges))
    if td.width != width:
        raise ParseError(f"header claims width {width}, bags give {td.width}")
    return td


def serialize_td(td: TreeDecomposition) -> str:
    out = [f"td {len(td.bags)} {td.width}"]
    for i, bag in enumerate(td.bags):
        out.append("bag " + " ".join([str(i)] + [str(v) for v in sorted(bag)]))
    out.extend(f"te {i} {j}" for i, j in td.edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Exact computation via elimination orderings
# ---------------------------------------------------------------------------


def _greedy_min_degree_order(adj: list[set[int]]) -> tuple[list[int], int]:
    """Min-degree elimination ordering and the width it achieves."""
    adj = [set(s) for s in adj]
    alive = set(range(len(adj)))
    order = []
    width = 0
    while alive:
        v = min(alive, key=lambda u: (len(adj[u]), u))
        width = max(width, len(adj[v]))
        neigh = list(adj[v])
        for x in neigh:
            adj[x].discard(v)
        for x in neigh:
            for y in neigh:
                if x < y:
                    adj[x].add(y)
                    adj[y].add(x)
        alive.discard(v)
        adj[v] = set()
        order.append(v)
    return order, width


def _order_decision(adj: list[set[int]], max_width: int) -> list[int] | None:
    """An elimination ordering with all elimination degrees <= max_width,
    or None.  Memoized branch and bound over the eliminated set (the fill-in
    graph depends only on the set, not the order)."""
    n = len(adj)
    dead: set[int] = set()

    def search(adj_now: list[set[int]], alive: frozenset[int], mask: int) -> list[int] | None:
        if len(alive) <= max_width + 1:
            return sorted(alive)
        if mask in dead:
            return None
        # eliminate simplicial / near-simplicial vertices without branching
        for v in sorted(alive):
            nb = adj_now[v]
            if len(nb) <= max_width and all(
                y in adj_now[x] for x in nb for y in nb if x < y
            ):
                rest = search(*_eliminate(adj_now, alive, v), mask | (1 << v))
                if rest is None:
                    dead.add(mask)
                    return None
                return [v] + rest
        for v in sorted(alive, key=lambda u: (len(adj_now[u]), u)):
            if len(adj_now[v]) > max_width:
                continue
            rest = search(*_eliminate(adj_now, alive, v), mask | (1 << v))
            if rest is not None:
                return [v] + rest
        dead.add(mask)
        return None

    def _eliminate(adj_now: list[set[int]], alive: frozenset[int], v: int):
        nxt = [set(s) for s in adj_now]
        neigh = list(nxt[v])
        for x in neigh:
            nxt[x].discard(v)
        for x in neigh:
            for y in neigh:
                if x < y:
                    nxt[x].add(y)
                    nxt[y].add(x)
        nxt[v] = set()
        return nxt, alive - {v}

    return search(adj, frozenset(range(n)), 0)


def _td_from_order(g: ColouredGraph, order: list[int]) -> TreeDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(s) for s in g.adj]
    bags: list[frozenset[int]] = []
    fill_neigh: list[set[int]] = []
    for v in order:
        neigh = set(adj[v])
        bags.append(frozenset(neigh | {v}))
        fill_neigh.append(neigh)
        for x in neigh:
            adj[x].discard(v)
        for x in neigh:
            for y in neigh:
                if x < y:
                    adj[x].add(y)
                    adj[y].add(x)
        adj[v] = set()
    edges = []
    for i, v in enumerate(order):
        if fill_neigh[i]:
            j = min(pos[u] for u in fill_neigh[i])
            edges.append((i, j))
        elif i + 1 < len(order):
            # isolated at elimination time: hang the bag anywhere
            edges.append((i, i + 1))
    td = TreeDecomposition(tuple(bags), tuple(edges))
    return td


def exact_tree_decomposition(
    g: ColouredGraph, max_width: int, exact_cap: int = 30
) -> TreeDecomposition | None:
    """A tree decomposition of width <= max_width, or None if none exists.

    A min-degree greedy ordering is tried first for any size; the exact
    branch-and-bound decision only runs for n <= exact_cap.  Larger graphs
    that greedy cannot certify raise, since neither answer would be safe.
    """
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    adj = [set(s) for s in g.adj]
    order, width = _greedy_min_degree_order(adj)
    if width <= max_width:
        td = _td_from_order(g, order)
        assert td.width <= max_width
        return td
    if g.n > exact_cap:
        raise UnsupportedInstanceError(
            f"exact treewidth decision supports n <= {exact_cap}, got n = {g.n}"
        )
    order2 = _order_decision([set(s) for s in g.adj], max_width)
    if order2 is None:
        return None
    td = _td_from_order(g, order2)
    assert td.width <= max_width
    return td


# ---------------------------------------------------------------------------
# Nice tree decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted decomposition whose nodes are leaves (empty bag), introduce and
    forget nodes (one-vertex delta) and joins (two children, same bag).
    The root is a forget node with an empty bag (a bare leaf for n = 0)."""

    bags: tuple[frozenset[int], ...]
    kind: tuple[str, ...]
    children: tuple[tuple[int, ...], ...]
    delta: tuple[int | None, ...]
    root: int

    def postorder(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                out.append(node)
            else:
                stack.append((node, True))
                for c in self.children[node]:
                    stack.append((c, False))
        return out

    def validate(self, g: ColouredGraph) -> None:
        for i, knd in enumerate(self.kind):
            cs = self.children[i]
            if knd == "leaf":
                if cs or self.bags[i]:
                    raise ValueError(f"leaf {i} must have no children, empty bag")
            elif knd == "introduce":
                (c,) = cs
                v = self.delta[i]
                if v is None or self.bags[i] != self.bags[c] | {v} or v in self.bags[c]:
                    raise ValueError(f"introduce node {i} malformed")
            elif knd == "forget":
                (c,) = cs
                v = self.delta[i]
                if v is None or self.bags[c] != self.bags[i] | {v} or v in self.bags[i]:
                    raise ValueError(f"forget node {i} malformed")
            elif knd == "join":
                a, b = cs
                if not self.bags[i] == self.bags[a] == self.bags[b]:
                    raise ValueError(f"join node {i} must copy its children's bag")
            else:
                raise ValueError(f"unknown node kind {knd}")
        if self.bags[self.root]:
            raise ValueError("root bag must be empty")
        if g.n > 0 and self.kind[self.root] != "forget":
            raise ValueError("root must be a forget node")
        # behaves as a tree decomposition too
        edges = []
        for i, cs in enumerate(self.children):
            edges.extend((i, c) for c in cs)
        TreeDecomposition(self.bags, tuple(edges)).validate(g)


def to_nice(td: TreeDecomposition, g: ColouredGraph) -> NiceTreeDecomposition:
    """Convert a tree decomposition into a nice one rooted at a forget node."""
    bags: list[frozenset[int]] = []
    kind: list[str] = []
    children: list[tuple[int, ...]] = []
    delta: list[int | None] = []

    def add(knd: str, bag: frozenset[int], cs: tuple[int, ...], d: int | None) -> int:
        bags.append(bag)
        kind.append(knd)
        children.append(cs)
        delta.append(d)
        return len(bags) - 1

    def chain_to(node: int, target: frozenset[int]) -> int:
        """Forget/introduce one vertex at a time until the bag equals target."""
        cur = bags[node]
        for v in sorted(cur - target):
            node = add("forget", bags[node] - {v}, (node,), v)
        for v in sorted(target - cur):
            node = add("introduce", bags[node] | {v}, (node,), v)
        return node

    nb = td.neighbours()
    if g.n == 0:
        root = add("leaf", frozenset(), (), None)
        return NiceTreeDecomposition(
            tuple(bags), tuple(kind), tuple(children), tuple(delta), root
        )

    def build(i: int, parent: int) -> int:
        """Nice subtree for td node i; returns its top node (bag = bags i)."""
        kids = [j for j in sorted(nb[i]) if j != parent]
        if not kids:
            node = add("leaf", frozenset(), (), None)
            return chain_to(node, td.bags[i])
        tops = []
        for j in kids:
            sub = build(j, i)
            tops.append(chain_to(sub, td.bags[i]))
        while len(tops) > 1:
            b = tops.pop()
            a = tops.pop()
            tops.append(add("join", td.bags[i], (a, b), None))
        return tops[0]

    top = build(0, -1)
    root = chain_to(top, frozenset())
    if kind[root] != "forget":  # td.bags[0] was already empty
        root = add("introduce", bags[root] | {0}, (root,), 0)
        root = add("forget", bags[root] - {0}, (root,), 0)
    return NiceTreeDecomposition(
        tuple(bags), tuple(kind), tuple(children), tuple(delta), root
    )


# ---------------------------------------------------------------------------
# Rooted normal form for the width-2 two-block solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedDecomposition2CP:
    """Width-<=2 decomposition rooted at the bag {a, b}, in the normal form
    the two-block solver needs:

    * adjacent bags strictly nest,
    * all bags are distinct,
    * every subtree spans a connected part of the graph.

    ``head`` flags the nodes that have no ancestor-or-self with a 1-element
    bag; each head node carries an ordered ``precut`` pair.
    """

    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]
    root: int
    head: tuple[bool, ...]
    precut: dict[int, tuple[int, int]]
    subtree_vertices: tuple[frozenset[int], ...]

    def children_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p != -1:
                out[p].append(i)
        return out

    def as_tree(self) -> TreeDecomposition:
        edges = tuple(
            (i, p) for i, p in enumerate(self.parent) if p != -1
        )
        return TreeDecomposition(self.bags, edges)

    def validate(self, g: ColouredGraph, a: int, b: int) -> None:
        self.as_tree().validate(g)
        if self.bags[self.root] != frozenset({a, b}):
            raise ValueError("root bag must be {a, b}")
        if self.parent[self.root] != -1:
            raise ValueError("root must have no parent")
        bag_list = list(self.bags)
        if len(set(bag_list)) != len(bag_list):
            raise ValueError("bags must be pairwise distinct")
        for i, p in enumerate(self.parent):
            if p == -1:
                continue
            bi, bp = self.bags[i], self.bags[p]
            if not (bi < bp or bp < bi):
                raise ValueError(f"bags of {i} and its parent do not strictly nest")
        for i, vs in enumerate(self.subtree_vertices):
            sub = g.subgraph(vs)
            if sub.n and len(connected_components(sub)) != 1:
                raise ValueError(f"subtree of node {i} spans a disconnected part")
        for i, flag in enumerate(self.head):
            if flag != self._head_by_walk(i):
                raise ValueError(f"head flag of node {i} is wrong")
            if flag and i not in self.precut:
                raise ValueError(f"head node {i} lacks a precut pair")
        for i, (u, v) in self.precut.items():
            if not self.head[i]:
                raise ValueError(f"non-head node {i} carries a precut")
            if len(self.bags[i]) == 2 and self.bags[i] != frozenset({u, v}):
                raise ValueError(f"2-bag {i} precut pair must equal the bag")
            if not {u, v} <= self.bags[i]:
                raise ValueError(f"precut pair of node {i} not inside its bag")

    def _head_by_walk(self, i: int) -> bool:
        while i != -1:
            if len(self.bags[i]) == 1:
                return False
            i = self.parent[i]
        return True


def normalize_for_2cp(
    td: TreeDecomposition, g: ColouredGraph, a: int, b: int
) -> RootedDecomposition2CP:
    """Rewrite a width-<=2 decomposition of a connected graph into the rooted
    normal form for the ordered pair (a, b); a and b must be adjacent."""
    if not g.has_edge(a, b):
        raise ValueError("a and b must be adjacent")
    if td.width > 2:
        raise ValueError("normalization needs width at most 2")
    bags: dict[int, frozenset[int]] = dict(enumerate(td.bags))
    adj: dict[int, set[int]] = {i: set() for i in bags}
    for i, j in td.edges:
        adj[i].add(j)
        adj[j].add(i)
    next_id = len(td.bags)

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    def drop(i: int) -> None:
        for x in adj.pop(i):
            adj[x].discard(i)
        bags.pop(i)

    def fix_nesting() -> bool:
        for i in sorted(bags):
            for j in sorted(adj[i]):
                bi, bj = bags[i], bags[j]
                if bi <= bj or bj <= bi:
                    continue
                inter = bi & bj
                assert inter, "adjacent bags of a connected graph must meet"
                k = fresh()
                bags[k] = inter
                adj[i].discard(j)
                adj[j].discard(i)
                adj[k] = {i, j}
                adj[i].add(k)
                adj[j].add(k)
                return True
        return False

    def tree_component(start: int, removed: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w != removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def fix_duplicates() -> bool:
        by_bag: dict[frozenset[int], int] = {}
        for i in sorted(bags):
            if bags[i] in by_bag:
                keep = by_bag[bags[i]]
                # reattach only the parts of the tree that lose their link to keep
                for x in sorted(adj[i]):
                    if keep not in tree_component(x, i):
                        adj[x].add(keep)
                        adj[keep].add(x)
                for x in list(adj[i]):
                    adj[x].discard(i)
                adj.pop(i)
                bags.pop(i)
                return True
            by_bag[bags[i]] = i
        return False

    for _ in range(10 * (len(td.bags) + g.n) ** 2 + 100):
        if not (fix_nesting() or fix_duplicates()):
            break
    else:
        raise AssertionError("normalization did not converge")

    # root at the bag {a, b}, inserting it if absent
    ab = frozenset({a, b})
    root = next((i for i in sorted(bags) if bags[i] == ab), None)
    if root is None:
        host = next(i for i in sorted(bags) if ab <= bags[i])
        root = fresh()
        bags[root] = ab
        adj[root] = {host}
        adj[host].add(root)

    parent: dict[int, int] = {}

    def reroot() -> None:
        parent.clear()
        parent[root] = -1
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    stack.append(w)

    def subtree_nodes(i: int) -> list[int]:
        out = [i]
        stack = [i]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if parent.get(w) == u:
                    out.append(w)
                    stack.append(w)
        return out

    def cleanup() -> bool:
        """Drop non-root nodes with empty bags or a bag equal to the parent's."""
        changed = False
        again = True
        while again:
            again = False
            reroot()
            for i in sorted(bags):
                if i == root:
                    continue
                p = parent[i]
                if bags[i] and bags[i] != bags[p]:
                    continue
                for x in sorted(adj[i]):
                    if x != p:
                        adj[x].add(p)
                        adj[p].add(x)
                drop(i)
                changed = again = True
                break
        return changed

    def split_disconnected() -> bool:
        reroot()
        for i in sorted(bags):
            vs = sorted(set().union(*(bags[j] for j in subtree_nodes(i))))
            sub = g.subgraph(vs)
            comps = connected_components(sub)
            if len(comps) <= 1:
                continue
            assert i != root, "the whole graph is connected"
            comps_orig = sorted(
                (frozenset(vs[x] for x in comp) for comp in comps),
                key=lambda c: (len(c), min(c)),
            )
            small = comps_orig[0]
            rest = frozenset().union(*comps_orig[1:])
            nodes = subtree_nodes(i)
            p = parent[i]
            for part in (small, rest):
                clone = {j: fresh() for j in nodes}
                for j in nodes:
                    bags[clone[j]] = bags[j] & part
                    adj[clone[j]] = set()
                for j in nodes:
                    for w in adj[j]:
                        if w in clone and parent.get(w) == j:
                            adj[clone[j]].add(clone[w])
                            adj[clone[w]].add(clone[j])
                adj[clone[i]].add(p)
                adj[p].add(clone[i])
            for j in nodes:
                drop(j)
            return True
        return False

    for _ in range(10 * (len(bags) + g.n) ** 2 + 100):
        while fix_nesting() or fix_duplicates():
            pass
        cleanup()
        if not (fix_nesting() or fix_duplicates() or split_disconnected()):
            break
    else:
        raise AssertionError("normalization did not converge")
    reroot()

    # freeze with dense ids, root first
    ordering = sorted(bags)
    index = {old: i for i, old in enumerate(ordering)}
    fbags = tuple(bags[old] for old in ordering)
    fparent = tuple(
        index[parent[old]] if parent[old] != -1 else -1 for old in ordering
    )
    froot = index[root]

    n_nodes = len(fbags)
    children: list[list[int]] = [[] for _ in range(n_nodes)]
    for i, p in enumerate(fparent):
        if p != -1:
            children[p].append(i)

    subtree: list[frozenset[int]] = [frozenset()] * n_nodes
    order: list[int] = []
    stack = [froot]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(children[u])
    for u in reversed(order):
        acc = set(fbags[u])
        for c in children[u]:
            acc |= subtree[c]
        subtree[u] = frozenset(acc)

    head = [False] * n_nodes
    precut: dict[int, tuple[int, int]] = {}
    for u in order:  # parents before children
        p = fparent[u]
        if len(fbags[u]) == 1 or (p != -1 and not head[p]):
            continue
        head[u] = True
        if u == froot:
            precut[u] = (a, b)
            continue
        if len(fbags[u]) == 3:
            assert len(fbags[p]) == 2, "parent of a head 3-bag is a 2-bag"
            precut[u] = precut[p]
        else:
            assert len(fbags[u]) == 2 and len(fbags[p]) == 3
            pu, pv = precut[p]
            w = next(iter(fbags[p] - {pu, pv}))
            if fbags[u] == frozenset({pv, w}):
                precut[u] = (w, pv)
            elif fbags[u] == frozenset({pu, w}):
                precut[u] = (pu, w)
            else:
                raise AssertionError("2-bag child repeats its grandparent's bag")

    dec = RootedDecomposition2CP(
        fbags, fparent, froot, tuple(head), precut, tuple(subtree)
    )
    dec.validate(g, a, b)
    return dec
