"""Acceptance battery: one test per criterion, each printing a PASS line.

Every check is exact (no tolerances); the stated runtime budgets are
asserted where the criterion pins one.
"""

import itertools
import random
import time

from colourful.fpt import (
    dp_components,
    dp_partition,
    solve_partition_nonunique,
    solve_partition_vc,
)
from colourful.gadgets import (
    gen_example1,
    k4_with_edge_colouring,
    reduce_3sat_split,
    reduce_multicut_tree,
    reduce_nae3sat_pathwidth,
    reduce_vc,
    vc_witness_deletions,
    vc_witness_partition,
)
from colourful.graph import (
    ColouredGraph,
    is_colourful_partition,
    is_valid_deletion_set,
)
from colourful.oracle import (
    brute_max_matching,
    brute_min_deletions,
    brute_min_partition,
    brute_multicut,
    brute_nae_sat,
    brute_sat,
    brute_vertex_cover,
    find_two_partition,
    tree_min_deletions,
)
from colourful.polysolvers import (
    TwoSatFormula,
    hopcroft_karp,
    solve_2cp_treewidth2,
    solve_two_coloured,
    two_sat_solve,
)
from colourful.decomposition import exact_tree_decomposition

from helpers import free_trees, random_coloured_graph, random_colours_with_repeats

C5_BUDGET = 600.0
_c5_elapsed: dict[str, float] = {}


def report(criterion: int, summary: str) -> None:
    print(f"CRITERION {criterion}: PASS — {summary}")


# ---------------------------------------------------------------------------
# 1. worked golden numbers for the two-hub family
# ---------------------------------------------------------------------------


def test_criterion_1_example1_goldens():
    t0 = time.time()
    for k in range(2, 7):
        g = gen_example1(k)
        if k <= 3:
            assert brute_min_partition(g).optimum == 2
            assert brute_min_deletions(g).optimum == 2 * k
        assert dp_partition(g).optimum == 2
        assert dp_components(g).optimum == 2 * k
    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(1, f"partition 2 and deletions 2k for k=2..6 ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# 2. every partition solver against the oracle, 300 instances each
# ---------------------------------------------------------------------------


def _planted_cover_connected(rng: random.Random) -> ColouredGraph:
    s = rng.randint(1, 3)
    t = rng.randint(1, 7)
    n = s + t
    edges = {(i, i + 1) for i in range(s - 1)}
    for w in range(s, n):
        for u in rng.sample(range(s), rng.randint(1, s)):
            edges.add((u, w))
    cols = tuple(rng.randint(1, 5) for _ in range(n))
    return ColouredGraph.build(n, cols, sorted(edges))


def test_criterion_2_partition_solvers_match_oracle():
    t0 = time.time()
    rng = random.Random(20_24)
    counts = {}

    for _ in range(300):
        g = random_coloured_graph(rng, n_max=10, colours_max=5, connected=True)
        res = dp_partition(g, max_width=9)
        assert res.optimum == brute_min_partition(g).optimum
        assert is_colourful_partition(g, res.witness)
    counts["dp"] = 300

    for _ in range(300):
        g = _planted_cover_connected(rng)
        res = solve_partition_vc(g)
        assert res.optimum == brute_min_partition(g).optimum
        assert is_colourful_partition(g, res.witness)
    counts["vc"] = 300

    done = 0
    while done < 300:
        n = rng.randint(1, 10)
        edges = {(rng.randrange(v), v) for v in range(1, n)}
        edges |= {
            (u, v)
            for u, v in [(rng.randrange(n), rng.randrange(n)) for _ in range(3)]
            if u < v
        }
        g = ColouredGraph.build(
            n, random_colours_with_repeats(rng, n, rng.randint(0, 2)), sorted(edges)
        )
        res = solve_partition_nonunique(g)
        assert res.optimum == brute_min_partition(g).optimum
        assert is_colourful_partition(g, res.witness)
        done += 1
    counts["nonunique"] = done

    for _ in range(300):
        g = random_coloured_graph(rng, n_max=10, colours_max=2, connected=True)
        res = solve_two_coloured(g)
        assert res.optimum == brute_min_partition(g).optimum
        assert is_colourful_partition(g, res.witness)
    counts["matching"] = 300

    done = 0
    while done < 300:
        g = random_coloured_graph(rng, n_max=10, colours_max=5, connected=True)
        if exact_tree_decomposition(g, 2) is None:
            continue
        part = solve_2cp_treewidth2(g)
        opt = brute_min_partition(g).optimum
        if part is None:
            assert opt > 2
        else:
            assert len(part) == opt
            assert is_colourful_partition(g, part)
        done += 1
    counts["tw2"] = done

    elapsed = time.time() - t0
    assert elapsed < 300.0
    report(2, f"300 instances per solver {sorted(counts)} ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# 3. components DP against the oracle
# ---------------------------------------------------------------------------


def test_criterion_3_components_dp_matches_oracle():
    t0 = time.time()
    rng = random.Random(30_24)
    done = 0
    while done < 300:
        g = random_coloured_graph(rng, n_max=10, colours_max=5, extra_edges=4)
        if g.m > 20 or exact_tree_decomposition(g, 3) is None:
            continue
        res = dp_components(g, max_width=3)
        assert res.optimum == brute_min_deletions(g).optimum
        assert is_valid_deletion_set(g, res.witness)
        done += 1
    elapsed = time.time() - t0
    assert elapsed < 300.0
    report(3, f"300 instances, treewidth <= 3, <= 5 colours ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# 4. on trees the two problems coincide (partition = deletions + 1)
# ---------------------------------------------------------------------------


def test_criterion_4_tree_equivalence():
    rng = random.Random(40_24)
    trees = colourings = 0
    for n in range(1, 9):
        for edges in free_trees(n):
            trees += 1
            for _ in range(20):
                cols = tuple(rng.randint(1, max(n, 1)) for _ in range(n))
                g = ColouredGraph.build(n, cols, list(edges))
                p = brute_min_partition(g).optimum
                d = brute_min_deletions(g).optimum
                assert p == d + 1
                colourings += 1
    assert trees == 48  # all free trees with up to 8 vertices
    report(4, f"{trees} trees x 20 colourings = {colourings} instances")


# ---------------------------------------------------------------------------
# 5. reduction round trips
# ---------------------------------------------------------------------------


def test_criterion_5a_split_reduction_round_trip():
    t0 = time.time()
    rng = random.Random(51_24)
    sat_count = 0
    for _ in range(50):
        nvars = rng.randint(3, 4)
        clauses = []
        for _ in range(rng.randint(1, 4)):
            vs = rng.sample(range(1, nvars + 1), 3)
            clauses.append(tuple(v * rng.choice((1, -1)) for v in vs))
        sat = brute_sat(clauses) is not None
        part = find_two_partition(reduce_3sat_split(clauses))
        assert (part is not None) == sat
        sat_count += sat
    _c5_elapsed["a"] = time.time() - t0
    report(5, f"(a) 50 split round trips, {sat_count} satisfiable "
              f"({_c5_elapsed['a']:.1f}s)")


def test_criterion_5b_nae_reduction_round_trip():
    t0 = time.time()
    rng = random.Random(52_24)
    for _ in range(30):
        clauses = [tuple(sorted(rng.sample(range(1, 4), 3)))
                   for _ in range(rng.randint(1, 3))]
        g, td = reduce_nae3sat_pathwidth(clauses)
        td.validate(g)
        assert td.width == 3
        nae = brute_nae_sat(list(clauses)) is not None
        assert (find_two_partition(g) is not None) == nae
    # the smallest formula with no not-all-equal assignment: the Fano triples
    fano = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6),
            (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    assert brute_nae_sat(fano) is None
    g, td = reduce_nae3sat_pathwidth(fano)
    td.validate(g)
    assert find_two_partition(g) is None
    _c5_elapsed["b"] = time.time() - t0
    report(5, f"(b) 30 path-width round trips + the {g.n}-vertex no-instance "
              f"({_c5_elapsed['b']:.1f}s)")


def test_criterion_5c_multicut_reduction_round_trip():
    t0 = time.time()
    rng = random.Random(53_24)
    for _ in range(30):
        n = rng.randint(2, 7)
        deg = [0] * n
        edges = []
        for v in range(1, n):
            u = rng.choice([u for u in range(v) if deg[u] < 3])
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
        src = ColouredGraph.build(n, tuple([1] * n), edges)
        allp = [(a, b) for a in range(n) for b in range(a + 1, n)]
        pairs = rng.sample(allp, min(len(allp), rng.randint(1, 4)))
        r = rng.randint(0, 3)
        feasible = brute_multicut(src, pairs, r) is not None

        plain = reduce_multicut_tree(n, edges, pairs)
        assert (tree_min_deletions(plain) + 1 <= r + 1) == feasible
        if plain.n <= 12:
            assert (brute_min_partition(plain).optimum <= r + 1) == feasible

        hardened = reduce_multicut_tree(n, edges, pairs, hardened=True)
        assert (tree_min_deletions(hardened) + 1 <= 2 * (r + 1)) == feasible
    _c5_elapsed["c"] = time.time() - t0
    report(5, f"(c) 30 multicut round trips, plain and hardened "
              f"({_c5_elapsed['c']:.1f}s)")


def test_criterion_5d_vc_witness_on_k4():
    t0 = time.time()
    n, edges, ec = k4_with_edge_colouring()
    g = reduce_vc(n, edges, ec)
    cover = brute_vertex_cover(ColouredGraph.build(n, tuple([1] * n), edges))
    part = vc_witness_partition(n, edges, ec, cover)
    assert len(part) == 3 * 4 + 3 == 15
    assert is_colourful_partition(g, part)
    _c5_elapsed["d"] = time.time() - t0
    total = sum(_c5_elapsed.values())
    assert total < C5_BUDGET
    report(5, f"(d) 15-block witness on the K4 instance; "
              f"criterion total {total:.1f}s")


# ---------------------------------------------------------------------------
# 6. the closed-form deletion witness
# ---------------------------------------------------------------------------


def test_criterion_6_deletion_witness_on_k4():
    n, edges, ec = k4_with_edge_colouring()
    g = reduce_vc(n, edges, ec)
    dels = vc_witness_deletions(n, edges, ec)
    assert len(dels) == len(edges) + 3 * n == 18
    assert is_valid_deletion_set(g, dels)
    report(6, "18-edge deletion set leaves every component colourful")


# ---------------------------------------------------------------------------
# 7. kernel bound and pipeline correctness on planted covers
# ---------------------------------------------------------------------------


def test_criterion_7_kernel_bound():
    rng = random.Random(70_24)
    biggest = 0
    for _ in range(100):
        g = _planted_cover_connected(rng)
        res = solve_partition_vc(g)
        s = res.stats["cover"]
        if s:
            bound = s + s * s * 2**s + (s - 1) * (s + 1) ** (2**s) * s * 2**s
            assert res.stats["kernel"] <= bound
        assert res.optimum == brute_min_partition(g).optimum
        biggest = max(biggest, s)
    report(7, f"100 planted instances, greedy covers up to {biggest}")


# ---------------------------------------------------------------------------
# 8. engine unit suites
# ---------------------------------------------------------------------------


def test_criterion_8_twosat_and_matching_engines():
    t0 = time.time()
    rng = random.Random(80_24)
    for _ in range(1000):
        nvars = rng.randint(1, 12)
        clauses = []
        for _ in range(rng.randint(0, 2 * nvars)):
            a = rng.randint(1, nvars) * rng.choice((1, -1))
            b = rng.randint(1, nvars) * rng.choice((1, -1))
            clauses.append((a, b))
        model = two_sat_solve(TwoSatFormula(nvars, clauses))
        reference = brute_sat(clauses) if clauses else {}
        assert (model is None) == (reference is None)

    for _ in range(200):
        nl, nr = rng.randint(0, 7), rng.randint(0, 7)
        adj = [
            sorted({rng.randrange(nr) for _ in range(rng.randint(0, nr))})
            if nr else []
            for _ in range(nl)
        ]
        assert len(hopcroft_karp(nl, nr, adj)) == brute_max_matching(adj)
    elapsed = time.time() - t0
    assert elapsed < 60.0
    report(8, f"1000 two-literal formulas + 200 matchings ({elapsed:.1f}s)")
