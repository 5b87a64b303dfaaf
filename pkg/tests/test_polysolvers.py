import random

import pytest
from hypothesis import given, settings, strategies as st

from colourful.graph import (
    ColouredGraph,
    UnsupportedInstanceError,
    is_colourful_partition,
    is_valid_deletion_set,
)
from colourful.oracle import (
    brute_max_matching,
    brute_min_deletions,
    brute_min_partition,
    brute_sat,
)
from colourful.polysolvers import (
    TwoSatFormula,
    hopcroft_karp,
    solve_2cp_treewidth2,
    solve_two_coloured,
    two_sat_solve,
)

from helpers import random_coloured_graph


# ---------------------------------------------------------------------------
# 2-SAT
# ---------------------------------------------------------------------------


@st.composite
def two_cnfs(draw):
    nvars = draw(st.integers(1, 8))
    lit = st.integers(1, nvars).flatmap(
        lambda v: st.sampled_from([v, -v])
    )
    clauses = draw(st.lists(st.tuples(lit, lit), max_size=16))
    return TwoSatFormula(nvars, clauses)


@given(two_cnfs())
def test_two_sat_agrees_with_exhaustive_search(formula):
    model = two_sat_solve(formula)
    reference = brute_sat([c for c in formula.clauses] or [(1, -1)])
    if model is None:
        assert reference is None
    else:
        assert formula.check(model)


def test_two_sat_unit_clauses_force_values():
    f = TwoSatFormula(2, [(1, 1), (-2, -2)])
    model = two_sat_solve(f)
    assert model == {1: True, 2: False}


def test_two_sat_rejects_out_of_range_literals():
    with pytest.raises(ValueError):
        two_sat_solve(TwoSatFormula(1, [(1, 2)]))
    with pytest.raises(ValueError):
        two_sat_solve(TwoSatFormula(1, [(0, 1)]))


def test_two_sat_contradiction():
    f = TwoSatFormula(1, [(1, 1), (-1, -1)])
    assert two_sat_solve(f) is None


# ---------------------------------------------------------------------------
# bipartite matching
# ---------------------------------------------------------------------------


@given(
    st.integers(0, 6).flatmap(
        lambda nl: st.tuples(
            st.just(nl),
            st.integers(0, 6),
            st.lists(
                st.tuples(st.integers(0, max(nl - 1, 0)), st.integers(0, 5)),
                max_size=18,
            ),
        )
    )
)
def test_hopcroft_karp_is_maximum(args):
    n_left, n_right, raw = args
    adj = [[] for _ in range(n_left)]
    for u, v in raw:
        if u < n_left and v < n_right and v not in adj[u]:
            adj[u].append(v)
    matching = hopcroft_karp(n_left, n_right, adj)
    # well-formed: a matching on actual edges
    assert len(set(matching.values())) == len(matching)
    assert all(v in adj[u] for u, v in matching.items())
    assert len(matching) == brute_max_matching(adj)


# ---------------------------------------------------------------------------
# two-coloured instances
# ---------------------------------------------------------------------------


def test_two_coloured_requires_two_colours():
    g = ColouredGraph.build(3, (1, 2, 3), [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        solve_two_coloured(g)


def test_two_coloured_matches_oracle_on_both_problems():
    rng = random.Random(0)
    for _ in range(120):
        g = random_coloured_graph(rng, n_max=8, colours_max=2)
        res = solve_two_coloured(g, "partition")
        assert res.optimum == brute_min_partition(g).optimum
        assert is_colourful_partition(g, res.witness)
        res = solve_two_coloured(g, "components")
        assert res.optimum == brute_min_deletions(g).optimum
        assert is_valid_deletion_set(g, res.witness) or res.optimum == 0


def test_two_coloured_star():
    g = ColouredGraph.build(4, (1, 2, 2, 2), [(0, 1), (0, 2), (0, 3)])
    assert solve_two_coloured(g, "partition").optimum == 3
    assert solve_two_coloured(g, "components").optimum == 2


# ---------------------------------------------------------------------------
# two blocks at treewidth two
# ---------------------------------------------------------------------------


def test_tw2_solver_rejects_wider_graphs():
    k4 = ColouredGraph.build(
        4, (1, 1, 2, 3), [(u, v) for u in range(4) for v in range(u + 1, 4)]
    )
    with pytest.raises(UnsupportedInstanceError):
        solve_2cp_treewidth2(k4)


def test_tw2_solver_answers_trivial_instances_without_width_check():
    # a colourful clique is one block regardless of treewidth
    k4 = ColouredGraph.build(
        4, (1, 2, 3, 4), [(u, v) for u in range(4) for v in range(u + 1, 4)]
    )
    assert solve_2cp_treewidth2(k4) == (frozenset({0, 1, 2, 3}),)


def test_tw2_solver_agrees_with_oracle():
    rng = random.Random(1)
    solved = yes = 0
    while solved < 150:
        g = random_coloured_graph(rng, n_max=8, colours_max=5, connected=True)
        try:
            part = solve_2cp_treewidth2(g)
        except UnsupportedInstanceError:
            continue
        solved += 1
        opt = brute_min_partition(g).optimum
        if part is None:
            assert opt > 2
        else:
            yes += 1
            assert len(part) == opt
            assert is_colourful_partition(g, part)
    assert yes > 30


def test_tw2_solver_two_components():
    g = ColouredGraph.build(4, (1, 2, 1, 2), [(0, 1), (2, 3)])
    part = solve_2cp_treewidth2(g)
    assert part == (frozenset({0, 1}), frozenset({2, 3}))
    # three components can never make two blocks
    g3 = ColouredGraph.build(3, (1, 2, 3), [])
    assert solve_2cp_treewidth2(g3) is None


def test_tw2_solver_colourful_graph_is_one_block():
    g = ColouredGraph.build(3, (1, 2, 3), [(0, 1), (1, 2)])
    assert solve_2cp_treewidth2(g) == (frozenset({0, 1, 2}),)
