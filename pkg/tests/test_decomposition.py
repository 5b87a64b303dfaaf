import random

import pytest
from hypothesis import given, settings, strategies as st

from colourful.decomposition import (
    TreeDecomposition,
    exact_tree_decomposition,
    normalize_for_2cp,
    parse_td,
    serialize_td,
    to_nice,
)
from colourful.graph import ColouredGraph, ParseError, UnsupportedInstanceError

from helpers import random_coloured_graph, random_tree_edges


def cycle(n):
    return ColouredGraph.build(
        n, tuple(1 for _ in range(n)), [(i, (i + 1) % n) for i in range(n)]
    )


def complete(n):
    return ColouredGraph.build(
        n, tuple(1 for _ in range(n)),
        [(u, v) for u in range(n) for v in range(u + 1, n)],
    )


# ---------------------------------------------------------------------------
# width computation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "g,width",
    [
        (ColouredGraph.build(1, (1,), []), 0),
        (ColouredGraph.build(2, (1, 1), [(0, 1)]), 1),
        (cycle(4), 2),
        (cycle(7), 2),
        (complete(4), 3),
        (complete(6), 5),
    ],
)
def test_exact_width_on_known_graphs(g, width):
    assert exact_tree_decomposition(g, width) is not None
    if width > 0:
        assert exact_tree_decomposition(g, width - 1) is None


def test_trees_have_width_one():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(2, 9)
        g = ColouredGraph.build(n, tuple([1] * n), random_tree_edges(rng, n))
        td = exact_tree_decomposition(g, 1)
        assert td is not None and td.width == 1
        td.validate(g)


def test_decomposition_validates_on_random_graphs():
    rng = random.Random(1)
    for _ in range(60):
        g = random_coloured_graph(rng, n_max=8)
        for w in range(g.n):
            td = exact_tree_decomposition(g, w)
            if td is not None:
                td.validate(g)
                assert td.width <= w
                break
        else:
            assert g.n == 0


def test_uncertified_large_instances_raise():
    n = 40
    g = complete(8)
    big = ColouredGraph.build(
        n, tuple([1] * n), [(u, v) for u, v in g.edges()]
    )
    with pytest.raises(UnsupportedInstanceError):
        exact_tree_decomposition(big, 2)


def test_validate_rejects_broken_decompositions():
    g = ColouredGraph.build(3, (1, 1, 1), [(0, 1), (1, 2)])
    # vertex 2 uncovered
    bad = TreeDecomposition((frozenset({0, 1}),), ())
    with pytest.raises(ValueError):
        bad.validate(g)
    # edge (1,2) uncovered
    bad = TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),))
    with pytest.raises(ValueError):
        bad.validate(g)
    # trace of vertex 0 disconnected
    bad = TreeDecomposition(
        (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})),
        ((0, 1), (1, 2)),
    )
    with pytest.raises(ValueError):
        bad.validate(g)
    # not a tree
    bad = TreeDecomposition(
        (frozenset({0, 1}), frozenset({1, 2})), ((0, 1), (0, 1))
    )
    with pytest.raises(ValueError):
        bad.validate(g)


def test_td_text_round_trip():
    g = cycle(5)
    td = exact_tree_decomposition(g, 2)
    again = parse_td(serialize_td(td))
    assert again.bags == td.bags
    assert sorted(again.edges) == sorted(td.edges)
    again.validate(g)


def test_parse_td_errors():
    with pytest.raises(ParseError):
        parse_td("")
    with pytest.raises(ParseError):
        parse_td("td x 1\n")
    with pytest.raises(ParseError):
        parse_td("td 2 0\nbag 0\nbag 0\nte 0 1\n")  # duplicate node id


# ---------------------------------------------------------------------------
# nice form
# ---------------------------------------------------------------------------


def test_to_nice_validates_on_random_graphs():
    rng = random.Random(2)
    for _ in range(60):
        g = random_coloured_graph(rng, n_max=8)
        for w in range(max(g.n, 1)):
            td = exact_tree_decomposition(g, w)
            if td is not None:
                break
        nice = to_nice(td, g)
        nice.validate(g)
        assert nice.bags[nice.root] == frozenset()


def test_to_nice_handles_empty_graph():
    g = ColouredGraph.build(0, (), [])
    td = exact_tree_decomposition(g, 0)
    nice = to_nice(td, g)
    nice.validate(g)


# ---------------------------------------------------------------------------
# the rooted width-2 normal form
# ---------------------------------------------------------------------------


def tw2_graphs(rng, count):
    made = 0
    while made < count:
        g = random_coloured_graph(rng, n_max=8, connected=True)
        if g.m == 0:
            continue
        if exact_tree_decomposition(g, 2) is None:
            continue
        made += 1
        yield g


def test_normal_form_invariants_hold_per_root_edge():
    rng = random.Random(3)
    for g in tw2_graphs(rng, 40):
        td = exact_tree_decomposition(g, 2)
        for a, b in list(g.edges())[:4]:
            for x, y in ((a, b), (b, a)):
                dec = normalize_for_2cp(td, g, x, y)
                dec.validate(g, x, y)
                assert dec.bags[dec.root] == frozenset({x, y})


def test_normal_form_requires_adjacent_roots():
    g = ColouredGraph.build(3, (1, 2, 3), [(0, 1), (1, 2)])
    td = exact_tree_decomposition(g, 2)
    with pytest.raises(ValueError):
        normalize_for_2cp(td, g, 0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9))
def test_normal_form_on_cycles(n):
    """Cycles stress the duplicate/nesting rules: their natural width-2
    decompositions chain overlapping triples."""
    g = cycle(n)
    td = exact_tree_decomposition(g, 2)
    dec = normalize_for_2cp(td, g, 0, 1)
    dec.validate(g, 0, 1)
