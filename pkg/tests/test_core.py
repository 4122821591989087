import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdlap import (
    GenerationError,
    GraphFormatError,
    SignedGraph,
    WeightedSignedGraph,
    components,
    generate,
    parse_edge_list,
    path_sign,
    serialize,
    switch,
)

from conftest import random_connected_graph


@st.composite
def signed_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    signs = draw(
        st.lists(st.sampled_from((1, -1)), min_size=len(pairs), max_size=len(pairs))
    )
    edges = tuple(
        (u, v, s) for (u, v), keep, s in zip(pairs, mask, signs) if keep
    )
    return SignedGraph(n, edges)


@st.composite
def weighted_graphs(draw, max_n=6):
    g = draw(signed_graphs(max_n))
    weights = draw(
        st.lists(
            st.one_of(st.integers(1, 9).map(float), st.floats(0.25, 8.0)),
            min_size=g.m,
            max_size=g.m,
        )
    )
    return WeightedSignedGraph(g, tuple(weights))


# ---------------------------------------------------------------- parsing


def test_parse_all_negative_triangle():
    wg = parse_edge_list("3\n1 2 -\n2 3 -\n1 3 -")
    assert wg.n == 3 and wg.m == 3
    assert wg.edges == ((0, 1, -1), (1, 2, -1), (0, 2, -1))
    assert wg.weights == (1.0, 1.0, 1.0)


def test_parse_weighted_edge():
    wg = parse_edge_list("2\n1 2 + 2.5")
    assert wg.edges == ((0, 1, 1),)
    assert wg.weights == (2.5,)
    assert not wg.integer_weights


def test_parse_accepts_comments_and_numeric_signs():
    wg = parse_edge_list("# a triangle\n3\n1 2 1\n2 3 -1\n\n1 3 - 4\n")
    assert [s for _, _, s in wg.edges] == [1, -1, -1]
    assert wg.weights == (1.0, 1.0, 4.0)
    assert wg.integer_weights


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("2\n1 1 +", 2, "loop"),
        ("2\n1 2 *", 2, "sign token"),
        ("2\n1 2 + -3", 2, "nonpositive weight"),
        ("2\n1 2 + 0", 2, "nonpositive weight"),
        ("2\n1 2 +\n2 1 -", 3, "duplicate"),
        ("2\n1 3 +", 2, "vertex outside"),
        ("x\n1 2 +", 1, "vertex count"),
        ("2\n1 2", 2, "fields"),
        ("", None, "missing vertex count"),
        ("0", 1, "positive"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list(text)
    assert fragment in str(err.value)
    assert err.value.line == line


def test_serialize_omits_unit_weights():
    wg = parse_edge_list("3\n1 2 + 2\n2 3 -\n1 3 - 0.5")
    assert serialize(wg) == "3\n1 2 + 2\n2 3 -\n1 3 - 0.5\n"


@settings(max_examples=150)
@given(weighted_graphs())
def test_serialize_parse_round_trip(wg):
    assert parse_edge_list(serialize(wg)) == wg


def test_round_trip_unweighted_graph():
    g = generate("cycle", 5, "allneg")
    assert parse_edge_list(serialize(g)).base == g


# ---------------------------------------------------------------- graph type


def test_graph_normalizes_endpoint_order_and_rejects_bad_input():
    g = SignedGraph(3, ((2, 0, 1),))
    assert g.edges == ((0, 2, 1),)
    with pytest.raises(ValueError, match="loop"):
        SignedGraph(2, ((0, 0, 1),))
    with pytest.raises(ValueError, match="duplicate"):
        SignedGraph(2, ((0, 1, 1), (1, 0, -1)))
    with pytest.raises(ValueError, match="sign"):
        SignedGraph(2, ((0, 1, 2),))
    with pytest.raises(ValueError, match="outside"):
        SignedGraph(2, ((0, 5, 1),))
    with pytest.raises(ValueError, match="positive integer"):
        SignedGraph(0, ())


def test_weighted_graph_validation():
    g = SignedGraph(2, ((0, 1, 1),))
    with pytest.raises(ValueError, match="weights"):
        WeightedSignedGraph(g, (1.0, 2.0))
    with pytest.raises(ValueError, match="strictly positive"):
        WeightedSignedGraph(g, (0.0,))


# ---------------------------------------------------------------- switching


def test_switch_example_on_triangle():
    g = generate("cycle", 3, "allneg")
    switched = switch(g, (-1, 1, 1))
    assert {(u, v): s for u, v, s in switched.edges} == {
        (0, 1): 1,
        (0, 2): 1,
        (1, 2): -1,
    }


@settings(max_examples=100)
@given(signed_graphs(), st.randoms(use_true_random=False))
def test_switch_identity_and_involution(g, rnd):
    assert switch(g, (1,) * g.n) == g
    zeta = tuple(rnd.choice((1, -1)) for _ in range(g.n))
    assert switch(switch(g, zeta), zeta) == g


def test_switch_rejects_bad_zeta():
    g = generate("path", 3, "allpos")
    with pytest.raises(ValueError, match="length"):
        switch(g, (1, -1))
    with pytest.raises(ValueError, match="not \\+1 or -1"):
        switch(g, (1, 0, 1))


def test_switch_preserves_cycle_signs_on_complete_graphs():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(3, 5)
        g = generate("complete", n, rng.choice((0.3, 0.5, 0.8)), seed=rng.getrandbits(32))
        zeta = tuple(rng.choice((1, -1)) for _ in range(n))
        switched = switch(g, zeta)
        for size in (3, 4):
            if size > n:
                continue
            for cyc in itertools.permutations(range(n), size):
                walk = cyc + (cyc[0],)
                assert path_sign(g, walk) == path_sign(switched, walk)


# ---------------------------------------------------------------- path sign


def test_path_sign_examples():
    tri = generate("cycle", 3, "allneg")
    assert path_sign(tri, (0, 1, 2)) == 1
    assert path_sign(tri, (0, 1, 2, 0)) == -1
    k2 = generate("path", 2, "allpos")
    assert path_sign(k2, (0, 1)) == 1


def test_path_sign_is_multiplicative_under_concatenation():
    rng = random.Random(3)
    for _ in range(25):
        g = generate("complete", 5, 0.5, seed=rng.getrandbits(32))
        walk1 = [rng.randrange(5)]
        for _ in range(4):
            walk1.append(rng.choice([v for v, _ in g.adjacency[walk1[-1]]]))
        walk2 = [walk1[-1]]
        for _ in range(4):
            walk2.append(rng.choice([v for v, _ in g.adjacency[walk2[-1]]]))
        combined = walk1 + walk2[1:]
        assert path_sign(g, combined) == path_sign(g, walk1) * path_sign(g, walk2)


def test_path_sign_rejects_non_adjacent_steps():
    g = generate("path", 3, "allpos")
    with pytest.raises(ValueError, match="not adjacent"):
        path_sign(g, (0, 2))
    with pytest.raises(ValueError, match="empty"):
        path_sign(g, ())


# ---------------------------------------------------------------- generators


def test_generate_cycle_all_negative():
    g = generate("cycle", 5, "allneg")
    assert g.n == 5 and g.m == 5
    assert all(s == -1 for _, _, s in g.edges)
    degrees = [len(g.adjacency[v]) for v in range(5)]
    assert degrees == [2] * 5


def test_generate_path_all_positive():
    g = generate("path", 3, "allpos")
    assert g.edges == ((0, 1, 1), (1, 2, 1))


def test_generate_random_is_deterministic():
    a = generate("random", 6, seed=7, p=0.5)
    b = generate("random", 6, seed=7, p=0.5)
    assert a == b
    assert len(components(a)) == 1


def test_generate_sign_string_and_negative_sets():
    g = generate("cycle", 4, "+++-")
    assert [s for _, _, s in g.edges] == [1, 1, 1, -1]
    by_index = generate("cycle", 4, signs=[3])
    assert by_index == g
    by_pair = generate("cycle", 4, signs=[(0, 3)])
    assert by_pair == g


def test_generate_rejects_bad_parameters():
    with pytest.raises(ValueError, match="cycle needs"):
        generate("cycle", 2)
    with pytest.raises(ValueError, match="unknown generator"):
        generate("wheel", 4)
    with pytest.raises(ValueError, match="sign string"):
        generate("path", 3, "+++")
    with pytest.raises(ValueError, match="probability"):
        generate("random", 4, p=1.5)
    with pytest.raises(GenerationError):
        generate("random", 3, seed=1, p=0.0)


def test_generate_random_graphs_are_connected():
    rng = random.Random(11)
    for _ in range(25):
        g = random_connected_graph(rng, 2, 8)
        assert len(components(g)) == 1


# ---------------------------------------------------------------- components


def test_components_examples():
    c4 = generate("cycle", 4, "allpos")
    assert components(c4) == [[0, 1, 2, 3]]
    two_edges = SignedGraph(4, ((0, 1, 1), (2, 3, -1)))
    assert components(two_edges) == [[0, 1], [2, 3]]
    empty = SignedGraph(3, ())
    assert components(empty) == [[0], [1], [2]]
