import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_connected_subset_count, random_connected_graph, random_tree_graph
from semmap.errors import SubsetCapError
from semmap.graph import (
    AdjacencyMatrix,
    ConceptGraph,
    adjacency_matrix,
    build_dense_graph,
    components_of_subset,
    count_connected_subsets,
    graph_size,
    is_connected,
    is_connected_subset,
    is_forest,
)


def _pair_weight(graph, i, j):
    return graph.weight_by_pair[(min(i, j), max(i, j))]


def test_dense_graph_is_complete(dataset, dense):
    n = dataset.n
    assert len(dense.edges) == n * (n - 1) // 2


def test_dense_weight_af_su(dataset, dense):
    idx = {lab.abbr: lab.id for lab in dataset.functions}
    # independent oracle: count rows attesting both functions
    af, su = idx["AF"], idx["SU"]
    rows = dataset.to_array()
    expected = int((rows[:, af] & rows[:, su]).sum())
    assert expected == 9
    assert _pair_weight(dense, af, su) == 9
    assert _pair_weight(dense, idx["DE"], af) == 0


def test_dense_weights_match_row_oracle(dataset, dense):
    rows = dataset.to_array()
    for e in random.Random(0).sample(dense.edges, 25):
        assert e.w == int((rows[:, e.u] & rows[:, e.v]).sum())


def test_identical_columns_weight_equals_ones():
    from semmap.matrix import binarize

    m = binarize([[1, 1], [1, 1], [1, 1]])
    g = build_dense_graph(m)
    assert _pair_weight(g, 0, 1) == 3


def test_normalized_weights(dataset):
    g = build_dense_graph(dataset, "by_min_column_frequency")
    idx = {lab.abbr: lab.id for lab in dataset.functions}
    rows = dataset.to_array()
    af, su = idx["AF"], idx["SU"]
    assert rows[:, af].sum() == 10 and rows[:, su].sum() == 20
    assert _pair_weight(g, af, su) == Fraction(9, 10)


def test_graph_size(dense):
    assert graph_size(dense) == 286
    assert graph_size(ConceptGraph(3, ())) == 0
    assert graph_size(ConceptGraph.from_edges(2, [(0, 1, 5)])) == 5


def test_edge_validation():
    with pytest.raises(ValueError, match="self-loop"):
        ConceptGraph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError, match="parallel"):
        ConceptGraph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="negative"):
        ConceptGraph.from_edges(3, [(0, 1, -2)])
    with pytest.raises(ValueError, match="bad edge"):
        ConceptGraph.from_edges(2, [(0, 5)])


def test_connected_subset_examples(path3):
    assert not is_connected_subset(path3, {0, 2})
    assert is_connected_subset(path3, {1})
    assert is_connected_subset(path3, {0, 1, 2})
    assert is_connected_subset(path3, set())
    with pytest.raises(ValueError, match="out of range"):
        is_connected_subset(path3, {7})


def test_components_of_subset(path3):
    assert components_of_subset(path3, {0, 2}) == (frozenset({0}), frozenset({2}))
    assert components_of_subset(path3, {0, 1, 2}) == (frozenset({0, 1, 2}),)


def test_is_connected(path3):
    assert is_connected(path3)
    assert not is_connected(ConceptGraph(3, ()))


def test_count_examples(path3, k4, star4):
    assert count_connected_subsets(path3, 2) == 3
    assert count_connected_subsets(k4, 2) == 11
    assert count_connected_subsets(star4, 2) == 7
    assert brute_connected_subset_count(star4, 2) == 7


def test_count_min_size_edges(path3):
    assert count_connected_subsets(path3, 1) == 3 + 3  # singletons join
    assert count_connected_subsets(path3, 0) == 3 + 3 + 1  # plus empty set


def test_count_matches_oracle_on_random_trees():
    rng = random.Random(42)
    for _ in range(12):
        g = random_tree_graph(rng, rng.randint(2, 10))
        assert is_forest(g)
        assert count_connected_subsets(g, 2) == brute_connected_subset_count(g, 2)


def test_count_matches_oracle_on_random_graphs():
    rng = random.Random(43)
    for _ in range(8):
        g = random_connected_graph(rng, rng.randint(2, 9), extra_edges=rng.randint(1, 5))
        assert count_connected_subsets(g, 2) == brute_connected_subset_count(g, 2)


def test_count_forest_with_multiple_components():
    g = ConceptGraph.from_edges(5, [(0, 1), (2, 3)])
    assert count_connected_subsets(g, 2) == brute_connected_subset_count(g, 2) == 2


def test_count_cap():
    cyc = ConceptGraph.from_edges(26, [(i, (i + 1) % 26) for i in range(26)])
    with pytest.raises(SubsetCapError, match="force=True"):
        count_connected_subsets(cyc, 2)
    # cycle of n: n arcs per length 1..n-1 plus the full set
    assert count_connected_subsets(cyc, 2, force=True) == 26 * 24 + 1


def test_tree_dp_handles_large_star():
    # counts overflow 64-bit quickly; DP must stay exact
    n = 80
    star = ConceptGraph.from_edges(n, [(0, i) for i in range(1, n)])
    assert count_connected_subsets(star, 2) == 2 ** (n - 1) - 1


def test_adjacency_examples(dense):
    zero = adjacency_matrix(ConceptGraph(3, ()))
    assert zero.data.sum() == 0
    one = adjacency_matrix(ConceptGraph.from_edges(3, [(0, 1, 7)]))
    assert one.data[0, 1] == one.data[1, 0] == 1 and one.data.sum() == 2
    assert adjacency_matrix(dense).data.sum() == 306  # n^2 - n ones


def test_adjacency_validation():
    with pytest.raises(ValueError, match="symmetric"):
        AdjacencyMatrix(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError, match="diagonal"):
        AdjacencyMatrix(np.array([[1, 1], [1, 0]]))


def test_with_without_edge(path3):
    g = path3.with_edge(0, 2, 4)
    assert g.has_edge(0, 2)
    assert graph_size(g) == graph_size(path3) + 4
    back = g.without_edge(2, 0)
    assert back.edge_pairs == path3.edge_pairs
    with pytest.raises(ValueError, match="already present"):
        path3.with_edge(1, 0)
    with pytest.raises(ValueError, match="not present"):
        path3.without_edge(0, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_connectivity_monotone_under_edge_addition(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    g = random_connected_graph(rng, n, extra_edges=rng.randint(0, 3))
    subset = {v for v in range(n) if rng.random() < 0.5}
    missing = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (i, j) not in g.edge_pairs
    ]
    if not missing:
        return
    before = is_connected_subset(g, subset)
    u, v = rng.choice(missing)
    after = is_connected_subset(g.with_edge(u, v), subset)
    if before:
        assert after


def test_symmetric_weight_bound(dataset, dense):
    for e in dense.edges:
        assert 0 <= e.w <= dataset.m
