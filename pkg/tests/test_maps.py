import pytest

from semmap.errors import DimensionMismatchError
from semmap.graph import ConceptGraph, build_dense_graph, is_connected_subset
from semmap.enumeration import tree_at_rank
from semmap.maps import diff, region, violations
from semmap.matrix import function_set, parse_matrix


@pytest.fixture(scope="module")
def rank0_tree(dataset):
    dense = build_dense_graph(dataset)
    return ConceptGraph(dataset.n, tree_at_rank(dense, 0).edges)


def test_region_also_connected_on_max_tree(dataset, rank0_tree):
    idx = {lab.abbr: lab.id for lab in dataset.functions}
    r = region(rank0_tree, dataset, dataset.form_index("also"))
    assert r.nodes == {idx["AF"], idx["SU"]}
    assert rank0_tree.has_edge(idx["AF"], idx["SU"])  # heaviest incident edge of AF
    assert r.connected
    assert len(r.components) == 1


def test_region_singleton(dataset, rank0_tree):
    r = region(rank0_tree, dataset, dataset.form_index("더"))
    assert len(r.nodes) == 1
    assert r.connected
    assert r.induced_edges == ()


def test_region_disconnected_pair():
    m = parse_matrix("L,G,a,b,c\nen,x,1,0,1\nen,y,0,1,0", "csv")
    path = ConceptGraph.from_edges(3, [(0, 1), (1, 2)])
    r = region(path, m, 0)
    assert not r.connected
    assert r.components == (frozenset({0}), frozenset({2}))


def test_region_matches_connectivity_query(dataset, rank0_tree):
    for form in dataset.forms:
        r = region(rank0_tree, dataset, form.id)
        assert r.connected == is_connected_subset(rank0_tree, function_set(dataset, form.id))


def test_region_unknown_form(dataset, rank0_tree):
    from semmap.errors import MatrixFormatError

    with pytest.raises(MatrixFormatError):
        region(rank0_tree, dataset, 99)


def test_violations_on_rank0_tree(dataset, rank0_tree):
    v = violations(rank0_tree, dataset)
    grams = [dataset.forms[fid].gram for fid, _ in v]
    assert grams == sorted(
        ["tarong", "still", "cũng", "còn"], key=lambda g: dataset.form_index(g)
    )
    idx = {lab.abbr: lab.id for lab in dataset.functions}
    for fid, comps in v:
        assert idx["CD"] in function_set(dataset, fid)
        assert len(comps) >= 2


def test_violations_empty_on_complete(dataset, dense):
    assert violations(dense, dataset) == ()


def test_violations_ordered_by_form_id(dataset):
    g = ConceptGraph(dataset.n, ())
    v = violations(g, dataset)
    ids = [fid for fid, _ in v]
    assert ids == sorted(ids)


def test_diff_examples():
    a = ConceptGraph.from_edges(4, [(0, 1), (1, 2)])
    b = ConceptGraph.from_edges(4, [(1, 2), (2, 3)])
    d = diff(a, b)
    assert d.matched_edges == {(1, 2)}
    assert d.extra_edges == {(0, 1)}
    assert d.missing_edges == {(2, 3)}
    same = diff(a, a)
    assert same.missing_edges == same.extra_edges == frozenset()
    assert same.matched_edges == a.edge_pairs


def test_diff_disjoint_and_subset():
    a = ConceptGraph.from_edges(3, [(0, 1)])
    b = ConceptGraph.from_edges(3, [(1, 2)])
    assert diff(a, b).matched_edges == frozenset()
    sub = ConceptGraph.from_edges(3, [(0, 1)])
    sup = ConceptGraph.from_edges(3, [(0, 1), (1, 2)])
    d = diff(sub, sup)
    assert d.extra_edges == frozenset()
    assert len(d.missing_edges) == len(sup.edges) - len(sub.edges)


def test_diff_involution():
    a = ConceptGraph.from_edges(4, [(0, 1), (1, 2), (0, 3)])
    b = ConceptGraph.from_edges(4, [(1, 2), (2, 3)])
    ab, ba = diff(a, b), diff(b, a)
    assert ab.missing_edges == ba.extra_edges
    assert ab.extra_edges == ba.missing_edges
    assert ab.matched_edges == ba.matched_edges


def test_diff_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        diff(ConceptGraph(3, ()), ConceptGraph(4, ()))


def test_semantic_map_json(dataset, rank0_tree):
    payload = region(rank0_tree, dataset, dataset.form_index("also")).to_json_dict(dataset)
    assert payload["gram"] == "also"
    assert payload["connected"] is True
    assert payload["node_labels"] == ["AF", "SU"]
