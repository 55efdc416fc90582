import numpy as np
import pytest

from semmap.baselines import (
    StudyConfig,
    correlation_study,
    pearson,
    rg1,
    rg2,
    round_rng,
)
from semmap.errors import DegenerateStudyError, DimensionMismatchError, SemmapError
from semmap.graph import ConceptGraph, build_dense_graph
from semmap.enumeration import tree_at_rank


def test_rg1_extremes():
    rng = round_rng(1, 0)
    assert rg1(6, 0.0, rng).edges == ()
    assert len(rg1(6, 1.0, rng).edges) == 15


def test_rg1_edge_count_distribution():
    # Binomial(153, 0.5): mean 76.5, se of the mean over 10k draws ~ 0.062
    rng = round_rng(2, 0)
    n_samples = 10_000
    counts = [len(rg1(18, 0.5, rng).edges) for _ in range(n_samples)]
    se = np.sqrt(153 * 0.25 / n_samples)
    assert abs(np.mean(counts) - 76.5) < 3 * se


def test_rg1_validation():
    with pytest.raises(ValueError):
        rg1(5, 1.5, round_rng(0, 0))


def test_rg2_single_positive_edge_always_kept():
    g0 = ConceptGraph.from_edges(3, [(0, 1, 4), (1, 2, 0)])
    rng = round_rng(3, 0)
    for _ in range(50):
        g = rg2(g0, 1, rng)
        assert g.edge_pairs == {(0, 1)}


def test_rg2_zero_weight_edges_never_appear(dense):
    rng = round_rng(4, 0)
    zero_pairs = {(e.u, e.v) for e in dense.edges if e.w == 0}
    for _ in range(200):
        g = rg2(dense, 17, rng)
        assert not (g.edge_pairs & zero_pairs)


def test_rg2_inclusion_frequency_matches_closed_form(dataset, dense):
    idx = {lab.abbr: lab.id for lab in dataset.functions}
    su, re = idx["SU"], idx["RE"]
    pair = (min(su, re), max(su, re))
    w = dense.weight_by_pair[pair]
    assert w == 11
    expected = min(1.0, 17 * w / 286)
    rng = round_rng(5, 0)
    hits = sum(pair in rg2(dense, 17, rng).edge_pairs for _ in range(10_000))
    assert abs(hits / 10_000 - expected) <= 0.02


def test_rg2_needs_positive_weight():
    flat = ConceptGraph.from_edges(3, [(0, 1, 0), (1, 2, 0)])
    with pytest.raises(SemmapError, match="positive-weight"):
        rg2(flat, 2, round_rng(6, 0))


def test_pearson_examples():
    xs = [1.0, 2.0, 3.0, 4.0]
    assert pearson(xs, [2 * x + 1 for x in xs]) == pytest.approx(1.0)
    assert pearson(xs, [-x for x in xs]) == pytest.approx(-1.0)
    with pytest.raises(DegenerateStudyError, match="constant"):
        pearson([1.0, 1.0, 1.0], xs[:3])
    with pytest.raises(ValueError):
        pearson([1.0], [2.0])


@pytest.fixture(scope="module")
def reference_tree(dataset):
    dense = build_dense_graph(dataset)
    return ConceptGraph(dataset.n, tree_at_rank(dense, 0).edges)


def test_study_deterministic(dataset, reference_tree):
    cfg = StudyConfig(rounds=2, samples_per_round=50, seed=123)
    a = correlation_study(dataset, reference_tree, cfg)
    b = correlation_study(dataset, reference_tree, cfg)
    assert a.per_round_r == b.per_round_r
    assert a.mean == b.mean and a.std_dev == b.std_dev


def test_study_rounds_differ_with_seed(dataset, reference_tree):
    a = correlation_study(dataset, reference_tree, StudyConfig(rounds=2, samples_per_round=50, seed=1))
    b = correlation_study(dataset, reference_tree, StudyConfig(rounds=2, samples_per_round=50, seed=2))
    assert a.per_round_r != b.per_round_r


def test_study_rg2_negative_mean(dataset, reference_tree):
    cfg = StudyConfig(generator="rg2", rounds=2, samples_per_round=300, seed=11)
    res = correlation_study(dataset, reference_tree, cfg)
    assert res.mean < 0


def test_study_population_std(dataset, reference_tree):
    cfg = StudyConfig(rounds=3, samples_per_round=60, seed=5)
    res = correlation_study(dataset, reference_tree, cfg)
    arr = np.asarray(res.per_round_r)
    assert res.std_dev == pytest.approx(float(arr.std(ddof=0)))


def test_study_dimension_mismatch(dataset):
    with pytest.raises(DimensionMismatchError):
        correlation_study(dataset, ConceptGraph(4, ()), StudyConfig())


def test_study_degenerate_round_identified():
    from semmap.matrix import parse_matrix

    tiny = parse_matrix("L,G,a,b\nen,x,1,1", "csv")
    ref = ConceptGraph.from_edges(2, [(0, 1)])
    # n=2 with p=1: every sample is the single-edge graph, div_d constant
    cfg = StudyConfig(rounds=1, samples_per_round=10, rg1_edge_probability=1.0, seed=0)
    with pytest.raises(DegenerateStudyError, match="round 0"):
        correlation_study(tiny, ref, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        StudyConfig(rounds=0)
    with pytest.raises(ValueError):
        StudyConfig(generator="rg3")
    with pytest.raises(ValueError):
        StudyConfig(rg1_edge_probability=2.0)
    with pytest.raises(ValueError):
        StudyConfig(seed=-1)


def test_config_resolved_defaults():
    cfg = StudyConfig()
    assert cfg.resolved_rg1_p(18) == pytest.approx(2 / 18)
    assert cfg.resolved_rg2_target(18) == 17
    explicit = StudyConfig(rg1_edge_probability=0.4, rg2_target_edge_count=9)
    assert explicit.resolved_rg1_p(18) == 0.4
    assert explicit.resolved_rg2_target(18) == 9


def test_result_json_shape(dataset, reference_tree):
    cfg = StudyConfig(rounds=2, samples_per_round=30, seed=3)
    res = correlation_study(dataset, reference_tree, cfg)
    payload = res.to_json_dict(dataset.n)
    assert payload["rng_algorithm"] == "numpy-pcg64"
    assert len(payload["per_round_r"]) == 2
    assert payload["mean_x100"] == pytest.approx(100 * res.mean)
    assert payload["config"]["resolved_rg1_edge_probability"] == pytest.approx(2 / 18)
