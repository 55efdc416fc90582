"""Random-graph baselines and the degree-diversity vs accuracy study.

Two generators: rg1 draws every possible edge independently with a fixed
probability; rg2 draws each edge of a weighted source graph with probability
proportional to its weight, scaled so the expected edge count hits a target.
The study correlates degree diversity with reference accuracy over many
samples, per round, and is bit-reproducible from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStudyError, DimensionMismatchError, SemmapError
from .graph import ConceptGraph, adjacency_matrix, build_dense_graph
from .matrix import FormFunctionMatrix
from .metrics import accuracy, div_d

RNG_ALGORITHM = "numpy-pcg64"

GENERATORS = ("rg1", "rg2")


@dataclass(frozen=True)
class StudyConfig:
    """Both generator knobs default to tree-comparable density at run time:
    rg1's edge probability becomes 2/n (expected n-1 edges) and rg2's target
    edge count becomes n-1, so baseline samples are density-matched to the
    candidate trees they are compared against. At dense settings (p near
    0.5) degree diversity is empirically uncorrelated with accuracy and the
    study degenerates to r ~ 0."""

    rounds: int = 5
    samples_per_round: int = 1000
    generator: str = "rg1"
    rg1_edge_probability: float | None = None  # None -> 2/n at run time
    rg2_target_edge_count: int | None = None  # None -> n - 1 at run time
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 1 or self.samples_per_round < 1:
            raise ValueError("rounds and samples_per_round must be positive")
        if self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {GENERATORS}")
        if self.rg1_edge_probability is not None and not 0.0 <= self.rg1_edge_probability <= 1.0:
            raise ValueError("rg1_edge_probability must be in [0, 1]")
        if self.rg2_target_edge_count is not None and self.rg2_target_edge_count < 1:
            raise ValueError("rg2_target_edge_count must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def resolved_rg1_p(self, n: int) -> float:
        return 2.0 / n if self.rg1_edge_probability is None else self.rg1_edge_probability

    def resolved_rg2_target(self, n: int) -> int:
        return n - 1 if self.rg2_target_edge_count is None else self.rg2_target_edge_count


@dataclass(frozen=True)
class StudyResult:
    config: StudyConfig
    per_round_r: tuple[float, ...]
    mean: float
    std_dev: float  # population std over rounds
    rng_algorithm: str = RNG_ALGORITHM

    def to_json_dict(self, n: int | None = None) -> dict:
        cfg = {
            "rounds": self.config.rounds,
            "samples_per_round": self.config.samples_per_round,
            "generator": self.config.generator,
            "rg1_edge_probability": self.config.rg1_edge_probability,
            "rg2_target_edge_count": self.config.rg2_target_edge_count,
            "seed": self.config.seed,
        }
        if n is not None:
            cfg["resolved_rg1_edge_probability"] = self.config.resolved_rg1_p(n)
            cfg["resolved_rg2_target_edge_count"] = self.config.resolved_rg2_target(n)
        return {
            "config": cfg,
            "rng_algorithm": self.rng_algorithm,
            "per_round_r": list(self.per_round_r),
            "per_round_r_x100": [100.0 * r for r in self.per_round_r],
            "mean": self.mean,
            "std_dev": self.std_dev,
            "mean_x100": 100.0 * self.mean,
            "std_dev_x100": 100.0 * self.std_dev,
        }


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def rg1(n: int, p: float, rng: np.random.Generator) -> ConceptGraph:
    """Uniform random graph: each of the n(n-1)/2 edges kept independently
    with probability p, unit weight."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    pairs = _all_pairs(n)
    mask = rng.random(len(pairs)) < p
    return ConceptGraph.from_edges(n, [pairs[i] for i in np.flatnonzero(mask)])


def rg2(g0: ConceptGraph, target_edges: int, rng: np.random.Generator) -> ConceptGraph:
    """Weight-proportional random subgraph of g0.

    Edge e is kept independently with probability min(1, target * w(e) /
    total weight); zero-weight edges are never kept. Kept edges retain their
    original weight.
    """
    weights = np.array([float(e.w) for e in g0.edges])
    total = weights.sum()
    if total <= 0:
        raise SemmapError("rg2 needs at least one positive-weight edge")
    probs = np.minimum(1.0, target_edges * weights / total)
    mask = rng.random(len(weights)) < probs
    return ConceptGraph(g0.n, tuple(g0.edges[i] for i in np.flatnonzero(mask)))


def pearson(xs, ys) -> float:
    """Pearson product-moment correlation; errors on constant input rather
    than returning a silent 0."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two equal-length 1-D sequences")
    if x.size < 2:
        raise ValueError("pearson needs at least 2 points")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt((xc * xc).sum()))
    sy = float(np.sqrt((yc * yc).sum()))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateStudyError("correlation undefined: constant input sequence")
    return float((xc * yc).sum() / (sx * sy))


def round_rng(seed: int, round_index: int) -> np.random.Generator:
    """Independent, portable substream for one round."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, round_index])))


def correlation_study(
    matrix: FormFunctionMatrix,
    reference: ConceptGraph,
    config: StudyConfig,
) -> StudyResult:
    """Per round, sample graphs and correlate degree diversity with accuracy
    against the reference map; report per-round r plus mean and population
    std over rounds. Fully deterministic given (matrix, reference, config).
    """
    if reference.n != matrix.n:
        raise DimensionMismatchError(
            f"reference has {reference.n} nodes but matrix has {matrix.n} functions"
        )
    g0 = build_dense_graph(matrix) if config.generator == "rg2" else None
    target = config.resolved_rg2_target(matrix.n)
    p = config.resolved_rg1_p(matrix.n)
    ref_adj = adjacency_matrix(reference)
    per_round = []
    for rnd in range(config.rounds):
        rng = round_rng(config.seed, rnd)
        divs = np.empty(config.samples_per_round)
        accs = np.empty(config.samples_per_round)
        for i in range(config.samples_per_round):
            if config.generator == "rg1":
                g = rg1(matrix.n, p, rng)
            else:
                g = rg2(g0, target, rng)
            divs[i] = div_d(g)
            accs[i] = accuracy(adjacency_matrix(g), ref_adj)
        try:
            per_round.append(pearson(divs, accs))
        except DegenerateStudyError as exc:
            raise DegenerateStudyError(f"round {rnd}: {exc}") from exc
    arr = np.asarray(per_round)
    return StudyResult(
        config=config,
        per_round_r=tuple(per_round),
        mean=float(arr.mean()),
        std_dev=float(arr.std()),
    )
