"""Intrinsic and extrinsic evaluation of candidate conceptual spaces.

Intrinsic: size (summed edge weights), recall (share of forms whose function
set induces a connected region), precision (same numerator over the number
of connected subsets the graph offers), and degree diversity (population
standard deviation of node degrees; lower disfavors star topologies).
Extrinsic: cell-wise adjacency-matrix agreement against a reference map,
plus closed-form lower bounds for an edge-disjoint tree and for a complete
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionMismatchError, EnumerationError
from .graph import (
    AdjacencyMatrix,
    ConceptGraph,
    Weight,
    adjacency_matrix,
    count_connected_subsets,
    graph_size,
    is_connected_subset,
)
from .matrix import FormFunctionMatrix

DEFAULT_RANKS = (0, 10_000, 20_000, 30_000, 40_000)

DEFAULT_MIN_REGION_SIZE = 2

EVALUATION_TSV_HEADER = "rank\tsize\trecall\tprecision\tdiv_d\taccuracy"


@dataclass(frozen=True)
class Evaluation:
    """Metric bundle for one candidate graph against one matrix."""

    size: Weight
    recall: float
    precision: float
    div_d: float
    accuracy: float | None
    satisfied_forms: tuple[int, ...]
    violating_forms: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "size": encode_weight(self.size),
            "recall": self.recall,
            "precision": self.precision,
            "div_d": self.div_d,
            "accuracy": self.accuracy,
            "satisfied_forms": list(self.satisfied_forms),
            "violating_forms": list(self.violating_forms),
        }

    def to_tsv_row(self, rank) -> str:
        acc = "" if self.accuracy is None else _sig3(self.accuracy)
        return "\t".join(
            [
                str(rank),
                _sig3(self.size),
                _sig3(self.recall),
                _sig3(self.precision),
                _sig3(self.div_d),
                acc,
            ]
        )


def encode_weight(w: Weight):
    """JSON-safe weight: ints stay ints, rationals become 'p/q' strings."""
    if isinstance(w, Fraction):
        return int(w) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return w


def _sig3(x) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, int):
        return str(x)
    return f"{x:.3g}"


def _check_dims(graph: ConceptGraph, matrix: FormFunctionMatrix):
    if graph.n != matrix.n:
        raise DimensionMismatchError(
            f"graph has {graph.n} nodes but matrix has {matrix.n} functions"
        )


def recall(graph: ConceptGraph, matrix: FormFunctionMatrix) -> tuple[float, tuple[int, ...]]:
    """Fraction of forms (with multiplicity) whose function set is a
    connected region of the graph, plus the satisfied form ids."""
    _check_dims(graph, matrix)
    satisfied = tuple(
        form.id
        for form in matrix.forms
        if is_connected_subset(graph, form.function_ids())
    )
    return len(satisfied) / matrix.m, satisfied


def precision(
    graph: ConceptGraph,
    matrix: FormFunctionMatrix,
    min_size: int = DEFAULT_MIN_REGION_SIZE,
    *,
    cap: int = 25,
    force: bool = False,
) -> float:
    """Satisfied forms over the number of connected subsets of size >=
    min_size the graph admits (its prediction space). Zero when the graph
    offers no such subsets."""
    _, satisfied = recall(graph, matrix)
    denom = count_connected_subsets(graph, min_size, cap=cap, force=force)
    if denom == 0:
        return 0.0
    return len(satisfied) / denom


def div_d(graph: ConceptGraph) -> float:
    """Population standard deviation of structural node degrees."""
    return float(np.std(np.asarray(graph.degrees, dtype=float)))


def accuracy(candidate: AdjacencyMatrix, reference: AdjacencyMatrix) -> float:
    """Cell-wise agreement of two adjacency matrices over all n^2 cells.

    The always-matching diagonal is included on purpose: the closed-form
    lower bounds below assume it.
    """
    if candidate.n != reference.n:
        raise DimensionMismatchError(
            f"adjacency matrices disagree: {candidate.n} != {reference.n}"
        )
    n = candidate.n
    return int((candidate.data == reference.data).sum()) / (n * n)


def lb_lt(n: int) -> float:
    """Accuracy lower bound: candidate tree sharing no edge with a reference
    tree. Both trees have n-1 edges, each mismatching two symmetric cells."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return (n * n - 4 * (n - 1)) / (n * n)


def lb_c(n: int) -> float:
    """Accuracy lower bound for a complete candidate graph, as the
    edge-overlap bound formula states it: (4(n-1) + n) / n^2."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return (4 * (n - 1) + n) / (n * n)


def lb_c_direct(n: int) -> float:
    """Directly computed accuracy of a complete graph against a spanning-tree
    reference: only the diagonal and the 2(n-1) reference-edge cells match,
    so (3n - 2) / n^2. Disagrees with lb_c; see lb_c_note."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return (3 * n - 2) / (n * n)


def lb_c_note(n: int) -> str:
    """Human-readable caveat for the complete-graph bound discrepancy."""
    return (
        f"complete-graph baseline: formula lb_c({n}) = {lb_c(n):.3f}, direct "
        f"complete-vs-tree computation = {lb_c_direct(n):.3f}; the two "
        "disagree, and the externally quoted baseline accuracy of 0.50 "
        "matches neither -- treat 0.50 as unreconciled."
    )


def evaluate(
    graph: ConceptGraph,
    matrix: FormFunctionMatrix,
    reference: ConceptGraph | None = None,
    *,
    min_size: int = DEFAULT_MIN_REGION_SIZE,
    cap: int = 25,
    force: bool = False,
) -> Evaluation:
    """Bundle all metrics for one candidate; accuracy only with a reference."""
    _check_dims(graph, matrix)
    rec, satisfied = recall(graph, matrix)
    sat = set(satisfied)
    violating = tuple(f.id for f in matrix.forms if f.id not in sat)
    denom = count_connected_subsets(graph, min_size, cap=cap, force=force)
    prec = len(satisfied) / denom if denom else 0.0
    acc = None
    if reference is not None:
        acc = accuracy(adjacency_matrix(graph), adjacency_matrix(reference))
    return Evaluation(
        size=graph_size(graph),
        recall=rec,
        precision=prec,
        div_d=div_d(graph),
        accuracy=acc,
        satisfied_forms=satisfied,
        violating_forms=violating,
    )


def evaluate_candidates(
    stream: Iterator,
    matrix: FormFunctionMatrix,
    reference: ConceptGraph | None = None,
    ranks: Iterable[int] = DEFAULT_RANKS,
    *,
    min_size: int = DEFAULT_MIN_REGION_SIZE,
) -> list[tuple[int, Evaluation]]:
    """Evaluate the trees at the requested ranks in one pass over the stream.

    `ranks` must be strictly ascending and non-negative; the stream is
    consumed only as far as the last requested rank.
    """
    targets = list(ranks)
    if any(r < 0 for r in targets):
        raise ValueError(f"ranks must be non-negative: {targets}")
    if any(b <= a for a, b in zip(targets, targets[1:])):
        raise ValueError(f"ranks must be strictly ascending: {targets}")
    if not targets:
        return []
    results = []
    want = 0
    for rank, tree in enumerate(stream):
        if rank == targets[want]:
            graph = ConceptGraph(matrix.n, tree.edges)
            results.append(
                (rank, evaluate(graph, matrix, reference, min_size=min_size))
            )
            want += 1
            if want == len(targets):
                return results
        if rank > targets[-1]:  # pragma: no cover - defensive
            break
    raise EnumerationError(
        f"stream ended before rank {targets[want]} (got {len(results)} of "
        f"{len(targets)} requested evaluations)"
    )


def evaluations_to_tsv(rows: list[tuple]) -> str:
    """Fixed-column TSV report; floats printed to 3 significant digits."""
    lines = [EVALUATION_TSV_HEADER]
    for rank, ev in rows:
        lines.append(ev.to_tsv_row(rank))
    return "\n".join(lines) + "\n"
