"""Per-form semantic maps: region extraction, violation diagnosis, diffs."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import ConceptGraph, Edge, check_same_n, components_of_subset
from .matrix import FormFunctionMatrix, function_set
from .metrics import encode_weight


@dataclass(frozen=True)
class SemanticMap:
    """The region a form occupies in a conceptual space: its function nodes,
    the edges among them, and how the region decomposes when disconnected."""

    form: int
    nodes: frozenset[int]
    induced_edges: tuple[Edge, ...]
    connected: bool
    components: tuple[frozenset[int], ...]

    def to_json_dict(self, matrix: FormFunctionMatrix | None = None) -> dict:
        payload = {
            "form": self.form,
            "nodes": sorted(self.nodes),
            "induced_edges": [
                {"u": e.u, "v": e.v, "w": encode_weight(e.w)} for e in self.induced_edges
            ],
            "connected": self.connected,
            "components": [sorted(c) for c in self.components],
        }
        if matrix is not None:
            payload["gram"] = matrix.forms[self.form].gram
            payload["language"] = matrix.forms[self.form].language
            payload["node_labels"] = [matrix.functions[i].abbr for i in sorted(self.nodes)]
        return payload


@dataclass(frozen=True)
class MapDiff:
    """Structural edge-set comparison of a candidate against a reference."""

    matched_edges: frozenset[tuple[int, int]]
    missing_edges: frozenset[tuple[int, int]]
    extra_edges: frozenset[tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {
            "matched_edges": sorted(self.matched_edges),
            "missing_edges": sorted(self.missing_edges),
            "extra_edges": sorted(self.extra_edges),
        }


def region(graph: ConceptGraph, matrix: FormFunctionMatrix, x: int) -> SemanticMap:
    """Induced subgraph of the form's function set, with connectivity verdict
    and component decomposition (components ordered by smallest member)."""
    if graph.n != matrix.n:
        raise ValueError(f"graph has {graph.n} nodes but matrix has {matrix.n} functions")
    nodes = function_set(matrix, x)
    induced = tuple(e for e in graph.edges if e.u in nodes and e.v in nodes)
    components = components_of_subset(graph, nodes)
    return SemanticMap(
        form=x,
        nodes=nodes,
        induced_edges=induced,
        connected=len(components) <= 1,
        components=components,
    )


def violations(
    graph: ConceptGraph, matrix: FormFunctionMatrix
) -> tuple[tuple[int, tuple[frozenset[int], ...]], ...]:
    """All forms whose region is disconnected, with their component
    decompositions, ordered by form id."""
    out = []
    for form in matrix.forms:
        r = region(graph, matrix, form.id)
        if not r.connected:
            out.append((form.id, r.components))
    return tuple(out)


def diff(candidate: ConceptGraph, reference: ConceptGraph) -> MapDiff:
    """Edge-set diff, weights ignored."""
    check_same_n(candidate, reference)
    cand = candidate.edge_pairs
    ref = reference.edge_pairs
    return MapDiff(
        matched_edges=frozenset(cand & ref),
        missing_edges=frozenset(ref - cand),
        extra_edges=frozenset(cand - ref),
    )
