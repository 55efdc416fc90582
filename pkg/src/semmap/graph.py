"""Weighted undirected graphs over function nodes.

Covers dense-graph construction from a form-function matrix (edge weight =
column dot product, the colexification degree), connectivity queries on
induced subsets, connected-subset counting, and adjacency matrices. Graphs
are immutable values; every query here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DimensionMismatchError, SubsetCapError
from .matrix import FormFunctionMatrix

Weight = int | Fraction

WEIGHT_MODES = ("none", "by_min_column_frequency")

DEFAULT_SUBSET_CAP = 25


class Edge(NamedTuple):
    u: int
    v: int
    w: Weight


@dataclass(frozen=True)
class ConceptGraph:
    """Simple weighted graph on nodes 0..n-1.

    Edges are stored sorted by (u, v) with u < v; the position of an edge in
    this tuple is its canonical edge id, which downstream tie-breaking relies
    on. Use `from_edges` rather than the raw constructor.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one node, got n={self.n}")
        seen = set()
        prev = None
        for e in self.edges:
            if not (0 <= e.u < e.v < self.n):
                raise ValueError(f"bad edge ({e.u}, {e.v}) for n={self.n}")
            if (e.u, e.v) in seen:
                raise ValueError(f"parallel edge ({e.u}, {e.v})")
            if e.w < 0:
                raise ValueError(f"negative weight on edge ({e.u}, {e.v})")
            if prev is not None and (e.u, e.v) < prev:
                raise ValueError("edges must be sorted by (u, v); use from_edges")
            seen.add((e.u, e.v))
            prev = (e.u, e.v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "ConceptGraph":
        """Build from (u, v) or (u, v, w) tuples; orientation is normalized,
        omitted weights default to 1."""
        normalized = []
        for item in edges:
            if len(item) == 2:
                u, v = item
                w: Weight = 1
            else:
                u, v, w = item
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if u > v:
                u, v = v, u
            normalized.append(Edge(u, v, w))
        normalized.sort(key=lambda e: (e.u, e.v))
        return cls(n, tuple(normalized))

    @cached_property
    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((e.u, e.v) for e in self.edges)

    @cached_property
    def weight_by_pair(self) -> dict[tuple[int, int], Weight]:
        return {(e.u, e.v): e.w for e in self.edges}

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for e in self.edges:
            masks[e.u] |= 1 << e.v
            masks[e.v] |= 1 << e.u
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return tuple(deg)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_pairs

    def with_edge(self, u: int, v: int, w: Weight = 1) -> "ConceptGraph":
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) already present")
        return ConceptGraph.from_edges(self.n, list(self.edges) + [(u, v, w)])

    def without_edge(self, u: int, v: int) -> "ConceptGraph":
        if u > v:
            u, v = v, u
        if not self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) not present")
        return ConceptGraph(self.n, tuple(e for e in self.edges if (e.u, e.v) != (u, v)))


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """Binary symmetric matrix with zero diagonal (structural edge presence)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {arr.shape}")
        if not np.array_equal(arr, arr.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(arr) != 0):
            raise ValueError("adjacency matrix must have a zero diagonal")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("adjacency matrix must be binary")
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]


def build_dense_graph(matrix: FormFunctionMatrix, normalize: str = "none") -> ConceptGraph:
    """Complete graph on the matrix's functions.

    Weight of {i, j} is the number of forms attesting both functions (dot
    product of the two bit columns). Zero-weight edges are kept so spanning
    trees always exist. normalize="by_min_column_frequency" divides each
    weight by the smaller of the two column sums, giving exact rationals.
    """
    if normalize not in WEIGHT_MODES:
        raise ValueError(f"normalize must be one of {WEIGHT_MODES}, got {normalize!r}")
    bits = matrix.to_array().astype(np.int64)
    co = bits.T @ bits
    colsums = bits.sum(axis=0)
    edges = []
    for i in range(matrix.n):
        for j in range(i + 1, matrix.n):
            w: Weight = int(co[i, j])
            if normalize == "by_min_column_frequency":
                denom = int(min(colsums[i], colsums[j]))
                w = Fraction(w, denom) if denom else Fraction(0)
            edges.append(Edge(i, j, w))
    return ConceptGraph(matrix.n, tuple(edges))


def _subset_mask(graph: ConceptGraph, subset: Iterable[int]) -> int:
    mask = 0
    for v in subset:
        if not 0 <= v < graph.n:
            raise ValueError(f"node id {v} out of range for n={graph.n}")
        mask |= 1 << v
    return mask


def _mask_is_connected(mask: int, nbr: tuple[int, ...]) -> bool:
    if mask == 0:
        return True
    start = mask & -mask
    reached = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            nxt |= nbr[v]
            f &= f - 1
        nxt &= mask & ~reached
        reached |= nxt
        frontier = nxt
    return reached == mask


def is_connected_subset(graph: ConceptGraph, subset: Iterable[int]) -> bool:
    """True iff the subgraph induced by `subset` is connected.

    Only structural edges of the graph count; weights are irrelevant.
    Subsets of size <= 1 are connected by convention.
    """
    mask = _subset_mask(graph, subset)
    if mask & (mask - 1) == 0:  # empty or singleton
        return True
    return _mask_is_connected(mask, graph.neighbor_masks)


def is_connected(graph: ConceptGraph) -> bool:
    return is_connected_subset(graph, range(graph.n))


def components_of_subset(graph: ConceptGraph, subset: Iterable[int]) -> tuple[frozenset[int], ...]:
    """Connected components of the induced subgraph, ordered by smallest member."""
    mask = _subset_mask(graph, subset)
    nbr = graph.neighbor_masks
    comps = []
    remaining = mask
    while remaining:
        start = remaining & -remaining
        reached = start
        frontier = start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                nxt |= nbr[v]
                f &= f - 1
            nxt &= mask & ~reached
            reached |= nxt
            frontier = nxt
        comps.append(frozenset(v for v in range(graph.n) if (reached >> v) & 1))
        remaining &= ~reached
    comps.sort(key=min)
    return tuple(comps)


def is_forest(graph: ConceptGraph) -> bool:
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges:
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _forest_subset_sizes(graph: ConceptGraph) -> list[int]:
    """Connected-subset counts per size for a forest.

    Rooted DP: each connected subset has a unique topmost node; the size
    polynomial at node v is z * prod over children (1 + poly(child)).
    Coefficients are Python ints (counts explode past int64 quickly).
    """
    n = graph.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in graph.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    sizes = [0] * (n + 1)
    visited = [False] * n
    poly: list[list[int] | None] = [None] * n
    for root in range(n):
        if visited[root]:
            continue
        order = []
        stack = [(root, -1)]
        visited[root] = True
        while stack:
            v, par = stack.pop()
            order.append((v, par))
            for nb in adj[v]:
                if nb != par:
                    visited[nb] = True
                    stack.append((nb, v))
        for v, par in reversed(order):
            p = [0, 1]  # z
            for nb in adj[v]:
                if nb == par:
                    continue
                child = poly[nb]
                assert child is not None
                # p *= (1 + child polynomial)
                out = [0] * (len(p) + len(child) - 1)
                for a, ca in enumerate(p):
                    if not ca:
                        continue
                    out[a] += ca
                    for b, cb in enumerate(child):
                        if cb:
                            out[a + b] += ca * cb
                p = out
            poly[v] = p
            for k, c in enumerate(p):
                if c:
                    sizes[k] += c
    return sizes


def _general_subset_sizes(graph: ConceptGraph) -> list[int]:
    """Connected-subset counts per size for an arbitrary graph.

    Output-sensitive enumeration: grow each connected subset exactly once
    from its minimum node, branching over subsets of the unforbidden
    neighborhood. Work is proportional to the number of connected subsets,
    not to 2^n.
    """
    n = graph.n
    nbr = graph.neighbor_masks
    sizes = [0] * (n + 1)

    def neighborhood(mask: int) -> int:
        acc = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            acc |= nbr[v]
            m &= m - 1
        return acc & ~mask

    def expand(smask: int, forbidden: int):
        ext = neighborhood(smask) & ~forbidden
        if not ext:
            return
        sub = ext
        while sub:
            sizes[(smask | sub).bit_count()] += 1
            sub = (sub - 1) & ext
        sub = ext
        blocked = forbidden | ext
        while sub:
            expand(smask | sub, blocked)
            sub = (sub - 1) & ext
    for v in range(n - 1, -1, -1):
        sizes[1] += 1
        expand(1 << v, (1 << (v + 1)) - 1)
    return sizes


def count_connected_subsets(
    graph: ConceptGraph,
    min_size: int = 2,
    *,
    cap: int = DEFAULT_SUBSET_CAP,
    force: bool = False,
) -> int:
    """Number of node subsets of size >= min_size that induce a connected
    subgraph.

    Forests of any order use the rooted subtree DP. Other graphs use the
    general counter, which is refused above `cap` nodes unless force=True
    (the count itself can approach 2^n). The empty set counts as connected
    when min_size <= 0. Results are memoized: repeated evaluation of the
    same graph (interactive editing) skips the count entirely.
    """
    return _count_connected_subsets_cached(graph, min_size, cap, force)


@lru_cache(maxsize=4096)
def _count_connected_subsets_cached(
    graph: ConceptGraph, min_size: int, cap: int, force: bool
) -> int:
    if is_forest(graph):
        sizes = _forest_subset_sizes(graph)
    else:
        if graph.n > cap and not force:
            raise SubsetCapError(
                f"graph has {graph.n} nodes (> cap {cap}) and is not a forest; "
                "pass force=True to count anyway"
            )
        sizes = _general_subset_sizes(graph)
    total = sum(sizes[max(min_size, 1):])
    if min_size <= 0:
        total += 1
    return total


def adjacency_matrix(graph: ConceptGraph) -> AdjacencyMatrix:
    """Structural adjacency: 1 wherever an edge exists, regardless of weight."""
    arr = np.zeros((graph.n, graph.n), dtype=np.uint8)
    for e in graph.edges:
        arr[e.u, e.v] = 1
        arr[e.v, e.u] = 1
    return AdjacencyMatrix(arr)


def graph_size(graph: ConceptGraph) -> Weight:
    """Sum of all edge weights."""
    return sum((e.w for e in graph.edges), 0)


def check_same_n(a, b, what: str = "graphs"):
    if a.n != b.n:
        raise DimensionMismatchError(f"{what} disagree on node count: {a.n} != {b.n}")
