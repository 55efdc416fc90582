"""Lazy enumeration of spanning trees in descending total-weight order.

The stream is driven by a priority queue of constraint partitions. Each
partition fixes some edges in, forbids others, and carries the best spanning
tree respecting those constraints; popping the best partition emits its tree
and splits the remainder of its tree set into child partitions, one per free
tree edge (exclude that edge, force all earlier free edges in). Every
spanning tree is emitted exactly once.

Total order on trees: weight descending, then the sorted canonical edge-id
list ascending (lexicographically). Canonical edge ids are positions in the
enumerated graph's (u, v)-sorted edge tuple. A partition's representative is
computed greedily over edges sorted by (weight desc, id asc), which is
provably the order-minimal tree of the partition, so heap order equals
emission order.

By default enumeration runs over the positive-weight support of the input:
zero-weight edges carry no colexification evidence, so candidate spaces
should not spend them, and the class counts over the case-study graph are
only reproducible this way. Pass include_zero_weight=True to enumerate the
graph exactly as given (required when the positive support alone does not
span all nodes).

A child's representative is the parent tree with one edge swapped: remove
the excluded edge and reconnect the two halves with the best available
non-forbidden edge across the cut. This equals a full constrained greedy
rebuild (same decisions, one exchange) and costs near-linear time per pop
using path compression over the tree.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import EnumerationError
from .graph import ConceptGraph, Edge, Weight, is_connected

DEFAULT_BUDGET = 50_000


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree of the source graph; rank is the position in the
    global descending-weight order (None for constrained one-off results)."""

    edges: tuple[Edge, ...]
    total_weight: Weight
    rank: int | None = None

    @property
    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((e.u, e.v) for e in self.edges)


class Partition(NamedTuple):
    """Heap entry: best tree respecting (included, excluded) edge-id masks.

    Field order makes tuple comparison implement the stream's total order;
    two live partitions never share a tree, so comparison never reaches the
    masks.
    """

    neg_weight: Weight
    tree: tuple[int, ...]
    included: int
    excluded: int


def _kruskal(
    n: int,
    edges: tuple[Edge, ...],
    order: list[int],
    included: Iterable[int] = (),
    excluded_mask: int = 0,
) -> tuple[int, ...] | None:
    """Greedy max spanning tree honoring constraints; None if impossible.

    `order` is the edge-id sequence sorted by (weight desc, id asc); walking
    it greedily yields the order-minimal maximum tree.
    """
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    included_mask = 0
    for eid in included:
        e = edges[eid]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return None  # included set contains a cycle
        parent[ru] = rv
        chosen.append(eid)
        included_mask |= 1 << eid
    need = n - 1
    if len(chosen) < need:
        for eid in order:
            if (excluded_mask >> eid) & 1 or (included_mask >> eid) & 1:
                continue
            e = edges[eid]
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
                chosen.append(eid)
                if len(chosen) == need:
                    break
    if len(chosen) != need:
        return None
    chosen.sort()
    return tuple(chosen)


class TreeStream:
    """Stateful single-consumer enumerator with cached rank access.

    Emitted trees are cached compactly, so `get(rank)` after a long advance
    is cheap and repeated access never re-enumerates. Not safe for
    concurrent advancement; callers that share a stream must serialize
    access (the HTTP service does).
    """

    def __init__(
        self,
        graph: ConceptGraph,
        budget: int = DEFAULT_BUDGET,
        include_zero_weight: bool = False,
    ):
        if budget < 1:
            raise ValueError(f"budget must be positive, got {budget}")
        self.source = graph
        if not include_zero_weight:
            work = ConceptGraph(graph.n, tuple(e for e in graph.edges if e.w > 0))
            if not is_connected(work):
                if is_connected(graph):
                    raise EnumerationError(
                        "positive-weight support is disconnected; pass "
                        "include_zero_weight=True to span via zero-weight edges"
                    )
                raise EnumerationError("graph is disconnected; no spanning trees exist")
            graph = work
        elif not is_connected(graph):
            raise EnumerationError("graph is disconnected; no spanning trees exist")
        self.graph = graph
        self.budget = budget
        self._edges = graph.edges
        self._weights = [e.w for e in graph.edges]
        self._order = sorted(
            range(len(graph.edges)), key=lambda i: (_neg(self._weights[i]), i)
        )
        self._emitted: list[tuple[Weight, tuple[int, ...]]] = []
        self.exhausted = False
        root = _kruskal(graph.n, self._edges, self._order)
        if root is None:  # pragma: no cover - is_connected guards this
            raise EnumerationError("graph is disconnected; no spanning trees exist")
        w = sum(self._weights[i] for i in root) if root else 0
        self._heap = [Partition(_neg(w), root, 0, 0)]

    @property
    def count_emitted(self) -> int:
        return len(self._emitted)

    def _advance_one(self) -> bool:
        """Pop, record, and branch the next partition. False when done."""
        if len(self._emitted) >= self.budget:
            return False
        if not self._heap:
            self.exhausted = True
            return False
        part = heapq.heappop(self._heap)
        self._emitted.append((_neg(part.neg_weight), part.tree))
        self._branch(part)
        if not self._heap:
            self.exhausted = True
        return True

    def _branch(self, part: Partition) -> None:
        tree = part.tree
        free = [i for i in tree if not (part.included >> i) & 1]
        if not free:
            return
        n = self.graph.n
        edges = self._edges
        weights = self._weights
        tree_mask = 0
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid in tree:
            tree_mask |= 1 << eid
            e = edges[eid]
            adj[e.u].append((e.v, eid))
            adj[e.v].append((e.u, eid))
        parent_node = [-1] * n
        parent_edge = [-1] * n
        depth = [0] * n
        stack = [0]
        seen = [False] * n
        seen[0] = True
        while stack:
            v = stack.pop()
            for nb, eid in adj[v]:
                if not seen[nb]:
                    seen[nb] = True
                    parent_node[nb] = v
                    parent_edge[nb] = eid
                    depth[nb] = depth[v] + 1
                    stack.append(nb)

        # Replacement search: walk candidate edges in (weight desc, id asc)
        # order; the first candidate crossing the cut of a free tree edge is
        # that edge's best swap. skip[] short-circuits resolved path segments
        # so the whole pass is near-linear.
        skip = list(range(n))

        def find(x: int) -> int:
            root = x
            while skip[root] != root:
                root = skip[root]
            while skip[x] != root:
                skip[x], x = root, skip[x]
            return root

        free_set = set(free)
        for v in range(n):
            eid = parent_edge[v]
            if eid >= 0 and eid not in free_set:
                skip[v] = parent_node[v]  # included edges never need swaps

        repl: dict[int, int] = {}
        unresolved = len(free)
        excluded = part.excluded
        for cand in self._order:
            if unresolved == 0:
                break
            if (tree_mask >> cand) & 1 or (excluded >> cand) & 1:
                continue
            e = edges[cand]
            a, b = find(e.u), find(e.v)
            while a != b:
                if depth[a] < depth[b]:
                    a, b = b, a
                repl[parent_edge[a]] = cand
                unresolved -= 1
                skip[a] = parent_node[a]
                a = find(parent_node[a])

        parent_w = _neg(part.neg_weight)
        inc = part.included
        exc = part.excluded
        heap = self._heap
        for eid in free:
            swap = repl.get(eid)
            if swap is not None:
                child_w = parent_w - weights[eid] + weights[swap]
                child_tree = tuple(sorted([i for i in tree if i != eid] + [swap]))
                heapq.heappush(
                    heap, Partition(_neg(child_w), child_tree, inc, exc | (1 << eid))
                )
            inc |= 1 << eid

        # Bound the queue: with R pops left, only the R best partitions can
        # ever be popped (each entry lower-bounds its whole tree set).
        remaining = self.budget - len(self._emitted)
        if remaining > 0 and len(heap) > 2 * remaining + 1024:
            self._heap = heapq.nsmallest(remaining, heap)  # sorted => valid heap

    def _materialize(self, rank: int) -> SpanningTree:
        w, ids = self._emitted[rank]
        return SpanningTree(
            edges=tuple(self._edges[i] for i in ids), total_weight=w, rank=rank
        )

    def get(self, rank: int) -> SpanningTree:
        """Tree at `rank`, advancing the stream as needed."""
        if rank < 0:
            raise EnumerationError(f"rank must be non-negative, got {rank}")
        if rank >= self.budget:
            raise EnumerationError(f"rank {rank} beyond stream budget {self.budget}")
        while len(self._emitted) <= rank:
            if not self._advance_one():
                raise EnumerationError(
                    f"rank {rank} beyond tree count ({len(self._emitted)} trees exist)"
                )
        return self._materialize(rank)

    def iter_from(self, start: int = 0) -> Iterator[SpanningTree]:
        rank = start
        while True:
            if rank < len(self._emitted):
                yield self._materialize(rank)
                rank += 1
                continue
            if rank >= self.budget or not self._advance_one():
                return

    def boundaries(self, max_classes: int) -> list[tuple[Weight, int]]:
        """(weight, first rank) for the top `max_classes` distinct weights.

        Streams until the requested class count is resolved; raises if the
        budget cuts the stream before that (a partial answer would silently
        lie), but a genuinely exhausted stream returns what exists.
        """
        if max_classes < 1:
            return []
        found: list[tuple[Weight, int]] = []
        last = object()
        for tree in self.iter_from(0):
            if tree.total_weight != last:
                found.append((tree.total_weight, tree.rank))
                last = tree.total_weight
                if len(found) == max_classes:
                    return found
        if self.exhausted:
            return found
        raise EnumerationError(
            f"budget {self.budget} exhausted after {len(found)} weight classes; "
            f"raise the budget to resolve {max_classes}"
        )


def _neg(w: Weight) -> Weight:
    return -w


def constrained_max_spanning_tree(
    graph: ConceptGraph,
    included: Iterable[tuple[int, int]] = (),
    excluded: Iterable[tuple[int, int]] = (),
) -> SpanningTree | None:
    """Maximum-weight spanning tree containing all `included` and none of the
    `excluded` edges; None when the constraints admit no spanning tree.

    Edges are (u, v) pairs that must exist in the graph. The included set
    must be acyclic and disjoint from the excluded set.
    """
    ids_by_pair = {(e.u, e.v): i for i, e in enumerate(graph.edges)}

    def resolve(pairs) -> list[int]:
        out = []
        for u, v in pairs:
            key = (u, v) if u < v else (v, u)
            if key not in ids_by_pair:
                raise ValueError(f"edge {key} not in graph")
            out.append(ids_by_pair[key])
        return out

    inc = resolve(included)
    exc = resolve(excluded)
    overlap = set(inc) & set(exc)
    if overlap:
        raise ValueError(f"edges both included and excluded: {sorted(overlap)}")
    weights = [e.w for e in graph.edges]
    order = sorted(range(len(graph.edges)), key=lambda i: (_neg(weights[i]), i))
    ids = _kruskal(graph.n, graph.edges, order, inc, _mask(exc))
    if ids is None:
        if inc:
            # distinguish precondition violation (cyclic include) from plain
            # infeasibility
            probe = _kruskal(graph.n, graph.edges, order, inc)
            if probe is None and _kruskal(graph.n, graph.edges, order) is not None:
                parent = list(range(graph.n))

                def find(x):
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    return x

                for eid in inc:
                    e = graph.edges[eid]
                    ru, rv = find(e.u), find(e.v)
                    if ru == rv:
                        raise ValueError("included edges contain a cycle")
                    parent[ru] = rv
        return None
    w = sum(weights[i] for i in ids) if ids else 0
    return SpanningTree(edges=tuple(graph.edges[i] for i in ids), total_weight=w, rank=None)


def _mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def spanning_tree_stream(
    graph: ConceptGraph,
    budget: int = DEFAULT_BUDGET,
    include_zero_weight: bool = False,
) -> Iterator[SpanningTree]:
    """Yield every spanning tree once, heaviest first, up to `budget` trees.

    Ties are broken by the sorted canonical edge-id list, so the sequence is
    fully deterministic. Raises before the first yield if the enumerated
    graph is disconnected.
    """
    stream = TreeStream(graph, budget, include_zero_weight)
    return stream.iter_from(0)


def tree_at_rank(
    graph: ConceptGraph,
    k: int,
    budget: int | None = None,
    include_zero_weight: bool = False,
) -> SpanningTree:
    """The k-th tree of the stream (0-based)."""
    if k < 0:
        raise EnumerationError(f"rank must be non-negative, got {k}")
    stream = TreeStream(graph, budget if budget is not None else k + 1, include_zero_weight)
    return stream.get(k)


def weight_class_boundaries(
    graph: ConceptGraph,
    max_classes: int,
    budget: int = DEFAULT_BUDGET,
    include_zero_weight: bool = False,
) -> list[tuple[Weight, int]]:
    """(weight, first rank) pairs for the top `max_classes` weight values."""
    return TreeStream(graph, budget, include_zero_weight).boundaries(max_classes)
