#!/usr/bin/env python3
"""Export ranked candidate trees of the bundled dataset as graph JSON (and
optionally DOT), e.g. to seed editing sessions or drive external renderers.

Usage: python scripts/export_candidates.py --ranks 0,1440 --outdir out/ [--dot]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from semmap.data import load_fixture
from semmap.enumeration import TreeStream
from semmap.export import graph_to_dot, graph_to_json
from semmap.graph import ConceptGraph, build_dense_graph


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ranks", default="0")
    ap.add_argument("--outdir", default="candidates")
    ap.add_argument("--dot", action="store_true", help="also write DOT files")
    args = ap.parse_args()

    matrix = load_fixture()
    labels = [lab.abbr for lab in matrix.functions]
    dense = build_dense_graph(matrix)
    ranks = sorted(int(r) for r in args.ranks.split(",") if r.strip())
    stream = TreeStream(dense, budget=max(ranks) + 1)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for rank in ranks:
        tree = stream.get(rank)
        graph = ConceptGraph(matrix.n, tree.edges)
        (outdir / f"tree_rank{rank}.json").write_text(graph_to_json(graph, labels))
        if args.dot:
            (outdir / f"tree_rank{rank}.dot").write_text(graph_to_dot(graph, labels))
        print(f"rank {rank}: weight {tree.total_weight} -> {outdir}/tree_rank{rank}.json")


if __name__ == "__main__":
    main()
