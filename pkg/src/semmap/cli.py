"""Command-line entry point: enumerate, evaluate, baselines, export, serve.

Exit codes: 0 success, 1 data/pipeline error, 2 usage error. Every report
embeds the fully resolved run configuration so results are reproducible
from the report alone.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import data as bundled
from .baselines import StudyConfig, correlation_study
from .enumeration import DEFAULT_BUDGET, TreeStream
from .errors import SemmapError
from .export import (
    GRAPH_FORMATS,
    canonical_json,
    graph_from_graphml,
    load_graph_json,
    render_graph,
)
from .graph import ConceptGraph, build_dense_graph
from .matrix import FormFunctionMatrix, parse_matrix
from .metrics import (
    DEFAULT_MIN_REGION_SIZE,
    DEFAULT_RANKS,
    evaluate,
    evaluate_candidates,
    evaluations_to_tsv,
    lb_c,
    lb_c_direct,
    lb_c_note,
    lb_lt,
)

WEIGHT_MODE_MAP = {"raw": "none", "normalized": "by_min_column_frequency"}


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for one command invocation; embedded in reports."""

    command: str
    input: str | None = None
    matrix_format: str | None = None
    weight_mode: str = "raw"
    budget: int = DEFAULT_BUDGET
    ranks: tuple[int, ...] | None = None
    boi_classes: int | None = None
    reference: str | None = None
    graph: str | None = None
    output_format: str = "json"
    min_region_size: int = DEFAULT_MIN_REGION_SIZE
    include_zero_edges: bool = False
    seed: int = 0

    def to_json_dict(self) -> dict:
        payload = dataclasses.asdict(self)
        payload["ranks"] = list(self.ranks) if self.ranks is not None else None
        return payload


def resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SEMMAP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise SemmapError(f"SEMMAP_SEED must be an integer, got {env!r}") from exc
    return 0


def load_matrix(path: str, fmt: str = "auto") -> tuple[FormFunctionMatrix, str, str]:
    """Returns (matrix, resolved path string, resolved format)."""
    if path == "builtin":
        real = bundled.fixture_path()
        fmt = "csv"
    else:
        real = Path(path)
        if not real.exists():
            raise SemmapError(f"matrix file not found: {path}")
        if fmt == "auto":
            suffix = real.suffix.lower().lstrip(".")
            fmt = suffix if suffix in ("csv", "tsv", "json") else "csv"
    text = real.read_text(encoding="utf-8")
    return parse_matrix(text, fmt), str(real), fmt


def load_graph(path: str) -> ConceptGraph:
    real = Path(path)
    if not real.exists():
        raise SemmapError(f"graph file not found: {path}")
    text = real.read_text(encoding="utf-8")
    if real.suffix.lower() == ".graphml":
        graph, _ = graph_from_graphml(text)
    else:
        graph, _ = load_graph_json(text)
    return graph


def emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _parse_ranks(raw: str) -> tuple[int, ...]:
    try:
        ranks = tuple(int(part) for part in raw.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"ranks must be comma-separated integers: {raw!r}") from exc
    return ranks


def cmd_enumerate(args, parser) -> int:
    matrix, input_path, fmt = load_matrix(args.matrix, args.matrix_format)
    explicit = args.ranks is not None or args.boi is not None
    ranks = args.ranks if args.ranks is not None else (None if explicit else DEFAULT_RANKS)
    boi = args.boi if args.boi is not None else (None if explicit else 3)
    max_rank = max(ranks) if ranks else 0
    if args.budget is not None:
        if ranks and args.budget < max_rank + 1:
            parser.error(f"--budget {args.budget} cannot cover rank {max_rank}")
        budget = args.budget
    else:
        budget = max(DEFAULT_BUDGET, max_rank + 1)
    config = RunConfig(
        command="enumerate",
        input=input_path,
        matrix_format=fmt,
        weight_mode=args.weight_mode,
        budget=budget,
        ranks=ranks,
        boi_classes=boi,
        reference=args.reference,
        output_format=args.report,
        min_region_size=args.min_region_size,
        include_zero_edges=args.include_zero_edges,
        seed=resolve_seed(args.seed),
    )
    dense = build_dense_graph(matrix, WEIGHT_MODE_MAP[args.weight_mode])
    reference = load_graph(args.reference) if args.reference else None
    stream = TreeStream(dense, budget, include_zero_weight=args.include_zero_edges)
    boundaries = stream.boundaries(boi) if boi else None
    rows = []
    if ranks:
        rows = evaluate_candidates(
            stream.iter_from(0), matrix, reference, ranks, min_size=args.min_region_size
        )
    if args.report == "json":
        payload = {
            "config": config.to_json_dict(),
            "boundaries": [[w, r] for w, r in boundaries] if boundaries is not None else None,
            "evaluations": [
                {"rank": rank, "evaluation": ev.to_json_dict()} for rank, ev in rows
            ],
        }
        emit(json.dumps(payload, ensure_ascii=False, indent=2), args.out)
    else:
        lines = [f"# config: {canonical_json(config.to_json_dict())}"]
        if boundaries is not None:
            lines.append("weight\tfirst_rank")
            lines.extend(f"{w}\t{r}" for w, r in boundaries)
            lines.append("")
        if rows:
            lines.append(evaluations_to_tsv(rows).rstrip("\n"))
        emit("\n".join(lines), args.out)
    return 0


def cmd_evaluate(args, parser) -> int:
    matrix, input_path, fmt = load_matrix(args.matrix, args.matrix_format)
    graph = load_graph(args.graph)
    reference = load_graph(args.reference) if args.reference else None
    config = RunConfig(
        command="evaluate",
        input=input_path,
        matrix_format=fmt,
        graph=args.graph,
        reference=args.reference,
        output_format=args.report,
        min_region_size=args.min_region_size,
        seed=resolve_seed(args.seed),
    )
    ev = evaluate(graph, matrix, reference, min_size=args.min_region_size)
    context = None
    if reference is not None:
        context = {
            "lb_lt": lb_lt(matrix.n),
            "lb_c": lb_c(matrix.n),
            "lb_c_direct": lb_c_direct(matrix.n),
            "note": lb_c_note(matrix.n),
        }
    if args.report == "json":
        payload = {
            "config": config.to_json_dict(),
            "evaluation": ev.to_json_dict(),
            "context": context,
        }
        emit(json.dumps(payload, ensure_ascii=False, indent=2), args.out)
    else:
        lines = [f"# config: {canonical_json(config.to_json_dict())}"]
        lines.append(evaluations_to_tsv([("-", ev)]).rstrip("\n"))
        if context is not None:
            lines.append(f"# lb_lt(n={matrix.n}) = {context['lb_lt']:.3f}")
            lines.append(f"# lb_c(n={matrix.n}) = {context['lb_c']:.3f}")
            lines.append(f"# lb_c_direct(n={matrix.n}) = {context['lb_c_direct']:.3f}")
            lines.append(f"# {context['note']}")
        emit("\n".join(lines), args.out)
    return 0


def cmd_baselines(args, parser) -> int:
    matrix, input_path, fmt = load_matrix(args.matrix, args.matrix_format)
    reference = load_graph(args.reference)
    seed = resolve_seed(args.seed)
    study = StudyConfig(
        rounds=args.rounds,
        samples_per_round=args.samples,
        generator=args.generator,
        rg1_edge_probability=args.edge_probability,
        rg2_target_edge_count=args.target_edges,
        seed=seed,
    )
    config = RunConfig(
        command="baselines",
        input=input_path,
        matrix_format=fmt,
        reference=args.reference,
        output_format=args.report,
        seed=seed,
    )
    result = correlation_study(matrix, reference, study)
    payload = result.to_json_dict(matrix.n)
    payload["run_config"] = config.to_json_dict()
    if args.report == "json":
        emit(json.dumps(payload, ensure_ascii=False, indent=2), args.out)
    else:
        lines = [f"# config: {canonical_json(payload['config'])}"]
        lines.append(f"# rng: {result.rng_algorithm} seed={seed}")
        lines.append("round\tr\tr_x100")
        for i, r in enumerate(result.per_round_r, start=1):
            lines.append(f"{i}\t{r:.4f}\t{100 * r:.1f}")
        lines.append(f"mean\t{result.mean:.4f}\t{100 * result.mean:.1f}")
        lines.append(f"std_dev\t{result.std_dev:.4f}\t{100 * result.std_dev:.2f}")
        emit("\n".join(lines), args.out)
    return 0


def cmd_export(args, parser) -> int:
    graph = load_graph(args.graph)
    reference = load_graph(args.reference) if args.reference else None
    regions = None
    if args.region:
        if not args.matrix:
            parser.error("--region needs --matrix to resolve form function sets")
        matrix, _, _ = load_matrix(args.matrix, args.matrix_format)
        regions = {}
        for gram in args.region:
            form_id = int(gram) if gram.isdigit() else matrix.form_index(gram)
            regions[matrix.forms[form_id].gram] = set(matrix.function_set(form_id))
    labels = None
    if args.matrix:
        matrix, _, _ = load_matrix(args.matrix, args.matrix_format)
        if matrix.n == graph.n:
            labels = [lab.abbr for lab in matrix.functions]
    emit(render_graph(graph, args.format, labels, reference, regions), args.out)
    return 0


def cmd_serve(args, parser) -> int:
    import uvicorn

    from .api import create_app

    matrix, _, _ = load_matrix(args.matrix, args.matrix_format)
    static_dir = args.static
    if static_dir is not None and not Path(static_dir).is_dir():
        raise SemmapError(f"static directory not found: {static_dir}")
    app = create_app(
        matrix,
        weight_mode=WEIGHT_MODE_MAP[args.weight_mode],
        budget=args.budget if args.budget is not None else DEFAULT_BUDGET,
        static_dir=static_dir,
        dev_cors=args.dev,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semmap",
        description="Construct, rank, evaluate, and serve conceptual spaces "
        "from cross-linguistic form-function matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_arg(p):
        p.add_argument("matrix", help="matrix file (csv/tsv/json), or 'builtin' for the bundled dataset")
        p.add_argument("--matrix-format", default="auto", choices=["auto", "csv", "tsv", "json"])

    def add_common(p):
        p.add_argument("--seed", type=int, default=None, help="falls back to $SEMMAP_SEED, then 0")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--report", default="tsv", choices=["tsv", "json"])

    p = sub.add_parser("enumerate", help="rank spanning trees and evaluate selected ranks")
    add_matrix_arg(p)
    p.add_argument("--ranks", type=_parse_ranks, default=None, help="comma-separated ranks to evaluate")
    p.add_argument("--boi", type=int, default=None, help="report first-rank boundaries for the top N weights")
    p.add_argument("--budget", type=int, default=None, help="max trees to enumerate")
    p.add_argument("--reference", default=None, help="reference map (graph json/graphml) for accuracy")
    p.add_argument("--weight-mode", default="raw", choices=list(WEIGHT_MODE_MAP))
    p.add_argument("--min-region-size", type=int, default=DEFAULT_MIN_REGION_SIZE)
    p.add_argument("--include-zero-edges", action="store_true",
                   help="enumerate over zero-weight edges too (default: positive support only)")
    add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("evaluate", help="evaluate one graph against a matrix")
    add_matrix_arg(p)
    p.add_argument("graph", help="graph file (json or graphml)")
    p.add_argument("--reference", default=None)
    p.add_argument("--min-region-size", type=int, default=DEFAULT_MIN_REGION_SIZE)
    add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("baselines", help="degree-diversity vs accuracy correlation study")
    add_matrix_arg(p)
    p.add_argument("--reference", required=True, help="reference map for accuracy")
    p.add_argument("--generator", default="rg1", choices=["rg1", "rg2"])
    p.add_argument("--rounds", type=int, default=5)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--edge-probability", type=float, default=None,
                   help="rg1 edge probability (default: 2/n, tree-comparable density)")
    p.add_argument("--target-edges", type=int, default=None,
                   help="rg2 expected edge count (default: n-1)")
    add_common(p)
    p.set_defaults(func=cmd_baselines)

    p = sub.add_parser("export", help="export a graph as dot, graphml, or json")
    p.add_argument("graph", help="graph file (json or graphml)")
    p.add_argument("--format", required=True, choices=list(GRAPH_FORMATS))
    p.add_argument("--reference", default=None, help="overlay: reference-only edges drawn dashed (dot)")
    p.add_argument("--matrix", default=None, help="matrix for node labels and --region lookups")
    p.add_argument("--matrix-format", default="auto", choices=["auto", "csv", "tsv", "json"])
    p.add_argument("--region", action="append", default=None,
                   help="color the region of this form (gram or id); repeatable")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the JSON API (and web UI, if built)")
    add_matrix_arg(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8470)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--weight-mode", default="raw", choices=list(WEIGHT_MODE_MAP))
    p.add_argument("--static", default=None, help="directory with the built web UI")
    p.add_argument("--dev", action="store_true", help="enable permissive CORS for UI development")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except SemmapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():  # console_scripts hook
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
