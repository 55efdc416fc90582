"""JSON-over-HTTP facade for the pipeline, including session-scoped manual
edge editing with synchronous re-evaluation.

Sessions are in-memory: a base graph (a ranked candidate tree or an uploaded
graph) plus an ordered edit log. Replaying the log over the base graph
always reproduces the current graph, so a snapshot (base + log) restores a
session exactly. The shared tree stream is advanced under a lock and its
emitted trees are cached, so requesting rank 40000 and then rank 0 does not
re-enumerate.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .enumeration import DEFAULT_BUDGET, SpanningTree, TreeStream
from .errors import EnumerationError, SemmapError
from .export import graph_from_json_dict, graph_to_json_dict
from .graph import ConceptGraph, build_dense_graph, is_connected
from .maps import diff, region, violations
from .matrix import FormFunctionMatrix
from .metrics import evaluate


@dataclass
class Session:
    id: str
    base_graph: ConceptGraph
    base_rank: int | None
    reference: ConceptGraph | None
    edit_log: list[dict] = field(default_factory=list)
    graph: ConceptGraph = None  # type: ignore[assignment]
    lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        if self.graph is None:
            self.graph = self.base_graph


def create_app(
    matrix: FormFunctionMatrix,
    *,
    weight_mode: str = "none",
    budget: int = DEFAULT_BUDGET,
    static_dir: str | None = None,
    dev_cors: bool = False,
) -> FastAPI:
    app = FastAPI(title="semmap", docs_url=None, redoc_url=None)
    if dev_cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    dense = build_dense_graph(matrix, weight_mode)
    labels = [lab.abbr for lab in matrix.functions]
    stream = TreeStream(dense, budget)
    stream_lock = threading.Lock()
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()

    def tree_at(rank: int) -> SpanningTree:
        if rank < 0:
            raise HTTPException(400, f"rank must be non-negative, got {rank}")
        with stream_lock:
            try:
                return stream.get(rank)
            except EnumerationError as exc:
                raise HTTPException(400, str(exc))

    def dense_weight(u: int, v: int):
        key = (u, v) if u < v else (v, u)
        return dense.weight_by_pair[key]

    def violations_payload(graph: ConceptGraph) -> list[dict]:
        out = []
        for form_id, comps in violations(graph, matrix):
            out.append(
                {
                    "form": form_id,
                    "gram": matrix.forms[form_id].gram,
                    "language": matrix.forms[form_id].language,
                    "components": [sorted(c) for c in comps],
                }
            )
        return out

    def evaluation_payload(sess: Session) -> dict:
        return evaluate(sess.graph, matrix, sess.reference).to_json_dict()

    def session_payload(sess: Session) -> dict:
        return {
            "id": sess.id,
            "base_rank": sess.base_rank,
            "graph": graph_to_json_dict(sess.graph, labels),
            "evaluation": evaluation_payload(sess),
            "violations": violations_payload(sess.graph),
            "graph_connected": is_connected(sess.graph),
            "edit_log": list(sess.edit_log),
        }

    def get_session(sid: str) -> Session:
        with sessions_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(404, f"unknown session {sid!r}")
        return sess

    def parse_graph_payload(payload: dict) -> ConceptGraph:
        try:
            graph, _ = graph_from_json_dict(payload)
        except SemmapError as exc:
            raise HTTPException(422, str(exc))
        if graph.n != matrix.n:
            raise HTTPException(
                422, f"graph has {graph.n} nodes but dataset has {matrix.n} functions"
            )
        return graph

    def apply_edit(sess: Session, op: str, u: int, v: int) -> None:
        if not (0 <= u < matrix.n and 0 <= v < matrix.n):
            raise HTTPException(422, f"edge endpoints out of range: ({u}, {v})")
        if u == v:
            raise HTTPException(422, f"self-loop on node {u} rejected")
        if op == "add_edge":
            if sess.graph.has_edge(u, v):
                raise HTTPException(409, f"edge ({u}, {v}) already present")
            sess.graph = sess.graph.with_edge(u, v, dense_weight(u, v))
        elif op == "remove_edge":
            if not sess.graph.has_edge(u, v):
                raise HTTPException(409, f"edge ({u}, {v}) not present")
            sess.graph = sess.graph.without_edge(u, v)
        else:
            raise HTTPException(422, f"unknown edit op {op!r}")
        sess.edit_log.append({"op": op, "u": u, "v": v})

    # -- dataset and candidate browsing ------------------------------------

    @app.get("/api/dataset")
    def get_dataset():
        return matrix.to_json_dict()

    @app.get("/api/graph/dense")
    def get_dense():
        return graph_to_json_dict(dense, labels)

    @app.get("/api/trees")
    def get_tree(rank: int):
        tree = tree_at(rank)
        graph = ConceptGraph(matrix.n, tree.edges)
        return {
            "rank": tree.rank,
            "tree": graph_to_json_dict(graph, labels),
            "evaluation": evaluate(graph, matrix).to_json_dict(),
            "violations": violations_payload(graph),
        }

    @app.get("/api/trees/boi")
    def get_boundaries(classes: int = 3):
        if classes < 1:
            raise HTTPException(400, f"classes must be positive, got {classes}")
        with stream_lock:
            try:
                bounds = stream.boundaries(classes)
            except EnumerationError as exc:
                raise HTTPException(400, str(exc))
        return {"boundaries": [[w, idx] for w, idx in bounds]}

    # -- sessions -----------------------------------------------------------

    @app.post("/api/session")
    def create_session(payload: dict = Body(...)):
        reference = None
        if payload.get("reference") is not None:
            reference = parse_graph_payload(payload["reference"])
        if "snapshot" in payload:
            snap = payload["snapshot"]
            base = parse_graph_payload(snap.get("base_graph", {}))
            sess = Session(
                id=uuid.uuid4().hex,
                base_graph=base,
                base_rank=snap.get("base_rank"),
                reference=reference,
            )
            for entry in snap.get("edit_log", []):
                apply_edit(sess, entry["op"], entry["u"], entry["v"])
        elif "graph" in payload:
            base = parse_graph_payload(payload["graph"])
            sess = Session(
                id=uuid.uuid4().hex, base_graph=base, base_rank=None, reference=reference
            )
        elif "from_rank" in payload:
            tree = tree_at(int(payload["from_rank"]))
            base = ConceptGraph(matrix.n, tree.edges)
            sess = Session(
                id=uuid.uuid4().hex,
                base_graph=base,
                base_rank=tree.rank,
                reference=reference,
            )
        else:
            raise HTTPException(422, "need one of 'from_rank', 'graph', or 'snapshot'")
        with sessions_lock:
            sessions[sess.id] = sess
        return session_payload(sess)

    @app.get("/api/session/{sid}")
    def get_session_state(sid: str):
        return session_payload(get_session(sid))

    @app.post("/api/session/{sid}/edit")
    def edit_session(sid: str, payload: dict = Body(...)):
        sess = get_session(sid)
        for key in ("op", "u", "v"):
            if key not in payload:
                raise HTTPException(422, f"edit needs field {key!r}")
        with sess.lock:
            apply_edit(sess, payload["op"], int(payload["u"]), int(payload["v"]))
            return {
                "evaluation": evaluation_payload(sess),
                "violations": violations_payload(sess.graph),
                "graph_connected": is_connected(sess.graph),
                "graph": graph_to_json_dict(sess.graph, labels),
            }

    @app.get("/api/session/{sid}/graph")
    def get_session_graph(sid: str):
        sess = get_session(sid)
        return graph_to_json_dict(sess.graph, labels)

    @app.post("/api/session/{sid}/reference")
    def set_session_reference(sid: str, payload: dict = Body(...)):
        sess = get_session(sid)
        graph_payload = payload.get("graph", payload)
        with sess.lock:
            sess.reference = parse_graph_payload(graph_payload)
        return session_payload(sess)

    @app.get("/api/session/{sid}/diff")
    def get_session_diff(sid: str):
        sess = get_session(sid)
        if sess.reference is None:
            raise HTTPException(409, "session has no reference map loaded")
        d = diff(sess.graph, sess.reference)
        return {
            **d.to_json_dict(),
            "reference": graph_to_json_dict(sess.reference, labels),
        }

    @app.get("/api/session/{sid}/snapshot")
    def get_session_snapshot(sid: str):
        sess = get_session(sid)
        return {
            "base_graph": graph_to_json_dict(sess.base_graph, labels),
            "base_rank": sess.base_rank,
            "edit_log": list(sess.edit_log),
        }

    @app.get("/api/session/{sid}/form/{x}")
    def get_form_region(sid: str, x: str):
        sess = get_session(sid)
        if x.isdigit():
            form_id = int(x)
            if form_id >= matrix.m:
                raise HTTPException(404, f"unknown form id {form_id}")
        else:
            try:
                form_id = matrix.form_index(x)
            except KeyError:
                raise HTTPException(404, f"unknown form {x!r}")
        return region(sess.graph, matrix, form_id).to_json_dict(matrix)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
