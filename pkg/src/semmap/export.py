"""Graph interchange: JSON, DOT (with reference overlay), and GraphML.

Graph JSON is the canonical machine format:
`{"n": 18, "labels": [...], "edges": [{"u": 0, "v": 1, "w": 9}, ...],
"total_weight": 286}`. Rational weights are encoded as "p/q" strings so no
precision is lost.
"""

from __future__ import annotations

import json
from fractions import Fraction
from xml.etree import ElementTree as ET

from .errors import SemmapError
from .graph import ConceptGraph, Weight, graph_size
from .maps import diff
from .metrics import encode_weight

GRAPH_FORMATS = ("json", "dot", "graphml")

REGION_PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
    "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
)


def decode_weight(raw) -> Weight:
    if isinstance(raw, str):
        return Fraction(raw)
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise SemmapError(f"unsupported edge weight {raw!r}")
    if isinstance(raw, float):
        if not raw.is_integer():
            return Fraction(raw).limit_denominator(10**9)
        return int(raw)
    return raw


def graph_to_json_dict(graph: ConceptGraph, labels: list[str] | None = None) -> dict:
    payload = {
        "n": graph.n,
        "labels": list(labels) if labels is not None else None,
        "edges": [{"u": e.u, "v": e.v, "w": encode_weight(e.w)} for e in graph.edges],
        "total_weight": encode_weight(graph_size(graph)),
    }
    return payload


def graph_from_json_dict(payload: dict) -> tuple[ConceptGraph, list[str] | None]:
    try:
        n = payload["n"]
        raw_edges = payload["edges"]
    except (KeyError, TypeError) as exc:
        raise SemmapError("graph JSON needs 'n' and 'edges' keys") from exc
    labels = payload.get("labels")
    if labels is not None and len(labels) != n:
        raise SemmapError(f"got {len(labels)} labels for n={n}")
    edges = [(rec["u"], rec["v"], decode_weight(rec["w"])) for rec in raw_edges]
    try:
        graph = ConceptGraph.from_edges(n, edges)
    except ValueError as exc:
        raise SemmapError(str(exc)) from exc
    return graph, labels


def graph_to_json(graph: ConceptGraph, labels: list[str] | None = None) -> str:
    return json.dumps(graph_to_json_dict(graph, labels), ensure_ascii=False, indent=2)


def load_graph_json(text: str) -> tuple[ConceptGraph, list[str] | None]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SemmapError(f"invalid graph JSON: {exc}") from exc
    return graph_from_json_dict(payload)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(
    graph: ConceptGraph,
    labels: list[str] | None = None,
    reference: ConceptGraph | None = None,
    regions: dict[str, set[int]] | None = None,
) -> str:
    """DOT rendering. Candidate edges are solid and carry their weight as a
    label; with a reference, edges present only in the reference are drawn
    dashed. Region node sets get one fill color each."""
    names = labels if labels is not None else [str(i) for i in range(graph.n)]
    lines = ["graph conceptual_space {", "  node [shape=ellipse];"]
    fill: dict[int, str] = {}
    if regions:
        for idx, (_, nodes) in enumerate(sorted(regions.items())):
            color = REGION_PALETTE[idx % len(REGION_PALETTE)]
            for v in nodes:
                fill[v] = color
    for v in range(graph.n):
        attrs = [f"label={_dot_quote(names[v])}"]
        if v in fill:
            attrs.append(f'style=filled fillcolor="{fill[v]}"')
        lines.append(f"  n{v} [{' '.join(attrs)}];")
    for e in graph.edges:
        lines.append(f"  n{e.u} -- n{e.v} [label={_dot_quote(str(encode_weight(e.w)))}];")
    if reference is not None:
        missing = diff(graph, reference).missing_edges
        for u, v in sorted(missing):
            w = reference.weight_by_pair[(u, v)]
            lines.append(
                f"  n{u} -- n{v} [style=dashed label={_dot_quote(str(encode_weight(w)))}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_graphml(graph: ConceptGraph, labels: list[str] | None = None) -> str:
    names = labels if labels is not None else [str(i) for i in range(graph.n)]
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    ET.SubElement(
        root, "key", id="label", **{"for": "node", "attr.name": "label", "attr.type": "string"}
    )
    ET.SubElement(
        root, "key", id="weight", **{"for": "edge", "attr.name": "weight", "attr.type": "string"}
    )
    g = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    for v in range(graph.n):
        node = ET.SubElement(g, "node", id=f"n{v}")
        data = ET.SubElement(node, "data", key="label")
        data.text = names[v]
    for e in graph.edges:
        edge = ET.SubElement(g, "edge", source=f"n{e.u}", target=f"n{e.v}")
        data = ET.SubElement(edge, "data", key="weight")
        data.text = str(encode_weight(e.w))
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def graph_from_graphml(text: str) -> tuple[ConceptGraph, list[str] | None]:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise SemmapError(f"invalid GraphML: {exc}") from exc
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    gelem = root.find("g:graph", ns)
    if gelem is None:
        raise SemmapError("GraphML has no <graph> element")
    node_ids: dict[str, int] = {}
    labels = []
    for node in gelem.findall("g:node", ns):
        node_ids[node.attrib["id"]] = len(node_ids)
        data = node.find("g:data", ns)
        labels.append(data.text if data is not None else node.attrib["id"])
    edges = []
    for edge in gelem.findall("g:edge", ns):
        u = node_ids[edge.attrib["source"]]
        v = node_ids[edge.attrib["target"]]
        data = edge.find("g:data", ns)
        w: Weight = 1
        if data is not None and data.text:
            raw = data.text
            w = Fraction(raw) if "/" in raw else int(raw)
        edges.append((u, v, w))
    try:
        graph = ConceptGraph.from_edges(len(node_ids), edges)
    except ValueError as exc:
        raise SemmapError(str(exc)) from exc
    return graph, labels


def render_graph(
    graph: ConceptGraph,
    fmt: str,
    labels: list[str] | None = None,
    reference: ConceptGraph | None = None,
    regions: dict[str, set[int]] | None = None,
) -> str:
    if fmt == "json":
        return graph_to_json(graph, labels)
    if fmt == "dot":
        return graph_to_dot(graph, labels, reference, regions)
    if fmt == "graphml":
        return graph_to_graphml(graph, labels)
    raise ValueError(f"unknown graph format {fmt!r}")


def canonical_json(payload) -> str:
    """Stable serialization used wherever two components must agree
    byte-for-byte."""
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
