import type { EdgePair, GraphPayload } from "./types.js";
import type { Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const HATCH_COLORS = ["#2f7ed8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085"];

export interface HighlightInfo {
  nodes: number[];
  /** Component decomposition of the highlighted region; one hatch per
   * component when there is more than one (a connectivity violation). */
  components: number[][];
}

export interface CanvasOptions {
  container: HTMLElement;
  graph: GraphPayload;
  positions: Point[];
  /** Reference-only edges, drawn dashed. */
  missingEdges?: EdgePair[] | null;
  highlight?: HighlightInfo | null;
  selectedNode?: number | null;
  onNodeClick?: (node: number) => void;
  width?: number;
  height?: number;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

/** Render the graph as SVG. The output DOM is a pure function of the
 * options (no randomness, no retained state): rendering the same payloads
 * twice produces identical markup. */
export function renderCanvas(opts: CanvasOptions): SVGSVGElement {
  const { container, graph, positions } = opts;
  const width = opts.width ?? 900;
  const height = opts.height ?? 620;
  const labels = graph.labels ?? [...Array(graph.n).keys()].map(String);
  container.replaceChildren();
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "graph-canvas",
  }) as SVGSVGElement;

  const defs = el("defs", {});
  const componentOf = new Map<number, number>();
  const components = opts.highlight?.components ?? [];
  if (components.length > 1) {
    components.forEach((component, idx) => {
      const color = HATCH_COLORS[idx % HATCH_COLORS.length];
      const pattern = el("pattern", {
        id: `hatch-${idx}`,
        width: "6",
        height: "6",
        patternTransform: `rotate(${45 + idx * 30})`,
        patternUnits: "userSpaceOnUse",
      });
      pattern.appendChild(el("rect", { width: "6", height: "6", fill: "#ffffff" }));
      pattern.appendChild(
        el("line", { x1: "0", y1: "0", x2: "0", y2: "6", stroke: color, "stroke-width": "3" }),
      );
      defs.appendChild(pattern);
      for (const node of component) componentOf.set(node, idx);
    });
  }
  svg.appendChild(defs);

  const edgesGroup = el("g", { class: "edges" });
  for (const edge of graph.edges) {
    const a = positions[edge.u];
    const b = positions[edge.v];
    edgesGroup.appendChild(
      el("line", {
        class: "edge-candidate",
        "data-u": String(edge.u),
        "data-v": String(edge.v),
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
      }),
    );
    const label = el("text", {
      class: "edge-weight",
      x: String((a.x + b.x) / 2),
      y: String((a.y + b.y) / 2 - 3),
    });
    label.textContent = String(edge.w);
    edgesGroup.appendChild(label);
  }
  for (const [u, v] of opts.missingEdges ?? []) {
    const a = positions[u];
    const b = positions[v];
    edgesGroup.appendChild(
      el("line", {
        class: "edge-reference",
        "data-u": String(u),
        "data-v": String(v),
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
      }),
    );
  }
  svg.appendChild(edgesGroup);

  const highlighted = new Set(opts.highlight?.nodes ?? []);
  const nodesGroup = el("g", { class: "nodes" });
  for (let v = 0; v < graph.n; v++) {
    const p = positions[v];
    const group = el("g", {
      class: "node-group",
      "data-node": String(v),
      transform: `translate(${p.x} ${p.y})`,
    });
    const classes = ["node"];
    if (highlighted.has(v)) classes.push("node-region");
    if (opts.selectedNode === v) classes.push("node-selected");
    const circle = el("circle", { r: "16", class: classes.join(" ") });
    const componentIdx = componentOf.get(v);
    if (componentIdx !== undefined) {
      circle.setAttribute("fill", `url(#hatch-${componentIdx})`);
      circle.setAttribute("data-component", String(componentIdx));
    } else if (highlighted.has(v)) {
      circle.setAttribute("fill", "#b7e3b0");
    }
    group.appendChild(circle);
    const text = el("text", { class: "node-label", dy: "4", "text-anchor": "middle" });
    text.textContent = labels[v];
    group.appendChild(text);
    if (opts.onNodeClick) {
      group.addEventListener("click", () => opts.onNodeClick!(v));
    }
    nodesGroup.appendChild(group);
  }
  svg.appendChild(nodesGroup);
  container.appendChild(svg);
  return svg;
}
