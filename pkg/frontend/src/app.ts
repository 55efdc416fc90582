import { ApiClient, ApiError } from "./api.js";
import { renderCanvas, type HighlightInfo } from "./canvas.js";
import { forceLayout } from "./layout.js";
import { renderMetricPanel, renderViolations } from "./panel.js";
import {
  initialState,
  setHighlight,
  setMetrics,
  setRank,
  setSession,
  toggleOverlay,
  type ViewState,
} from "./state.js";
import type {
  BoiPayload,
  DatasetPayload,
  EdgePair,
  EditName,
  GraphPayload,
  TreePayload,
  ViolationPayload,
} from "./types.js";

export interface AppElements {
  rankInput: HTMLInputElement;
  rankPrev: HTMLButtonElement;
  rankNext: HTMLButtonElement;
  rankSize: HTMLElement;
  boiTicks: HTMLElement;
  openSession: HTMLButtonElement;
  sessionInfo: HTMLElement;
  canvas: HTMLElement;
  metricPanel: HTMLElement;
  violations: HTMLElement;
  formsList: HTMLElement;
  clearHighlight: HTMLButtonElement;
  referenceInput: HTMLTextAreaElement;
  loadReference: HTMLButtonElement;
  overlayToggle: HTMLInputElement;
  banner: HTMLElement;
  toast: HTMLElement;
}

export function grabElements(root: Document): AppElements {
  const byId = <T extends HTMLElement>(id: string): T => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
  };
  return {
    rankInput: byId("rank-input"),
    rankPrev: byId("rank-prev"),
    rankNext: byId("rank-next"),
    rankSize: byId("rank-size"),
    boiTicks: byId("boi-ticks"),
    openSession: byId("open-session"),
    sessionInfo: byId("session-info"),
    canvas: byId("canvas"),
    metricPanel: byId("metric-panel"),
    violations: byId("violations"),
    formsList: byId("forms-list"),
    clearHighlight: byId("clear-highlight"),
    referenceInput: byId("reference-input"),
    loadReference: byId("load-reference"),
    overlayToggle: byId("overlay-toggle"),
    banner: byId("banner"),
    toast: byId("toast"),
  };
}

const LAYOUT_SEED = 42;

export class App {
  state: ViewState = initialState;
  dataset: DatasetPayload | null = null;
  boundaries: BoiPayload["boundaries"] = [];
  previewTree: TreePayload | null = null;
  sessionGraph: GraphPayload | null = null;
  sessionViolations: ViolationPayload[] = [];
  graphConnected: boolean | null = null;
  referenceLoaded = false;
  missingEdges: EdgePair[] | null = null;
  highlight: HighlightInfo | null = null;
  selectedNode: number | null = null;
  /** Serializes edits: at most one POST in flight per session. */
  private editChain: Promise<void> = Promise.resolve();

  constructor(public api: ApiClient, public els: AppElements) {}

  async init(): Promise<void> {
    this.dataset = await this.api.dataset();
    try {
      this.boundaries = (await this.api.boundaries(3)).boundaries;
    } catch (err) {
      this.showBanner(err);
      this.boundaries = [];
    }
    this.renderBoiTicks();
    this.renderFormsList();
    this.wireControls();
    await this.browseTo(0);
  }

  private wireControls(): void {
    this.els.rankPrev.addEventListener("click", () => {
      void this.browseTo(this.state.selectedRank - 1);
    });
    this.els.rankNext.addEventListener("click", () => {
      void this.browseTo(this.state.selectedRank + 1);
    });
    this.els.rankInput.addEventListener("change", () => {
      void this.browseTo(Number(this.els.rankInput.value));
    });
    this.els.openSession.addEventListener("click", () => {
      void this.openSession();
    });
    this.els.clearHighlight.addEventListener("click", () => {
      this.highlight = null;
      this.state = setHighlight(this.state, null);
      this.render();
    });
    this.els.loadReference.addEventListener("click", () => {
      void this.loadReference();
    });
    this.els.overlayToggle.addEventListener("change", () => {
      void this.setOverlay(this.els.overlayToggle.checked);
    });
  }

  async browseTo(rank: number): Promise<void> {
    if (rank < 0 || !Number.isInteger(rank)) return;
    try {
      const payload = await this.api.tree(rank);
      this.previewTree = payload;
      this.state = setRank(this.state, rank);
      this.els.rankInput.value = String(rank);
      this.els.rankSize.textContent = `Size ${payload.tree.total_weight}`;
      this.render();
    } catch (err) {
      this.showBanner(err); // state unchanged on server error
    }
  }

  async openSession(): Promise<void> {
    try {
      const sess = await this.api.createSession(this.state.selectedRank);
      this.state = setSession(this.state, sess.id, sess.evaluation);
      this.sessionGraph = sess.graph;
      this.sessionViolations = sess.violations;
      this.graphConnected = sess.graph_connected;
      this.referenceLoaded = false;
      this.missingEdges = null;
      this.highlight = null;
      this.selectedNode = null;
      this.els.overlayToggle.checked = false;
      this.els.sessionInfo.textContent = `session ${sess.id.slice(0, 8)} @ rank ${sess.base_rank}`;
      this.render();
    } catch (err) {
      this.showBanner(err);
    }
  }

  /** Edge editor: first click arms a node, second click adds or removes the
   * edge between the pair. Self-loop gestures are rejected client-side. */
  onNodeClick(node: number): void {
    if (!this.state.sessionId || !this.sessionGraph) return;
    if (this.selectedNode === null) {
      this.selectedNode = node;
      this.render();
      return;
    }
    if (this.selectedNode === node) {
      this.selectedNode = null;
      this.showToast("self-loops are not allowed");
      this.render();
      return;
    }
    const u = Math.min(this.selectedNode, node);
    const v = Math.max(this.selectedNode, node);
    this.selectedNode = null;
    const exists = this.sessionGraph.edges.some((e) => e.u === u && e.v === v);
    this.queueEdit(exists ? "remove_edge" : "add_edge", u, v);
  }

  queueEdit(op: EditName, u: number, v: number): Promise<void> {
    this.editChain = this.editChain.then(() => this.performEdit(op, u, v));
    return this.editChain;
  }

  private async performEdit(op: EditName, u: number, v: number): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    try {
      const resp = await this.api.edit(sessionId, op, u, v);
      this.state = setMetrics(this.state, resp.evaluation);
      this.sessionGraph = resp.graph;
      this.sessionViolations = resp.violations;
      this.graphConnected = resp.graph_connected;
      await this.refreshOverlay();
      await this.refreshHighlight();
      this.render();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.showToast(`edit rejected: ${err.message}`);
        await this.resync(sessionId); // revert to server truth
      } else {
        this.showBanner(err);
      }
    }
  }

  private async resync(sessionId: string): Promise<void> {
    try {
      const sess = await this.api.session(sessionId);
      this.state = setMetrics(this.state, sess.evaluation);
      this.sessionGraph = sess.graph;
      this.sessionViolations = sess.violations;
      this.graphConnected = sess.graph_connected;
      this.render();
    } catch (err) {
      this.showBanner(err);
    }
  }

  async loadReference(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) {
      this.showToast("open a session first");
      return;
    }
    let graph: unknown;
    try {
      graph = JSON.parse(this.els.referenceInput.value);
    } catch {
      this.showBanner(new Error("reference is not valid JSON"));
      return;
    }
    try {
      const sess = await this.api.setReference(sessionId, graph);
      this.referenceLoaded = true;
      this.state = setMetrics(this.state, sess.evaluation);
      await this.refreshOverlay();
      this.render();
      this.showToast("reference loaded");
    } catch (err) {
      this.showBanner(err);
    }
  }

  async setOverlay(on: boolean): Promise<void> {
    if (on && !this.referenceLoaded) {
      this.els.overlayToggle.checked = false;
      this.showToast("load a reference map first");
      return;
    }
    if (on !== this.state.overlayReference) {
      this.state = toggleOverlay(this.state);
    }
    this.els.overlayToggle.checked = on;
    await this.refreshOverlay();
    this.render();
  }

  private async refreshOverlay(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId || !this.state.overlayReference || !this.referenceLoaded) {
      this.missingEdges = null;
      return;
    }
    const d = await this.api.diff(sessionId);
    this.missingEdges = d.missing_edges;
  }

  async highlightForm(form: number): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) {
      this.showToast("open a session first");
      return;
    }
    try {
      const payload = await this.api.formRegion(sessionId, form);
      this.state = setHighlight(this.state, form);
      this.highlight = { nodes: payload.nodes, components: payload.components };
      if (!payload.connected && this.dataset) {
        const labels = this.dataset.functions.map((f) => f.abbr);
        const parts = payload.components
          .map((component) => `{${component.map((v) => labels[v]).join(", ")}}`)
          .join(" vs ");
        this.showBanner(new Error(`region of '${payload.gram ?? form}' is disconnected: ${parts}`));
      } else {
        this.hideBanner();
      }
      this.render();
    } catch (err) {
      this.showBanner(err);
    }
  }

  private async refreshHighlight(): Promise<void> {
    if (this.state.highlightedForm === null || !this.state.sessionId) return;
    const payload = await this.api.formRegion(this.state.sessionId, this.state.highlightedForm);
    this.highlight = { nodes: payload.nodes, components: payload.components };
  }

  displayedGraph(): GraphPayload | null {
    if (this.state.sessionId && this.sessionGraph) return this.sessionGraph;
    return this.previewTree?.tree ?? null;
  }

  render(): void {
    const graph = this.displayedGraph();
    if (graph) {
      const pairs = graph.edges.map((e) => [e.u, e.v] as EdgePair);
      const overlay = this.state.overlayReference ? this.missingEdges : null;
      const layoutPairs = pairs.concat(overlay ?? []);
      const positions = forceLayout(graph.n, layoutPairs, 900, 620, LAYOUT_SEED);
      renderCanvas({
        container: this.els.canvas,
        graph,
        positions,
        missingEdges: overlay,
        highlight: this.highlight,
        selectedNode: this.selectedNode,
        onNodeClick: this.state.sessionId ? (v) => this.onNodeClick(v) : undefined,
      });
    }
    renderMetricPanel(
      this.els.metricPanel,
      this.state.metricPanel,
      this.state.sessionId ? this.graphConnected : null,
    );
    const labels = this.dataset?.functions.map((f) => f.abbr) ?? [];
    renderViolations(
      this.els.violations,
      this.state.sessionId ? this.sessionViolations : this.previewTree?.violations ?? [],
      labels,
    );
  }

  private renderBoiTicks(): void {
    this.els.boiTicks.replaceChildren();
    for (const [weight, rank] of this.boundaries) {
      const tick = document.createElement("button");
      tick.className = "boi-tick";
      tick.dataset.rank = String(rank);
      tick.textContent = `w=${weight} @ ${rank}`;
      tick.addEventListener("click", () => void this.browseTo(rank));
      this.els.boiTicks.appendChild(tick);
    }
  }

  private renderFormsList(): void {
    this.els.formsList.replaceChildren();
    if (!this.dataset) return;
    this.dataset.forms.forEach((form, idx) => {
      const button = document.createElement("button");
      button.className = "form-chip";
      button.dataset.form = String(idx);
      button.textContent = `${form.gram} (${form.language})`;
      button.addEventListener("click", () => void this.highlightForm(idx));
      this.els.formsList.appendChild(button);
    });
  }

  showBanner(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    this.els.banner.textContent = message;
    this.els.banner.classList.add("visible");
  }

  hideBanner(): void {
    this.els.banner.textContent = "";
    this.els.banner.classList.remove("visible");
  }

  showToast(message: string): void {
    this.els.toast.textContent = message;
    this.els.toast.classList.add("visible");
    setTimeout(() => this.els.toast.classList.remove("visible"), 2500);
  }
}
