import type { EvaluationPayload, ViolationPayload } from "./types.js";

const METRIC_FIELDS = ["size", "recall", "precision", "div_d", "accuracy"] as const;

/** Render the metric panel. Every value is the raw server field converted
 * with String(); the panel never reformats or recomputes. */
export function renderMetricPanel(
  container: HTMLElement,
  evaluation: EvaluationPayload | null,
  graphConnected: boolean | null,
): void {
  container.replaceChildren();
  if (!evaluation) {
    const empty = document.createElement("p");
    empty.className = "panel-empty";
    empty.textContent = "no active session";
    container.appendChild(empty);
    return;
  }
  const table = document.createElement("table");
  table.className = "metric-table";
  for (const field of METRIC_FIELDS) {
    const row = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = field;
    const value = document.createElement("td");
    value.dataset.metric = field;
    const raw = evaluation[field];
    value.textContent = raw === null ? "-" : String(raw);
    row.append(name, value);
    table.appendChild(row);
  }
  container.appendChild(table);
  if (graphConnected !== null) {
    const status = document.createElement("p");
    status.className = graphConnected ? "graph-status ok" : "graph-status broken";
    status.dataset.metric = "graph_connected";
    status.textContent = graphConnected ? "graph connected" : "graph disconnected";
    container.appendChild(status);
  }
}

export function renderViolations(
  container: HTMLElement,
  violations: ViolationPayload[],
  labels: string[],
): void {
  container.replaceChildren();
  const heading = document.createElement("h3");
  heading.textContent = `violations (${violations.length})`;
  container.appendChild(heading);
  if (violations.length === 0) {
    const ok = document.createElement("p");
    ok.className = "no-violations";
    ok.textContent = "every form occupies a connected region";
    container.appendChild(ok);
    return;
  }
  const list = document.createElement("ul");
  list.className = "violation-list";
  for (const violation of violations) {
    const item = document.createElement("li");
    item.dataset.form = String(violation.form);
    const parts = violation.components
      .map((component) => `{${component.map((v) => labels[v]).join(", ")}}`)
      .join(" | ");
    item.textContent = `${violation.gram} (${violation.language}): ${parts}`;
    list.appendChild(item);
  }
  container.appendChild(list);
}
