import type {
  BoiPayload,
  DatasetPayload,
  DiffPayload,
  EditName,
  EditResponse,
  GraphPayload,
  RegionPayload,
  SessionPayload,
  TreePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

type FetchLike = typeof globalThis.fetch;

/** Thin typed client over the server routes; all numbers displayed in the
 * UI originate from responses returned here. */
export class ApiClient {
  private fetchFn: FetchLike;

  constructor(public baseUrl: string = "", fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? globalThis.fetch.bind(globalThis);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = (await resp.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep statusText
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  dataset(): Promise<DatasetPayload> {
    return this.request("/api/dataset");
  }

  denseGraph(): Promise<GraphPayload> {
    return this.request("/api/graph/dense");
  }

  tree(rank: number): Promise<TreePayload> {
    return this.request(`/api/trees?rank=${rank}`);
  }

  boundaries(classes: number): Promise<BoiPayload> {
    return this.request(`/api/trees/boi?classes=${classes}`);
  }

  createSession(fromRank: number): Promise<SessionPayload> {
    return this.post("/api/session", { from_rank: fromRank });
  }

  session(id: string): Promise<SessionPayload> {
    return this.request(`/api/session/${id}`);
  }

  edit(id: string, op: EditName, u: number, v: number): Promise<EditResponse> {
    return this.post(`/api/session/${id}/edit`, { op, u, v });
  }

  setReference(id: string, graph: unknown): Promise<SessionPayload> {
    return this.post(`/api/session/${id}/reference`, { graph });
  }

  diff(id: string): Promise<DiffPayload> {
    return this.request(`/api/session/${id}/diff`);
  }

  formRegion(id: string, form: number): Promise<RegionPayload> {
    return this.request(`/api/session/${id}/form/${form}`);
  }
}
