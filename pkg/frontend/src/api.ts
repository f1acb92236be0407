/** Typed client for the explanation service's JSON API.
 *
 * All numbers shown anywhere in the UI come verbatim from these response
 * bodies; the client never post-processes them. Explain and what-if share
 * one cancellation slot so at most one of those requests is in flight —
 * a later interaction aborts the earlier pending one.
 */

export interface DatasetInfo {
  dataset_id: string;
  rows: number;
  cols: number;
  feature_names: string[];
  target: number[] | null;
}

export interface DrInfo {
  model_id: string;
  n_reduced: number;
  embedding: number[][];
  has_predictor: boolean;
}

export interface ExplanationDoc {
  slopes: number[][];
  intercepts: number[];
  alpha: number;
  orientation: string;
  generator: Record<string, unknown>;
  query: number[] | null;
}

export interface ExplainInfo {
  model_id: string;
  instance_index: number | null;
  instance: number[];
  explanation: ExplanationDoc;
  instance_difference: number;
}

export interface WhatIfInfo {
  before: number[];
  after: number[];
  prediction_before: number | null;
  prediction_after: number | null;
  feature: number;
  value: number;
}

export interface DrRequest {
  dataset_id: string;
  method: "pca" | "kpca" | "ae";
  n_components?: number;
  variance?: number;
  seed?: number;
  fit_predictor?: boolean;
  params?: Record<string, unknown>;
}

export interface ExplainRequest {
  model_id: string;
  instance_index: number;
  k?: number;
  ng?: "knn" | "perturbation";
  auto_alpha?: boolean;
}

export interface WhatIfRequest {
  model_id: string;
  instance_index: number;
  feature: number;
  value?: number;
  to_mean?: boolean;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly where: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}

export class ApiClient {
  private pending: AbortController | null = null;

  constructor(
    private readonly base = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async post<T>(
    path: string,
    body: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const res = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const doc: unknown = await res.json();
    if (!res.ok) {
      const err = doc as { error?: string; where?: string };
      throw new ApiError(
        err.error ?? res.statusText,
        err.where ?? "response",
        res.status,
      );
    }
    return doc as T;
  }

  /** Routes explain/whatif through a single slot, aborting the previous
   * in-flight request when a new one starts. */
  private abortable<T>(path: string, body: unknown): Promise<T> {
    this.pending?.abort();
    const ctl = new AbortController();
    this.pending = ctl;
    return this.post<T>(path, body, ctl.signal).finally(() => {
      if (this.pending === ctl) this.pending = null;
    });
  }

  loadBundled(name: string): Promise<DatasetInfo> {
    return this.post("/api/datasets", { bundled: name });
  }

  uploadCsv(csv: string, targetColumn?: string): Promise<DatasetInfo> {
    return this.post("/api/datasets", {
      csv,
      has_header: true,
      target_column: targetColumn ?? null,
    });
  }

  fitDr(req: DrRequest): Promise<DrInfo> {
    return this.post("/api/dr", req);
  }

  explain(req: ExplainRequest): Promise<ExplainInfo> {
    return this.abortable("/api/explain", req);
  }

  whatif(req: WhatIfRequest): Promise<WhatIfInfo> {
    return this.abortable("/api/whatif", req);
  }
}
