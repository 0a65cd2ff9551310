// Thin HTTP client for the service API. Everything the console shows comes
// back from these calls; there is no client-side ranking fallback.

import type { AlgorithmCatalog, ApiErrorBody, RankRequest, RankResponse } from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.body = body;
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  async rank(request: RankRequest, signal?: AbortSignal): Promise<RankResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/rank`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    return readJson<RankResponse>(response);
  }

  async algorithms(signal?: AbortSignal): Promise<AlgorithmCatalog> {
    const response = await this.fetchFn(`${this.baseUrl}/algorithms`, { signal });
    return readJson<AlgorithmCatalog>(response);
  }
}

async function readJson<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { code: "http_error", message: `HTTP ${response.status}` };
  }
  throw new ApiError(response.status, body);
}
