// Session state for one analyst: the repository priority list, the
// requirement rows, algorithm choices, and the last ranking fetched.
//
// Every mutation notifies subscribers. Edits made after a result arrived
// mark that result stale until the next successful /rank call; at most one
// rank request is in flight and a newer one silently wins over older ones.

import type {
  RankRequest,
  RankResponse,
  RepositoryKind,
  RepositoryRef,
  RequirementRow,
} from "./types.js";

/** The one call the store needs; ApiClient satisfies it. */
export interface RankingClient {
  rank(request: RankRequest, signal?: AbortSignal): Promise<RankResponse>;
}

export type ResultsMode = "score" | "cross";

export interface SessionState {
  repositories: RepositoryRef[];
  domain: string;
  requirements: RequirementRow[];
  normalizer: string;
  ranker: string;
  resultsMode: ResultsMode;
  lastResult: RankResponse | null;
  resultStale: boolean;
  ranking: boolean;
  lastError: string | null;
}

export function validateEndpoint(kind: RepositoryKind, endpoint: string): string | null {
  const trimmed = endpoint.trim();
  if (!trimmed) {
    return "endpoint must not be empty";
  }
  if (/\s/.test(trimmed)) {
    return "endpoint must not contain whitespace";
  }
  const looksLikeUri = trimmed.includes("://");
  if (kind === "monitor" || looksLikeUri) {
    let parsed: URL;
    try {
      parsed = new URL(trimmed);
    } catch {
      return `not a valid URI: ${trimmed}`;
    }
    const allowed = kind === "monitor" ? ["http:", "https:"] : ["http:", "https:", "file:"];
    if (!allowed.includes(parsed.protocol)) {
      return kind === "monitor"
        ? "a monitor endpoint must be an http(s) URL"
        : `unsupported scheme ${parsed.protocol}`;
    }
  }
  return null;
}

export function validateRequirement(
  row: RequirementRow,
  others: readonly RequirementRow[],
): string | null {
  if (!row.attribute.trim()) {
    return "attribute name must not be empty";
  }
  if (!Number.isFinite(row.target)) {
    return "target must be a number";
  }
  if (row.target < 0) {
    return "target must not be negative";
  }
  if (others.some((other) => other.attribute === row.attribute)) {
    return `attribute ${row.attribute} is already listed`;
  }
  return null;
}

export class SessionStore {
  private client: RankingClient;
  private readonly listeners = new Set<() => void>();
  private controller: AbortController | null = null;
  private requestSeq = 0;

  readonly state: SessionState = {
    repositories: [],
    domain: "",
    requirements: [],
    normalizer: "max",
    ranker: "euclidean",
    resultsMode: "score",
    lastResult: null,
    resultStale: false,
    ranking: false,
    lastError: null,
  };

  constructor(client: RankingClient) {
    this.client = client;
  }

  // pointing the console at another service invalidates the shown result
  setClient(client: RankingClient): void {
    if (this.client !== client) {
      this.client = client;
      this.controller?.abort();
      this.touch();
    }
  }

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  // any input edit invalidates a displayed result
  private touch(): void {
    if (this.state.lastResult !== null) {
      this.state.resultStale = true;
    }
    this.emit();
  }

  addRepository(repo: { name?: string; endpoint: string; kind: RepositoryKind }): string | null {
    const endpoint = repo.endpoint.trim();
    const error = validateEndpoint(repo.kind, endpoint);
    if (error) {
      return error;
    }
    if (this.state.repositories.some((existing) => existing.endpoint === endpoint)) {
      return `repository ${endpoint} is already listed`;
    }
    this.state.repositories.push({
      name: repo.name?.trim() || endpoint,
      endpoint,
      kind: repo.kind,
    });
    this.touch();
    return null;
  }

  removeRepository(endpoint: string): void {
    const index = this.state.repositories.findIndex((repo) => repo.endpoint === endpoint);
    if (index >= 0) {
      this.state.repositories.splice(index, 1);
      this.touch();
    }
  }

  // list order is merge priority; drag handlers call this
  moveRepository(from: number, to: number): void {
    const repos = this.state.repositories;
    if (from === to || from < 0 || from >= repos.length || to < 0 || to >= repos.length) {
      return;
    }
    const [moved] = repos.splice(from, 1);
    repos.splice(to, 0, moved!);
    this.touch();
  }

  setDomain(domain: string): void {
    if (this.state.domain !== domain) {
      this.state.domain = domain;
      this.touch();
    }
  }

  setNormalizer(name: string): void {
    if (this.state.normalizer !== name) {
      this.state.normalizer = name;
      this.touch();
    }
  }

  setRanker(name: string): void {
    if (this.state.ranker !== name) {
      this.state.ranker = name;
      this.touch();
    }
  }

  // a pure view toggle: does not invalidate the result
  setResultsMode(mode: ResultsMode): void {
    if (this.state.resultsMode !== mode) {
      this.state.resultsMode = mode;
      this.emit();
    }
  }

  addRequirement(row: RequirementRow): string | null {
    const candidate = { ...row, attribute: row.attribute.trim() };
    const error = validateRequirement(candidate, this.state.requirements);
    if (error) {
      return error;
    }
    this.state.requirements.push(candidate);
    this.touch();
    return null;
  }

  updateRequirement(index: number, patch: Partial<RequirementRow>): string | null {
    const current = this.state.requirements[index];
    if (!current) {
      return `no requirement at row ${index}`;
    }
    const updated = { ...current, ...patch, attribute: (patch.attribute ?? current.attribute).trim() };
    const others = this.state.requirements.filter((_, i) => i !== index);
    const error = validateRequirement(updated, others);
    if (error) {
      return error;
    }
    this.state.requirements[index] = updated;
    this.touch();
    return null;
  }

  removeRequirement(index: number): void {
    if (index >= 0 && index < this.state.requirements.length) {
      this.state.requirements.splice(index, 1);
      this.touch();
    }
  }

  get canRank(): boolean {
    return (
      this.state.repositories.length > 0 &&
      this.state.domain.trim().length > 0 &&
      this.state.requirements.length > 0
    );
  }

  buildRequest(): RankRequest {
    return {
      repositories: this.state.repositories.map((repo) => ({ ...repo })),
      domain: this.state.domain.trim(),
      requirements: this.state.requirements.map((row) => ({ ...row })),
      normalizer: this.state.normalizer,
      ranker: this.state.ranker,
    };
  }

  async rank(): Promise<void> {
    if (!this.canRank) {
      return;
    }
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const seq = ++this.requestSeq;

    this.state.ranking = true;
    this.emit();
    try {
      const result = await this.client.rank(this.buildRequest(), controller.signal);
      if (seq !== this.requestSeq) {
        return; // a newer request took over
      }
      this.state.lastResult = result;
      this.state.resultStale = false;
      this.state.lastError = null;
    } catch (error) {
      if (isAbort(error) || seq !== this.requestSeq) {
        return;
      }
      this.state.lastError = error instanceof Error ? error.message : String(error);
    } finally {
      if (seq === this.requestSeq) {
        this.state.ranking = false;
        this.emit();
      }
    }
  }
}

function isAbort(error: unknown): boolean {
  return error instanceof Error && error.name === "AbortError";
}
