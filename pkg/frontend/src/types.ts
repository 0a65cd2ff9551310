// Wire types for the service API. Field names mirror the JSON documents
// exactly; the console never derives numbers of its own from them.

export type RepositoryKind = "databank" | "monitor";

export interface RepositoryRef {
  name: string;
  endpoint: string;
  kind: RepositoryKind;
}

export interface RequirementRow {
  attribute: string;
  target: number;
  maximize: boolean;
  mandatory: boolean;
}

export interface RankRequest {
  repositories: RepositoryRef[];
  domain: string;
  requirements: RequirementRow[];
  normalizer: string;
  ranker: string;
}

export type Polarity = "lower-is-better" | "higher-is-better";

export interface RankEntry {
  serviceId: string;
  displayName: string;
  score: number | null;
  polarity: Polarity;
  scoreRank: number;
  mandatoryFulfilled: number;
  mandatoryTotal: number;
  rank: number;
}

export interface RepositoryReport {
  name: string;
  endpoint: string;
  kind: RepositoryKind;
  status: "ok" | "error";
  detail: string | null;
  serviceCount: number;
}

export interface ServiceDiagnostics {
  undefinedAttributes: string[];
  provenance: Record<string, string>;
  scoringError: string | null;
}

export interface RankResponse {
  domain: string;
  normalizer: string;
  ranker: string;
  entries: RankEntry[];
  diagnostics: {
    repositories: RepositoryReport[];
    services: Record<string, ServiceDiagnostics>;
  };
}

export interface AlgorithmCatalog {
  normalizers: { id: number; name: string }[];
  rankers: { id: number; name: string; polarity: Polarity }[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  perRepositoryDetails?: { endpoint: string; detail: string }[];
}
