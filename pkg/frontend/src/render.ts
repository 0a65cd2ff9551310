// HTML fragments for the console's three areas. Pure string builders over
// the session state, so they are testable without a browser. All ordering
// comes from fields the service computed (scoreRank, rank); the console
// never re-derives a score or a position.

import type { ResultsMode, SessionState } from "./state.js";
import type { RankEntry, RankResponse, RepositoryRef, RequirementRow } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function scoreOrder(entries: readonly RankEntry[]): RankEntry[] {
  return [...entries].sort((a, b) => a.scoreRank - b.scoreRank);
}

export function crossPriorityOrder(entries: readonly RankEntry[]): RankEntry[] {
  return [...entries].sort((a, b) => a.rank - b.rank);
}

export function formatScore(score: number | null): string {
  return score === null ? "-" : score.toFixed(5);
}

export function renderRepositoryRows(repos: readonly RepositoryRef[]): string {
  if (repos.length === 0) {
    return `<tr><td colspan="5" class="empty">no repositories; add one above</td></tr>`;
  }
  return repos
    .map(
      (repo, index) => `<tr draggable="true" data-index="${index}">
  <td class="grip" title="drag to reorder">&#8942;&#8942;</td>
  <td>${index + 1}</td>
  <td>${escapeHtml(repo.name)}<div class="endpoint">${escapeHtml(repo.endpoint)}</div></td>
  <td><span class="kind kind-${repo.kind}">${repo.kind}</span></td>
  <td>
    <button data-action="repo-up" data-index="${index}" ${index === 0 ? "disabled" : ""}>&#8593;</button>
    <button data-action="repo-down" data-index="${index}" ${index === repos.length - 1 ? "disabled" : ""}>&#8595;</button>
    <button data-action="repo-remove" data-endpoint="${escapeHtml(repo.endpoint)}">remove</button>
  </td>
</tr>`,
    )
    .join("\n");
}

export function renderRequirementRows(rows: readonly RequirementRow[]): string {
  if (rows.length === 0) {
    return `<tr><td colspan="5" class="empty">no requirements; ranking is disabled until one exists</td></tr>`;
  }
  return rows
    .map(
      (row, index) => `<tr data-index="${index}">
  <td>${escapeHtml(row.attribute)}</td>
  <td><input type="number" min="0" step="any" value="${row.target}" data-action="req-target" data-index="${index}"></td>
  <td>
    <select data-action="req-direction" data-index="${index}">
      <option value="minimize" ${row.maximize ? "" : "selected"}>minimize</option>
      <option value="maximize" ${row.maximize ? "selected" : ""}>maximize</option>
    </select>
  </td>
  <td><input type="checkbox" data-action="req-mandatory" data-index="${index}" ${row.mandatory ? "checked" : ""}></td>
  <td><button data-action="req-remove" data-index="${index}">remove</button></td>
</tr>`,
    )
    .join("\n");
}

export function renderResultRows(result: RankResponse, mode: ResultsMode): string {
  const entries = mode === "score" ? scoreOrder(result.entries) : crossPriorityOrder(result.entries);
  if (entries.length === 0) {
    return `<tr><td colspan="6" class="empty">no services found for this domain</td></tr>`;
  }
  return entries
    .map(
      (entry) => `<tr>
  <td>${escapeHtml(entry.serviceId)}</td>
  <td>${escapeHtml(entry.displayName)}</td>
  <td class="num">${formatScore(entry.score)}</td>
  <td class="num">${entry.scoreRank}</td>
  <td class="num">${entry.mandatoryFulfilled}/${entry.mandatoryTotal}</td>
  <td class="num">${entry.rank}</td>
</tr>`,
    )
    .join("\n");
}

export function renderRepositoryReports(result: RankResponse): string {
  return result.diagnostics.repositories
    .map((report) => {
      const status =
        report.status === "ok"
          ? `ok, ${report.serviceCount} service(s)`
          : `error: ${escapeHtml(report.detail ?? "unreachable")}`;
      return `<li class="report-${report.status}"><strong>${escapeHtml(report.name)}</strong> (${report.kind}) ${status}</li>`;
    })
    .join("\n");
}

export function renderProvenance(result: RankResponse): string {
  const blocks = Object.entries(result.diagnostics.services).map(([serviceId, diag]) => {
    const cells = Object.entries(diag.provenance)
      .map(
        ([attribute, endpoint]) =>
          `<tr><td>${escapeHtml(attribute)}</td><td>${escapeHtml(endpoint)}</td></tr>`,
      )
      .join("\n");
    const undefinedNote =
      diag.undefinedAttributes.length > 0
        ? `<p class="note">undefined: ${diag.undefinedAttributes.map(escapeHtml).join(", ")}</p>`
        : "";
    const scoringNote = diag.scoringError
      ? `<p class="note error">not scored: ${escapeHtml(diag.scoringError)}</p>`
      : "";
    return `<details><summary>${escapeHtml(serviceId)}</summary>
<table class="provenance"><thead><tr><th>attribute</th><th>source</th></tr></thead>
<tbody>${cells}</tbody></table>${undefinedNote}${scoringNote}</details>`;
  });
  return blocks.join("\n");
}

export function renderStatus(state: SessionState): string {
  if (state.ranking) {
    return `<span class="badge busy">ranking&hellip;</span>`;
  }
  if (state.lastError) {
    return `<span class="badge error">${escapeHtml(state.lastError)}</span>`;
  }
  if (state.lastResult && state.resultStale) {
    return `<span class="badge stale">stale: inputs changed since this ranking</span>`;
  }
  if (state.lastResult) {
    return `<span class="badge fresh">up to date</span>`;
  }
  return "";
}
