// Browser bootstrap: binds the session store to the page. All logic worth
// testing lives in state.ts and render.ts; this file only moves strings
// between DOM nodes and store calls.

import { ApiClient, ApiError } from "./api.js";
import { ATTRIBUTE_PRESETS, DEFAULT_API_BASE } from "./config.js";
import {
  renderProvenance,
  renderRepositoryReports,
  renderRepositoryRows,
  renderRequirementRows,
  renderResultRows,
  renderStatus,
} from "./render.js";
import { SessionStore } from "./state.js";
import type { RepositoryKind } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const apiBaseInput = byId<HTMLInputElement>("api-base");
const algoNote = byId<HTMLElement>("algo-note");
const normalizerSelect = byId<HTMLSelectElement>("algo-normalizer");
const rankerSelect = byId<HTMLSelectElement>("algo-ranker");

const repoEndpointInput = byId<HTMLInputElement>("repo-endpoint");
const repoKindSelect = byId<HTMLSelectElement>("repo-kind");
const repoNameInput = byId<HTMLInputElement>("repo-name");
const repoAddButton = byId<HTMLButtonElement>("repo-add");
const repoError = byId<HTMLElement>("repo-error");
const repoRows = byId<HTMLTableSectionElement>("repo-rows");

const domainInput = byId<HTMLInputElement>("domain");

const presetList = byId<HTMLDataListElement>("attribute-presets");
const reqAttributeInput = byId<HTMLInputElement>("req-attribute");
const reqTargetInput = byId<HTMLInputElement>("req-target");
const reqDirectionSelect = byId<HTMLSelectElement>("req-direction");
const reqMandatoryInput = byId<HTMLInputElement>("req-mandatory");
const reqAddButton = byId<HTMLButtonElement>("req-add");
const reqError = byId<HTMLElement>("req-error");
const reqRows = byId<HTMLTableSectionElement>("req-rows");

const rankButton = byId<HTMLButtonElement>("rank-button");
const statusArea = byId<HTMLElement>("status");
const modeScoreButton = byId<HTMLButtonElement>("mode-score");
const modeCrossButton = byId<HTMLButtonElement>("mode-cross");
const resultMeta = byId<HTMLElement>("result-meta");
const resultRows = byId<HTMLTableSectionElement>("result-rows");
const repoReports = byId<HTMLUListElement>("repo-reports");
const provenanceArea = byId<HTMLElement>("provenance");

apiBaseInput.value = DEFAULT_API_BASE;
let client = new ApiClient(DEFAULT_API_BASE);
const store = new SessionStore({ rank: (request, signal) => client.rank(request, signal) });

for (const preset of ATTRIBUTE_PRESETS) {
  const option = document.createElement("option");
  option.value = preset;
  presetList.appendChild(option);
}

async function loadAlgorithms(): Promise<void> {
  algoNote.textContent = "";
  try {
    const catalog = await client.algorithms();
    fillSelect(
      normalizerSelect,
      catalog.normalizers.map((n) => ({ value: n.name, label: n.name })),
      store.state.normalizer,
    );
    fillSelect(
      rankerSelect,
      catalog.rankers.map((r) => ({
        value: r.name,
        label: r.polarity === "lower-is-better" ? `${r.name} (lower wins)` : r.name,
      })),
      store.state.ranker,
    );
  } catch (error) {
    algoNote.textContent =
      error instanceof ApiError ? error.message : "service unreachable; check the API base";
  }
}

function fillSelect(
  select: HTMLSelectElement,
  entries: { value: string; label: string }[],
  current: string,
): void {
  select.innerHTML = "";
  for (const entry of entries) {
    const option = document.createElement("option");
    option.value = entry.value;
    option.textContent = entry.label;
    select.appendChild(option);
  }
  const values = entries.map((entry) => entry.value);
  if (values.includes(current)) {
    select.value = current;
  } else if (values.length > 0) {
    select.value = values[0]!;
    if (select === normalizerSelect) {
      store.setNormalizer(select.value);
    } else {
      store.setRanker(select.value);
    }
  }
}

apiBaseInput.addEventListener("change", () => {
  const base = apiBaseInput.value.trim() || DEFAULT_API_BASE;
  client = new ApiClient(base);
  store.setClient({ rank: (request, signal) => client.rank(request, signal) });
  void loadAlgorithms();
});

repoAddButton.addEventListener("click", () => {
  const error = store.addRepository({
    name: repoNameInput.value,
    endpoint: repoEndpointInput.value,
    kind: repoKindSelect.value as RepositoryKind,
  });
  repoError.textContent = error ?? "";
  if (!error) {
    repoEndpointInput.value = "";
    repoNameInput.value = "";
    repoEndpointInput.focus();
  }
});

let draggedIndex: number | null = null;

repoRows.addEventListener("dragstart", (event) => {
  const row = (event.target as HTMLElement).closest<HTMLTableRowElement>("tr[data-index]");
  if (row) {
    draggedIndex = Number(row.dataset.index);
    event.dataTransfer?.setData("text/plain", row.dataset.index ?? "");
  }
});

repoRows.addEventListener("dragover", (event) => {
  if (draggedIndex !== null) {
    event.preventDefault();
  }
});

repoRows.addEventListener("drop", (event) => {
  const row = (event.target as HTMLElement).closest<HTMLTableRowElement>("tr[data-index]");
  if (row && draggedIndex !== null) {
    event.preventDefault();
    store.moveRepository(draggedIndex, Number(row.dataset.index));
  }
  draggedIndex = null;
});

repoRows.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest<HTMLButtonElement>("button[data-action]");
  if (!button) {
    return;
  }
  const index = Number(button.dataset.index ?? -1);
  switch (button.dataset.action) {
    case "repo-up":
      store.moveRepository(index, index - 1);
      break;
    case "repo-down":
      store.moveRepository(index, index + 1);
      break;
    case "repo-remove":
      store.removeRepository(button.dataset.endpoint ?? "");
      break;
  }
});

domainInput.addEventListener("change", () => store.setDomain(domainInput.value.trim()));
normalizerSelect.addEventListener("change", () => store.setNormalizer(normalizerSelect.value));
rankerSelect.addEventListener("change", () => store.setRanker(rankerSelect.value));

reqAddButton.addEventListener("click", () => {
  const error = store.addRequirement({
    attribute: reqAttributeInput.value,
    target: Number(reqTargetInput.value),
    maximize: reqDirectionSelect.value === "maximize",
    mandatory: reqMandatoryInput.checked,
  });
  reqError.textContent = error ?? "";
  if (!error) {
    reqAttributeInput.value = "";
    reqTargetInput.value = "";
    reqAttributeInput.focus();
  }
});

reqRows.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest<HTMLButtonElement>("button[data-action]");
  if (button?.dataset.action === "req-remove") {
    store.removeRequirement(Number(button.dataset.index));
  }
});

reqRows.addEventListener("change", (event) => {
  const control = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!control) {
    return;
  }
  const index = Number(control.getAttribute("data-index"));
  let error: string | null = null;
  switch (control.getAttribute("data-action")) {
    case "req-target":
      error = store.updateRequirement(index, { target: Number((control as HTMLInputElement).value) });
      break;
    case "req-direction":
      error = store.updateRequirement(index, {
        maximize: (control as HTMLSelectElement).value === "maximize",
      });
      break;
    case "req-mandatory":
      error = store.updateRequirement(index, {
        mandatory: (control as HTMLInputElement).checked,
      });
      break;
  }
  reqError.textContent = error ?? "";
  if (error) {
    render(); // put the rejected edit back to the stored value
  }
});

rankButton.addEventListener("click", () => void store.rank());
modeScoreButton.addEventListener("click", () => store.setResultsMode("score"));
modeCrossButton.addEventListener("click", () => store.setResultsMode("cross"));

function render(): void {
  const state = store.state;
  repoRows.innerHTML = renderRepositoryRows(state.repositories);
  reqRows.innerHTML = renderRequirementRows(state.requirements);
  rankButton.disabled = !store.canRank || state.ranking;
  statusArea.innerHTML = renderStatus(state);
  modeScoreButton.classList.toggle("active", state.resultsMode === "score");
  modeCrossButton.classList.toggle("active", state.resultsMode === "cross");

  if (state.lastResult) {
    const result = state.lastResult;
    resultMeta.textContent =
      `domain ${result.domain}, normalizer ${result.normalizer}, ranker ${result.ranker}`;
    resultRows.innerHTML = renderResultRows(result, state.resultsMode);
    repoReports.innerHTML = renderRepositoryReports(result);
    provenanceArea.innerHTML = renderProvenance(result);
  } else {
    resultMeta.textContent = "";
    resultRows.innerHTML = `<tr><td colspan="6" class="empty">no ranking yet</td></tr>`;
    repoReports.innerHTML = "";
    provenanceArea.innerHTML = "";
  }
}

store.subscribe(render);
render();
void loadAlgorithms();
