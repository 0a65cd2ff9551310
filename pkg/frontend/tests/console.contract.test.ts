// End-to-end contract: the console talks to the real ranking service over
// HTTP, federating the bundled weather DataBank with two live monitor stubs.
// Everything the assertions read went through ApiClient and SessionStore,
// the same path the browser uses.

import { execFileSync, spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { createServer } from "node:http";
import type { Server } from "node:http";
import type { AddressInfo } from "node:net";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { crossPriorityOrder, scoreOrder } from "../src/render.js";
import { SessionStore } from "../src/state.js";
import type { RankResponse } from "../src/types.js";

const SCORE_ORDER = ["WS1", "WS4", "WS3", "WS2"];
const CROSS_ORDER = ["WS1", "WS2", "WS4", "WS3"];
const STATIC_ATTRIBUTES = [
  "cost",
  "throughput",
  "jitter",
  "queueDelay",
  "capacity",
  "errorRate",
  "packetLoss",
];

const REQUIREMENTS = [
  { attribute: "cost", target: 30, maximize: false, mandatory: true },
  { attribute: "throughput", target: 35, maximize: true, mandatory: true },
  { attribute: "jitter", target: 31, maximize: false, mandatory: true },
  { attribute: "queueDelay", target: 15, maximize: false, mandatory: true },
  { attribute: "capacity", target: 20, maximize: true, mandatory: true },
  { attribute: "errorRate", target: 0.5, maximize: false, mandatory: true },
  { attribute: "packetLoss", target: 0.3, maximize: false, mandatory: true },
  { attribute: "ART", target: 150, maximize: false, mandatory: true },
];

const MONITOR1_ENTRIES = [
  {
    serviceId: "WS1",
    displayName: "AirportWeatherCheck",
    qos: { ART: 120.0, CRT: 95.0, CA: 0.98 },
  },
];
const MONITOR2_ENTRIES = [
  { serviceId: "WS1", displayName: "AirportWeatherCheck", qos: { CRT: 110.0 } },
];

interface Stub {
  url: string;
  server: Server;
}

function startMonitorStub(entries: unknown[]): Promise<Stub> {
  return new Promise((resolve) => {
    const server = createServer((req, res) => {
      const url = new URL(req.url ?? "/", "http://localhost");
      if (url.pathname !== "/services") {
        res.writeHead(404, { "content-type": "application/json" });
        res.end(JSON.stringify({ code: "not_found" }));
        return;
      }
      const body = url.searchParams.get("domain") === "weather" ? entries : [];
      res.writeHead(200, { "content-type": "application/json" });
      res.end(JSON.stringify(body));
    });
    server.listen(0, "127.0.0.1", () => {
      const { port } = server.address() as AddressInfo;
      resolve({ url: `http://127.0.0.1:${port}`, server });
    });
  });
}

function closeServer(server: Server): Promise<void> {
  return new Promise((resolve) => server.close(() => resolve()));
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const { port } = probe.address() as AddressInfo;
      probe.close(() => resolve(port));
    });
  });
}

async function waitForApi(base: string, diagnostics: () => string): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${base}/algorithms`);
      if (response.ok) {
        return;
      }
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(`ranking service did not come up\n${diagnostics()}`);
}

let api: ChildProcess;
let apiLog = "";
let apiBase = "";
let monitor1: Stub;
let monitor2: Stub;
let databankPath = "";
let client: ApiClient;
let store: SessionStore;

function lastResult(): RankResponse {
  expect(store.state.lastError).toBeNull();
  const result = store.state.lastResult;
  expect(result).not.toBeNull();
  return result!;
}

function ws1Provenance(result: RankResponse): Record<string, string> {
  const diag = result.diagnostics.services["WS1"];
  expect(diag).toBeDefined();
  return diag!.provenance;
}

beforeAll(async () => {
  databankPath = execFileSync(
    "python3",
    ["-c", "from qosrank.fixtures import weather_databank_path; print(weather_databank_path())"],
    { encoding: "utf-8" },
  ).trim();

  [monitor1, monitor2] = await Promise.all([
    startMonitorStub(MONITOR1_ENTRIES),
    startMonitorStub(MONITOR2_ENTRIES),
  ]);

  const port = await freePort();
  apiBase = `http://127.0.0.1:${port}`;
  api = spawn("python3", ["-m", "qosrank.api"], {
    env: { ...process.env, QOSRANK_HOST: "127.0.0.1", QOSRANK_PORT: String(port) },
    stdio: ["ignore", "pipe", "pipe"],
  });
  api.stdout?.on("data", (chunk: Buffer) => {
    apiLog += chunk.toString();
  });
  api.stderr?.on("data", (chunk: Buffer) => {
    apiLog += chunk.toString();
  });
  await waitForApi(apiBase, () => apiLog);

  client = new ApiClient(apiBase);
  store = new SessionStore(client);
});

afterAll(async () => {
  if (api && api.exitCode === null) {
    api.kill("SIGTERM");
    await new Promise<void>((resolve) => {
      const fallback = setTimeout(() => {
        api.kill("SIGKILL");
        resolve();
      }, 5_000);
      api.once("exit", () => {
        clearTimeout(fallback);
        resolve();
      });
    });
  }
  await Promise.all(
    [monitor1, monitor2].filter(Boolean).map((stub) => closeServer(stub.server)),
  );
});

describe("analyst console against the live ranking service", () => {
  it("loads the algorithm catalog that fills the dropdowns", async () => {
    const catalog = await client.algorithms();
    expect(catalog.normalizers.map((n) => n.name)).toEqual(["max", "sum", "min-max", "euclidean"]);
    expect(catalog.rankers).toHaveLength(6);
    const euclidean = catalog.rankers.find((r) => r.name === "euclidean");
    expect(euclidean?.polarity).toBe("lower-is-better");
  });

  it("reproduces the reference orderings from the bundled data bank", async () => {
    store.addRepository({ name: "DataBank1", endpoint: databankPath, kind: "databank" });
    store.setDomain("weather");
    for (const row of REQUIREMENTS) {
      expect(store.addRequirement(row)).toBeNull();
    }
    expect(store.canRank).toBe(true);

    await store.rank();
    const result = lastResult();

    expect(scoreOrder(result.entries).map((e) => e.serviceId)).toEqual(SCORE_ORDER);
    expect(crossPriorityOrder(result.entries).map((e) => e.serviceId)).toEqual(CROSS_ORDER);
    expect(result.entries.map((e) => e.rank)).toEqual([1, 2, 3, 4]);

    const ws1 = result.entries.find((e) => e.serviceId === "WS1")!;
    const ws2 = result.entries.find((e) => e.serviceId === "WS2")!;
    expect(ws1.mandatoryFulfilled).toBe(5);
    expect(ws1.mandatoryTotal).toBe(8);
    expect(ws2.score).toBeCloseTo(1.14562, 4);
    expect(result.diagnostics.services["WS1"]?.undefinedAttributes).toContain("ART");
    expect(store.state.resultStale).toBe(false);
  });

  it("prefers live monitor attributes by list order and reports provenance", async () => {
    store.removeRepository(databankPath);
    store.addRepository({ name: "Monitor1", endpoint: monitor1.url, kind: "monitor" });
    store.addRepository({ name: "Monitor2", endpoint: monitor2.url, kind: "monitor" });
    store.addRepository({ name: "DataBank1", endpoint: databankPath, kind: "databank" });
    expect(store.state.resultStale).toBe(true);

    await store.rank();
    const result = lastResult();
    expect(store.state.resultStale).toBe(false);

    // live ART for WS1 leaves the orderings unchanged but fulfills one more
    // mandatory requirement (120 <= 150)
    expect(scoreOrder(result.entries).map((e) => e.serviceId)).toEqual(SCORE_ORDER);
    expect(crossPriorityOrder(result.entries).map((e) => e.serviceId)).toEqual(CROSS_ORDER);
    const ws1 = result.entries.find((e) => e.serviceId === "WS1")!;
    expect(ws1.mandatoryFulfilled).toBe(6);

    const provenance = ws1Provenance(result);
    for (const attribute of ["ART", "CRT", "CA"]) {
      expect(provenance[attribute]).toBe(monitor1.url);
    }
    for (const attribute of STATIC_ATTRIBUTES) {
      expect(provenance[attribute]).toBe(databankPath);
    }
    expect(result.diagnostics.services["WS1"]?.undefinedAttributes).toEqual([]);
    expect(result.diagnostics.repositories.map((r) => r.status)).toEqual(["ok", "ok", "ok"]);
  });

  it("flips contested provenance when the analyst reorders repositories", async () => {
    store.moveRepository(1, 0); // Monitor2 ahead of Monitor1
    expect(store.state.repositories.map((r) => r.name)).toEqual([
      "Monitor2",
      "Monitor1",
      "DataBank1",
    ]);
    expect(store.state.resultStale).toBe(true);

    await store.rank();
    const result = lastResult();
    expect(store.state.resultStale).toBe(false);

    const provenance = ws1Provenance(result);
    expect(provenance["CRT"]).toBe(monitor2.url); // the only attribute both monitors report
    expect(provenance["ART"]).toBe(monitor1.url);
    expect(provenance["CA"]).toBe(monitor1.url);
    for (const attribute of STATIC_ATTRIBUTES) {
      expect(provenance[attribute]).toBe(databankPath);
    }

    // the contested cell only changed source, not the rankings
    expect(scoreOrder(result.entries).map((e) => e.serviceId)).toEqual(SCORE_ORDER);
    expect(crossPriorityOrder(result.entries).map((e) => e.serviceId)).toEqual(CROSS_ORDER);
  });
});
