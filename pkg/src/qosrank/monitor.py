"""Active endpoint probing and the dynamic QoS attributes derived from it.

Each target is probed with an HTTP GET on its own schedule; a 2xx/3xx
response within the timeout counts as success, anything else (error status,
timeout, connection failure) as a failed sample. Samples land in a sliding
count-based window per target (count-based rather than time-based so tests
stay deterministic), from which three attributes are derived:

  CRT  CurrentResponseTime: latency of the newest successful sample
  ART  AverageResponseTime: mean latency over successful samples in window
  CA   CurrentAvailability: successes / total over the window, in [0,1]

Each is undefined (None) when the window holds no evidence for it. "Current"
deliberately means the most recent SUCCESSFUL sample, since a failed probe
has no latency at all.
"""

from __future__ import annotations

import json
import math
import threading
import time
from collections import deque
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Iterable, Sequence
from urllib.parse import parse_qs, urlsplit

import requests

from .errors import WireFormatError
from .model import QualityValue

ATTR_CRT = "CRT"
ATTR_ART = "ART"
ATTR_CA = "CA"

DEFAULT_WINDOW_SIZE = 50


@dataclass(frozen=True)
class ProbeTarget:
    """One endpoint to watch and how to watch it."""

    service_id: str
    probe_url: str
    domain: str
    period_s: float
    timeout_s: float
    window_size: int = DEFAULT_WINDOW_SIZE

    def __post_init__(self) -> None:
        if self.period_s <= 0:
            raise ValueError(f"{self.service_id}: period must be positive")
        if self.timeout_s <= 0:
            raise ValueError(f"{self.service_id}: timeout must be positive")
        if self.window_size < 1:
            raise ValueError(f"{self.service_id}: window size must be >= 1")


@dataclass(frozen=True)
class ProbeSample:
    """Outcome of one probe. ``latency_ms`` is present exactly on success."""

    timestamp: float
    success: bool
    latency_ms: float | None = None

    def __post_init__(self) -> None:
        if self.success and (self.latency_ms is None or self.latency_ms < 0):
            raise ValueError("successful sample requires a non-negative latency")
        if not self.success and self.latency_ms is not None:
            raise ValueError("failed sample must not carry a latency")


class SlidingWindow:
    """Bounded FIFO of the most recent samples, chronologically ordered.

    Updates are serialized internally; ``snapshot`` hands readers a
    consistent copy without blocking probing.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("window capacity must be >= 1")
        self.capacity = capacity
        self._samples: deque[ProbeSample] = deque(maxlen=capacity)
        self._lock = threading.Lock()

    def record(self, sample: ProbeSample) -> None:
        """Append a sample, evicting the oldest at capacity.

        Rejects samples older than the newest recorded one.
        """
        with self._lock:
            if self._samples and sample.timestamp < self._samples[-1].timestamp:
                raise ValueError(
                    f"out-of-order sample: {sample.timestamp} < {self._samples[-1].timestamp}"
                )
            self._samples.append(sample)

    def snapshot(self) -> tuple[ProbeSample, ...]:
        with self._lock:
            return tuple(self._samples)

    def __len__(self) -> int:
        with self._lock:
            return len(self._samples)


def derive_attributes(samples: Sequence[ProbeSample]) -> dict[str, QualityValue]:
    """Derive CRT/ART/CA from a window snapshot; None marks an underivable attribute."""
    latencies = [s.latency_ms for s in samples if s.success]
    crt = latencies[-1] if latencies else None
    art = math.fsum(latencies) / len(latencies) if latencies else None
    ca = len(latencies) / len(samples) if samples else None
    return {ATTR_CRT: crt, ATTR_ART: art, ATTR_CA: ca}


def probe_once(target: ProbeTarget, *, session: requests.Session | None = None) -> ProbeSample:
    """Issue one HTTP GET against the target and classify the outcome."""
    get = (session or requests).get
    started = time.perf_counter()
    timestamp = time.time()
    try:
        response = get(target.probe_url, timeout=target.timeout_s)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        if response.status_code < 400:
            return ProbeSample(timestamp=timestamp, success=True, latency_ms=elapsed_ms)
        return ProbeSample(timestamp=timestamp, success=False)
    except requests.RequestException:
        return ProbeSample(timestamp=timestamp, success=False)


def load_probe_config(path: str | Path) -> list[ProbeTarget]:
    """Read the probe configuration file: a JSON list of target objects."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise WireFormatError(f"{path}: cannot read probe config: {exc}") from exc
    if not isinstance(payload, list) or not payload:
        raise WireFormatError(f"{path}: probe config must be a non-empty list of targets")
    targets = []
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict):
            raise WireFormatError(f"{path}: target #{i} must be an object")
        try:
            targets.append(
                ProbeTarget(
                    service_id=str(entry["serviceId"]),
                    probe_url=str(entry["probeUrl"]),
                    domain=str(entry["domain"]),
                    period_s=float(entry["periodMs"]) / 1000.0,
                    timeout_s=float(entry["timeoutMs"]) / 1000.0,
                    window_size=int(entry.get("windowSize", DEFAULT_WINDOW_SIZE)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise WireFormatError(f"{path}: target #{i} invalid: {exc}") from exc
    return targets


class MonitorDaemon:
    """Runs one prober thread per target and serves consistent window snapshots."""

    def __init__(self, targets: Iterable[ProbeTarget]):
        self.targets = list(targets)
        self.windows = {t.service_id: SlidingWindow(t.window_size) for t in self.targets}
        self._threads: list[threading.Thread] = []
        self._stop = threading.Event()

    def observe(self, target: ProbeTarget) -> ProbeSample:
        """Probe a target once and record the sample in its window."""
        sample = probe_once(target)
        self.windows[target.service_id].record(sample)
        return sample

    def _run(self, target: ProbeTarget) -> None:
        while not self._stop.is_set():
            self.observe(target)
            self._stop.wait(target.period_s)

    def start(self) -> None:
        self._stop.clear()
        for target in self.targets:
            thread = threading.Thread(
                target=self._run, args=(target,), name=f"probe-{target.service_id}", daemon=True
            )
            self._threads.append(thread)
            thread.start()

    def stop(self) -> None:
        self._stop.set()
        for thread in self._threads:
            thread.join(timeout=5.0)
        self._threads.clear()

    def service_entries(self, domain: str) -> list[dict]:
        """Service entries for the repository contract: dynamic attributes only.

        Underivable attributes are omitted rather than published as null.
        """
        entries = []
        for target in self.targets:
            if target.domain != domain:
                continue
            derived = derive_attributes(self.windows[target.service_id].snapshot())
            entries.append(
                {
                    "serviceId": target.service_id,
                    "displayName": target.service_id,
                    "qos": {k: v for k, v in derived.items() if v is not None},
                }
            )
        return entries


def build_monitor_server(
    daemon: MonitorDaemon, host: str = "127.0.0.1", port: int = 0
) -> ThreadingHTTPServer:
    """HTTP server publishing the daemon under the repository contract.

    GET /services?domain=<d> answers with the daemon's current service
    entries for that domain. Port 0 binds an ephemeral port; the live
    address is on ``server.server_address``. The caller drives the server
    (serve_forever / shutdown) and the daemon lifecycle.
    """

    class Handler(BaseHTTPRequestHandler):
        def do_GET(self) -> None:
            parsed = urlsplit(self.path)
            if parsed.path.rstrip("/") != "/services":
                self._send(404, {"code": "not_found", "message": f"unknown path {parsed.path!r}"})
                return
            domain = parse_qs(parsed.query).get("domain", [""])[0]
            self._send(200, daemon.service_entries(domain))

        def _send(self, status: int, payload: object) -> None:
            body = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, format: str, *args: object) -> None:
            # quiet by default; probing already owns the console
            pass

    server = ThreadingHTTPServer((host, port), Handler)
    server.daemon_threads = True
    return server
