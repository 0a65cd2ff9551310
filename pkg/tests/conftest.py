"""Shared test scaffolding: bundled fixture paths and local stub HTTP servers."""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

import pytest

from qosrank.fixtures import weather_databank_path, weather_requirements_path

# Dynamic attributes the two stub monitors publish for AirportWeatherCheck.
# Monitor1 knows all three; Monitor2 knows only the current response time.
MONITOR1_WS1_QOS = {"ART": 120.0, "CRT": 95.0, "CA": 0.98}
MONITOR2_WS1_QOS = {"CRT": 110.0}


@pytest.fixture
def databank_path():
    return str(weather_databank_path())


@pytest.fixture
def requirements_path():
    return str(weather_requirements_path())


@pytest.fixture
def weather_requirements_payload(requirements_path):
    return json.loads(open(requirements_path, encoding="utf-8").read())


@pytest.fixture
def serve_http():
    """Factory for stub HTTP servers.

    Takes respond(path, query) -> (status, payload) and returns the base URL.
    Servers run on ephemeral ports and are shut down at teardown.
    """
    servers: list[ThreadingHTTPServer] = []

    def start(respond) -> str:
        class Handler(BaseHTTPRequestHandler):
            def do_GET(self) -> None:
                parsed = urlsplit(self.path)
                query = {k: v[0] for k, v in parse_qs(parsed.query).items()}
                status, payload = respond(parsed.path, query)
                body = json.dumps(payload).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, format: str, *args: object) -> None:
                pass

        server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        server.daemon_threads = True
        threading.Thread(target=server.serve_forever, daemon=True).start()
        servers.append(server)
        return f"http://127.0.0.1:{server.server_address[1]}"

    yield start
    for server in servers:
        server.shutdown()


def _monitor_respond(weather_entries):
    def respond(path, query):
        if path != "/services":
            return 404, {"code": "not_found"}
        if query.get("domain") == "weather":
            return 200, weather_entries
        return 200, []

    return respond


@pytest.fixture
def monitor1_url(serve_http) -> str:
    """Monitor repository knowing ART, CRT and CA for AirportWeatherCheck."""
    return serve_http(
        _monitor_respond(
            [
                {
                    "serviceId": "WS1",
                    "displayName": "AirportWeatherCheck",
                    "qos": dict(MONITOR1_WS1_QOS),
                }
            ]
        )
    )


@pytest.fixture
def monitor2_url(serve_http) -> str:
    """Monitor repository knowing only CRT for AirportWeatherCheck."""
    return serve_http(
        _monitor_respond(
            [
                {
                    "serviceId": "WS1",
                    "displayName": "AirportWeatherCheck",
                    "qos": dict(MONITOR2_WS1_QOS),
                }
            ]
        )
    )


@pytest.fixture
def failing_url(serve_http) -> str:
    """A repository endpoint that answers 500 to everything."""
    return serve_http(lambda path, query: (500, {"error": "scripted outage"}))


@pytest.fixture
def scripted_probe_url(serve_http):
    """Factory: a probe target whose responses follow a script.

    Each script item is a latency in milliseconds (respond 200 after that
    delay) or None (respond 500). After the script runs out the last item
    repeats.
    """

    def start(script: list) -> str:
        state = {"i": 0}
        lock = threading.Lock()

        def respond(path, query):
            with lock:
                item = script[min(state["i"], len(script) - 1)]
                state["i"] += 1
            if item is None:
                return 500, {"error": "scripted failure"}
            time.sleep(item / 1000.0)
            return 200, {"ok": True}

        return serve_http(respond)

    return start
