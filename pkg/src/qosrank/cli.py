"""Command-line front door: rank, normalize, validate DataBank files, monitor.

Machine-readable output (``rank --json``, ``normalize``) goes through the
same canonical serializer as the HTTP API, so scripted pipelines see
byte-identical documents either way. Exit codes are stable: 2 for anything
that fails to parse (files, options), 3 when every repository is
unreachable, 4 for an empty requirement set.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import NoReturn

import click

from .errors import EmptyRequirementsError, NoQosSourcesError, WireFormatError
from .federation import databank_violations, parse_databank
from .model import RepositoryDescriptor, RepositoryKind
from .monitor import (
    MonitorDaemon,
    build_monitor_server,
    derive_attributes,
    load_probe_config,
)
from .normalize import normalize as normalize_pair
from .normalize import normalizer_name, parse_normalizer
from .pipeline import SelectionRequest, run_selection
from .rank import parse_ranker
from .wire import (
    canonical_json,
    matrix_from_payload,
    matrix_to_payload,
    requirements_from_payload,
    requirements_to_payload,
    selection_result_to_payload,
)

EXIT_PARSE = 2
EXIT_UNREACHABLE = 3
EXIT_EMPTY_REQUIREMENTS = 4


def _fail(code: int, message: str) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _normalizer_callback(ctx: click.Context, param: click.Parameter, value: str):
    try:
        return parse_normalizer(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _ranker_callback(ctx: click.Context, param: click.Parameter, value: str):
    try:
        return parse_ranker(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _repository_from_spec(spec: str) -> RepositoryDescriptor:
    """Turn a [kind:]target CLI argument into a repository descriptor.

    Without an explicit databank:/monitor: prefix, http(s) targets are taken
    as Monitor services and everything else as a DataBank file.
    """
    kind: RepositoryKind | None = None
    target = spec
    lowered = spec.lower()
    if lowered.startswith("databank:"):
        kind, target = RepositoryKind.DATA_BANK, spec[len("databank:"):]
    elif lowered.startswith("monitor:"):
        kind, target = RepositoryKind.MONITOR, spec[len("monitor:"):]
    if not target:
        raise click.BadParameter(f"empty repository target in {spec!r}", param_hint="--repos")
    if kind is None:
        is_http = target.lower().startswith(("http://", "https://"))
        kind = RepositoryKind.MONITOR if is_http else RepositoryKind.DATA_BANK
    return RepositoryDescriptor(name=target, endpoint=target, kind=kind)


def _load_requirements(path: str):
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"cannot read requirements: {exc}")
    try:
        return requirements_from_payload(payload)
    except WireFormatError as exc:
        _fail(EXIT_PARSE, str(exc))


@click.group()
def main() -> None:
    """Rank services by quality of service against stakeholder requirements."""


@main.command()
@click.option(
    "--repos",
    "repo_specs",
    multiple=True,
    required=True,
    metavar="[KIND:]TARGET",
    help="QoS source, in priority order (repeatable). A DataBank file/URL or a "
    "Monitor base URL; prefix databank: or monitor: to override the inference "
    "(http(s) implies monitor, paths imply databank).",
)
@click.option("--domain", required=True, help="Service domain to rank.")
@click.option(
    "--requirements",
    "requirements_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON file: list of {attribute, target, maximize, mandatory}.",
)
@click.option(
    "--normalizer",
    required=True,
    callback=_normalizer_callback,
    metavar="1-4|NAME",
    help="Normalization algorithm: 1-4 or max|sum|min-max|euclidean.",
)
@click.option(
    "--ranker",
    required=True,
    callback=_ranker_callback,
    metavar="1-6|NAME",
    help="Ranking algorithm: 1-6 or cosine|jaccard|overlap|euclidean|dice|inverse-euclidean.",
)
@click.option("--json", "as_json", is_flag=True, help="Print the canonical JSON document.")
@click.option("--table", "as_table", is_flag=True, help="Print a table (default).")
@click.option(
    "--timeout",
    type=click.FloatRange(min=0, min_open=True),
    default=10.0,
    show_default=True,
    help="Per-repository fetch timeout in seconds.",
)
def rank(repo_specs, domain, requirements_path, normalizer, ranker, as_json, as_table, timeout):
    """Rank a domain's services against a requirement file."""
    if as_json and as_table:
        raise click.UsageError("--json and --table are mutually exclusive")
    repositories = []
    seen = set()
    for spec in repo_specs:
        repo = _repository_from_spec(spec)
        if repo.endpoint in seen:
            raise click.BadParameter(
                f"duplicate repository endpoint {repo.endpoint!r}", param_hint="--repos"
            )
        seen.add(repo.endpoint)
        repositories.append(repo)
    requirements = _load_requirements(requirements_path)
    if len(requirements) == 0:
        _fail(EXIT_EMPTY_REQUIREMENTS, "requirement set is empty")

    request = SelectionRequest(
        repositories=tuple(repositories),
        domain=domain,
        requirements=requirements,
        normalizer=normalizer,
        ranker=ranker,
    )
    try:
        result = run_selection(request, timeout=timeout)
    except NoQosSourcesError as exc:
        for endpoint, detail in exc.failures:
            click.echo(f"  {endpoint}: {detail}", err=True)
        _fail(EXIT_UNREACHABLE, str(exc))
    except EmptyRequirementsError as exc:
        _fail(EXIT_EMPTY_REQUIREMENTS, str(exc))

    if as_json:
        click.echo(canonical_json(selection_result_to_payload(request, result)), nl=False)
        return
    if not result.entries:
        click.echo(f"no services found for domain {domain!r}")
        return
    click.echo(_render_table(result.entries))


def _render_table(entries) -> str:
    headers = ("service", "name", "score", "by-qos", "mandatory", "rank")
    rows = [
        (
            entry.service_id,
            entry.display_name,
            "-" if entry.score is None else f"{entry.score:.5f}",
            str(entry.score_rank),
            f"{entry.mandatory_fulfilled}/{entry.mandatory_total}",
            str(entry.rank),
        )
        for entry in entries
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


@main.command("normalize")
@click.option(
    "--matrix",
    "matrix_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON matrix document: {\"columns\": [...], \"services\": [...]}.",
)
@click.option(
    "--requirements",
    "requirements_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON file: list of {attribute, target, maximize, mandatory}.",
)
@click.option(
    "--normalizer",
    required=True,
    callback=_normalizer_callback,
    metavar="1-4|NAME",
    help="Normalization algorithm: 1-4 or max|sum|min-max|euclidean.",
)
def normalize_command(matrix_path, requirements_path, normalizer):
    """Normalize a QoS matrix and requirement targets into [0,1]."""
    try:
        matrix_payload = json.loads(Path(matrix_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"cannot read matrix: {exc}")
    try:
        matrix = matrix_from_payload(matrix_payload)
    except WireFormatError as exc:
        _fail(EXIT_PARSE, str(exc))
    requirements = _load_requirements(requirements_path)
    try:
        normalized_matrix, normalized_requirements = normalize_pair(
            matrix, requirements, normalizer
        )
    except EmptyRequirementsError as exc:
        _fail(EXIT_EMPTY_REQUIREMENTS, str(exc))
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))
    click.echo(
        canonical_json(
            {
                "matrix": matrix_to_payload(normalized_matrix),
                "requirements": requirements_to_payload(normalized_requirements),
                "normalizer": normalizer_name(normalizer),
            }
        ),
        nl=False,
    )


@main.group()
def databank() -> None:
    """DataBank file utilities."""


@databank.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def validate(file: str) -> None:
    """Check a DataBank file against its schema and invariants."""
    try:
        document = json.loads(Path(file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_PARSE, f"{file}: not valid JSON: {exc}")
    violations = databank_violations(document, source=file)
    if violations:
        for violation in violations:
            click.echo(violation)
        _fail(EXIT_PARSE, f"{len(violations)} violation(s) in {file}")
    parsed = parse_databank(document, source=file)
    services = sum(len(records) for records in parsed.domains.values())
    click.echo(f"ok: {len(parsed.domains)} domain(s), {services} service(s)")


@main.command()
@click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON list of probe targets: {serviceId, probeUrl, domain, periodMs, timeoutMs, windowSize}.",
)
@click.option(
    "--serve",
    "serve_address",
    default=None,
    metavar="HOST:PORT",
    help="Serve the repository contract (GET /services?domain=...) instead of streaming.",
)
@click.option(
    "--cycles",
    type=click.IntRange(min=0),
    default=0,
    help="Streaming mode: probe cycles before exiting (0 = until interrupted).",
)
def monitor(config_path, serve_address, cycles):
    """Probe configured endpoints and publish CRT, ART, and CA.

    Without --serve, probes every target once per cycle and prints one JSON
    line per target and cycle with the attributes derived so far.
    """
    try:
        targets = load_probe_config(config_path)
    except WireFormatError as exc:
        _fail(EXIT_PARSE, str(exc))
    if not targets:
        _fail(EXIT_PARSE, f"{config_path}: no probe targets configured")
    daemon = MonitorDaemon(targets)
    if serve_address is not None:
        host, port = _parse_address(serve_address)
        try:
            server = build_monitor_server(daemon, host, port)
        except OSError as exc:
            _fail(1, f"cannot bind {serve_address}: {exc}")
        daemon.start()
        bound_host, bound_port = server.server_address[:2]
        click.echo(f"monitor repository on http://{bound_host}:{bound_port}/services", err=True)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.shutdown()
            daemon.stop()
        return
    _stream_samples(daemon, cycles)


def _parse_address(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not port.isdigit():
        raise click.BadParameter("expected HOST:PORT", param_hint="--serve")
    return host or "127.0.0.1", int(port)


def _stream_samples(daemon: MonitorDaemon, cycles: int) -> None:
    # shortest configured period paces the whole cycle
    period = min(target.period_s for target in daemon.targets)
    completed = 0
    while True:
        for target in daemon.targets:
            daemon.observe(target)
            derived = derive_attributes(daemon.windows[target.service_id].snapshot())
            click.echo(
                json.dumps(
                    {
                        "serviceId": target.service_id,
                        "domain": target.domain,
                        "qos": {k: v for k, v in derived.items() if v is not None},
                    }
                )
            )
        completed += 1
        if cycles and completed >= cycles:
            return
        time.sleep(period)


if __name__ == "__main__":
    main()
