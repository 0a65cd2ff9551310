"""Federate per-domain QoS from an ordered list of repositories.

Two source kinds: a DataBank is a declarative JSON document (local file or
HTTP URL) in which providers state their QoS; a Monitor is an HTTP service
returning measured dynamic attributes via GET <endpoint>/services?domain=<d>.

The merge policy is first-repository-wins: the service set is the union over
all repositories keyed by serviceId, and each (service, attribute) cell takes
its value from the earliest repository in list order that defines it, with
the supplying endpoint recorded as provenance. Repositories that fail to
respond are skipped with a diagnostic; only a total failure is an error.
Fetches run concurrently, the merge itself is a deterministic fold in list
order. No response caching: every federation call fetches fresh.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import requests

from .errors import NoQosSourcesError, RepositoryUnreachableError, WireFormatError
from .model import QoSMatrix, RepositoryDescriptor, RepositoryKind, ServiceRecord

FetchFn = Callable[[RepositoryDescriptor, str], list[ServiceRecord]]


@dataclass(frozen=True)
class DataBankDocument:
    """Parsed DataBank file: services grouped by domain."""

    domains: dict[str, tuple[ServiceRecord, ...]]

    def services_for(self, domain: str) -> list[ServiceRecord]:
        return list(self.domains.get(domain, ()))


@dataclass(frozen=True)
class RepositoryReport:
    """Outcome of consulting one repository during federation."""

    repository: RepositoryDescriptor
    ok: bool
    detail: str | None
    service_count: int


@dataclass(frozen=True)
class FederatedView:
    """Merged matrix with per-cell provenance plus per-repository fetch reports."""

    matrix: QoSMatrix
    reports: tuple[RepositoryReport, ...]


def _parse_entry(entry: object, domain: str, where: str) -> ServiceRecord:
    if not isinstance(entry, dict):
        raise WireFormatError(f"{where}: service entry must be an object")
    service_id = entry.get("serviceId")
    if not isinstance(service_id, str) or not service_id:
        raise WireFormatError(f"{where}: missing or empty serviceId")
    display_name = entry.get("displayName", service_id)
    if not isinstance(display_name, str):
        raise WireFormatError(f"{where}: displayName of {service_id!r} must be a string")
    qos = entry.get("qos", {})
    if not isinstance(qos, dict):
        raise WireFormatError(f"{where}: qos of {service_id!r} must be an object")
    values: dict[str, float] = {}
    for attribute, value in qos.items():
        if not isinstance(attribute, str) or not attribute:
            raise WireFormatError(f"{where}: {service_id!r} has an empty attribute name")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise WireFormatError(
                f"{where}: {service_id!r}.{attribute} must be a number, got {value!r}"
            )
        if value != value or value in (float("inf"), float("-inf")) or value < 0:
            raise WireFormatError(
                f"{where}: {service_id!r}.{attribute} must be a non-negative finite number"
            )
        values[attribute] = float(value)
    return ServiceRecord(
        service_id=service_id, display_name=display_name, domain=domain, values=values
    )


def parse_databank(document: object, *, source: str = "databank") -> DataBankDocument:
    """Parse and validate a DataBank document; unknown fields are ignored.

    Raises WireFormatError on structural problems, negative values, or a
    serviceId listed twice within one domain.
    """
    if not isinstance(document, dict):
        raise WireFormatError(f"{source}: top level must be an object")
    domains_raw = document.get("domains")
    if not isinstance(domains_raw, dict):
        raise WireFormatError(f"{source}: missing \"domains\" object")
    domains: dict[str, tuple[ServiceRecord, ...]] = {}
    for domain, entries in domains_raw.items():
        if not isinstance(entries, list):
            raise WireFormatError(f"{source}: domain {domain!r} must hold a list")
        records = [
            _parse_entry(entry, domain, f"{source}, domain {domain!r}") for entry in entries
        ]
        seen: set[str] = set()
        for record in records:
            if record.service_id in seen:
                raise WireFormatError(
                    f"{source}: domain {domain!r} lists serviceId {record.service_id!r} twice"
                )
            seen.add(record.service_id)
        domains[domain] = tuple(records)
    return DataBankDocument(domains=domains)


def databank_violations(document: object, *, source: str = "databank") -> list[str]:
    """Collect every schema and invariant violation in a DataBank document.

    Unlike parse_databank this does not stop at the first problem; it is the
    backing for the validation command. An empty list means the document
    parses cleanly.
    """
    if not isinstance(document, dict):
        return [f"{source}: top level must be an object"]
    domains_raw = document.get("domains")
    if not isinstance(domains_raw, dict):
        return [f"{source}: missing \"domains\" object"]
    violations: list[str] = []
    for domain, entries in domains_raw.items():
        if not isinstance(entries, list):
            violations.append(f"{source}: domain {domain!r} must hold a list")
            continue
        seen: set[str] = set()
        for i, entry in enumerate(entries):
            where = f"{source}, domain {domain!r}, entry {i}"
            # track the id even when the entry is otherwise invalid, so a
            # duplicate of a broken entry is still reported
            sid = entry.get("serviceId") if isinstance(entry, dict) else None
            if not (isinstance(sid, str) and sid):
                sid = None
            try:
                _parse_entry(entry, domain, where)
            except WireFormatError as exc:
                violations.append(str(exc))
            if sid is not None:
                if sid in seen:
                    violations.append(f"{where}: serviceId {sid!r} listed twice")
                seen.add(sid)
    return violations


def load_databank(path: str | Path) -> DataBankDocument:
    """Read and parse a DataBank JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireFormatError(f"{path}: not valid JSON: {exc}") from exc
    return parse_databank(document, source=str(path))


def _parse_service_list(payload: object, domain: str, where: str) -> list[ServiceRecord]:
    if not isinstance(payload, list):
        raise WireFormatError(f"{where}: expected a list of service entries")
    records = [_parse_entry(entry, domain, where) for entry in payload]
    seen: set[str] = set()
    for record in records:
        if record.service_id in seen:
            raise WireFormatError(f"{where}: serviceId {record.service_id!r} listed twice")
        seen.add(record.service_id)
    return records


def fetch_repository(
    repo: RepositoryDescriptor, domain: str, *, timeout: float = 10.0
) -> list[ServiceRecord]:
    """Fetch every service the repository knows for ``domain``.

    DataBank endpoints may be filesystem paths, file:// URIs, or HTTP URLs
    serving the DataBank document; Monitor endpoints are HTTP services.
    Raises RepositoryUnreachableError when the source cannot be read.
    """
    try:
        if repo.kind is RepositoryKind.MONITOR:
            response = requests.get(
                repo.endpoint.rstrip("/") + "/services",
                params={"domain": domain},
                timeout=timeout,
            )
            response.raise_for_status()
            return _parse_service_list(response.json(), domain, repo.endpoint)
        if repo.endpoint.startswith(("http://", "https://")):
            response = requests.get(repo.endpoint, timeout=timeout)
            response.raise_for_status()
            bank = parse_databank(response.json(), source=repo.endpoint)
        else:
            path = repo.endpoint
            if path.startswith("file://"):
                path = path[len("file://"):]
            bank = load_databank(path)
        return bank.services_for(domain)
    except (requests.RequestException, OSError, ValueError, WireFormatError) as exc:
        raise RepositoryUnreachableError(repo.endpoint, str(exc)) from exc


def merge(
    results: Sequence[tuple[RepositoryDescriptor, Sequence[ServiceRecord]]],
) -> QoSMatrix:
    """Fold fetched records in repository list order under first-wins priority.

    Pure function: the earliest repository defining a (service, attribute)
    cell supplies both the value and the provenance endpoint. Rows come out
    sorted by serviceId; columns in first-seen order.
    """
    columns: list[str] = []
    seen_columns: set[str] = set()
    values: dict[str, dict[str, float]] = {}
    provenance: dict[str, dict[str, str]] = {}
    names: dict[str, tuple[str, str]] = {}

    for repo, records in results:
        for record in records:
            sid = record.service_id
            if sid not in names:
                names[sid] = (record.display_name, record.domain)
                values[sid] = {}
                provenance[sid] = {}
            for attribute, value in record.values.items():
                if value is None:
                    continue
                if attribute not in seen_columns:
                    seen_columns.add(attribute)
                    columns.append(attribute)
                if attribute not in values[sid]:
                    values[sid][attribute] = value
                    provenance[sid][attribute] = repo.endpoint

    rows = tuple(
        ServiceRecord(
            service_id=sid,
            display_name=names[sid][0],
            domain=names[sid][1],
            values=values[sid],
            provenance=provenance[sid],
        )
        for sid in sorted(names)
    )
    return QoSMatrix(columns=tuple(columns), rows=rows)


def federate(
    repositories: Sequence[RepositoryDescriptor],
    domain: str,
    *,
    timeout: float = 10.0,
    fetch: FetchFn | None = None,
) -> FederatedView:
    """Fetch all repositories (concurrently) and merge them in list order.

    Per-repository failures degrade to diagnostics; raises NoQosSourcesError
    only when every repository failed.
    """
    if not repositories:
        raise NoQosSourcesError([])
    fetch_one: FetchFn = fetch or (
        lambda repo, dom: fetch_repository(repo, dom, timeout=timeout)
    )

    def attempt(repo: RepositoryDescriptor):
        try:
            return fetch_one(repo, domain), None
        except RepositoryUnreachableError as exc:
            return None, exc.detail

    with ThreadPoolExecutor(max_workers=len(repositories)) as pool:
        outcomes = list(pool.map(attempt, repositories))

    reports = []
    fetched: list[tuple[RepositoryDescriptor, Sequence[ServiceRecord]]] = []
    for repo, (records, failure) in zip(repositories, outcomes):
        if failure is None:
            fetched.append((repo, records))
            reports.append(
                RepositoryReport(repo, ok=True, detail=None, service_count=len(records))
            )
        else:
            reports.append(
                RepositoryReport(repo, ok=False, detail=failure, service_count=0)
            )
    if not fetched:
        raise NoQosSourcesError([(r.repository.endpoint, r.detail or "") for r in reports])
    return FederatedView(matrix=merge(fetched), reports=tuple(reports))
