"""Canonical JSON wire formats.

Everything the HTTP API and the CLI emit for machines goes through
``canonical_json`` so the two surfaces produce byte-identical documents for
identical inputs. Matrix snapshots serialize every declared column
explicitly, with null for undefined cells; parsing accepts a missing key as
undefined and canonicalizes it back to an explicit null on the next write.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import WireFormatError
from .model import (
    QoSMatrix,
    RankedEntry,
    Requirement,
    RepositoryDescriptor,
    RepositoryKind,
    RequirementVector,
    ServiceRecord,
)
from .normalize import NormalizerId, normalizer_name, parse_normalizer
from .pipeline import SelectionRequest, SelectionResult
from .rank import RankerId, parse_ranker, ranker_name


def canonical_json(payload: Any) -> str:
    """The one serialization: two-space indent, insertion order, trailing newline."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


# --- matrices ---------------------------------------------------------------

def matrix_to_payload(matrix: QoSMatrix) -> dict:
    return {
        "columns": list(matrix.columns),
        "services": [
            {
                "serviceId": row.service_id,
                "displayName": row.display_name,
                "domain": row.domain,
                "values": {attribute: row.value(attribute) for attribute in matrix.columns},
                "provenance": dict(row.provenance),
            }
            for row in matrix.rows
        ],
    }


def matrix_from_payload(payload: object) -> QoSMatrix:
    if not isinstance(payload, dict):
        raise WireFormatError("matrix: expected an object")
    columns = payload.get("columns")
    if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
        raise WireFormatError("matrix: \"columns\" must be a list of strings")
    services = payload.get("services")
    if not isinstance(services, list):
        raise WireFormatError("matrix: \"services\" must be a list")
    rows = []
    for entry in services:
        if not isinstance(entry, dict) or not isinstance(entry.get("serviceId"), str):
            raise WireFormatError("matrix: each service needs a string serviceId")
        raw_values = entry.get("values", {})
        if not isinstance(raw_values, dict):
            raise WireFormatError(f"matrix: values of {entry['serviceId']!r} must be an object")
        values: dict[str, float | None] = {}
        for column in columns:
            value = raw_values.get(column)
            if value is None:
                values[column] = None
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise WireFormatError(
                    f"matrix: {entry['serviceId']!r}.{column} must be a number or null"
                )
            else:
                values[column] = float(value)
        provenance = entry.get("provenance", {})
        if not isinstance(provenance, dict):
            raise WireFormatError(f"matrix: provenance of {entry['serviceId']!r} must be an object")
        rows.append(
            ServiceRecord(
                service_id=entry["serviceId"],
                display_name=str(entry.get("displayName", entry["serviceId"])),
                domain=str(entry.get("domain", "")),
                values=values,
                provenance={str(k): str(v) for k, v in provenance.items() if k in values},
            )
        )
    return QoSMatrix(columns=tuple(columns), rows=tuple(rows))


# --- requirements ------------------------------------------------------------

def requirements_to_payload(reqs: RequirementVector) -> list[dict]:
    return [
        {
            "attribute": r.attribute,
            "target": r.target,
            "maximize": r.maximize,
            "mandatory": r.mandatory,
        }
        for r in reqs.requirements
    ]


def requirements_from_payload(payload: object) -> RequirementVector:
    if not isinstance(payload, list):
        raise WireFormatError("requirements: expected a list")
    requirements = []
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict):
            raise WireFormatError(f"requirements[{i}]: expected an object")
        attribute = entry.get("attribute")
        target = entry.get("target")
        if not isinstance(attribute, str) or not attribute:
            raise WireFormatError(f"requirements[{i}]: missing attribute name")
        if isinstance(target, bool) or not isinstance(target, (int, float)):
            raise WireFormatError(f"requirements[{i}] ({attribute}): target must be a number")
        requirements.append(
            Requirement(
                attribute=attribute,
                target=float(target),
                maximize=bool(entry.get("maximize", False)),
                mandatory=bool(entry.get("mandatory", False)),
            )
        )
    return RequirementVector(tuple(requirements))


# --- repositories and requests ----------------------------------------------

def repository_to_payload(repo: RepositoryDescriptor) -> dict:
    return {
        "name": repo.name,
        "endpoint": repo.endpoint,
        "kind": repo.kind.value,
        "description": repo.description,
    }


def repository_from_payload(payload: object, where: str = "repository") -> RepositoryDescriptor:
    if not isinstance(payload, dict):
        raise WireFormatError(f"{where}: expected an object")
    endpoint = payload.get("endpoint")
    if not isinstance(endpoint, str) or not endpoint:
        raise WireFormatError(f"{where}: missing endpoint")
    kind_raw = payload.get("kind")
    if not isinstance(kind_raw, str):
        raise WireFormatError(f"{where}: missing kind (databank or monitor)")
    try:
        kind = RepositoryKind(kind_raw.strip().lower())
    except ValueError:
        raise WireFormatError(f"{where}: unknown kind {kind_raw!r}") from None
    return RepositoryDescriptor(
        name=str(payload.get("name", endpoint)),
        endpoint=endpoint,
        kind=kind,
        description=str(payload.get("description", "")),
    )


def selection_request_from_payload(payload: object) -> SelectionRequest:
    if not isinstance(payload, dict):
        raise WireFormatError("request body must be a JSON object")
    repos_raw = payload.get("repositories")
    if not isinstance(repos_raw, list) or not repos_raw:
        raise WireFormatError("request: \"repositories\" must be a non-empty list")
    seen_endpoints: set[str] = set()
    repositories = []
    for i, entry in enumerate(repos_raw):
        repo = repository_from_payload(entry, where=f"repositories[{i}]")
        if repo.endpoint in seen_endpoints:
            raise WireFormatError(f"repositories[{i}]: duplicate endpoint {repo.endpoint!r}")
        seen_endpoints.add(repo.endpoint)
        repositories.append(repo)
    domain = payload.get("domain")
    if not isinstance(domain, str) or not domain:
        raise WireFormatError("request: \"domain\" must be a non-empty string")
    requirements = requirements_from_payload(payload.get("requirements"))
    if len(requirements) == 0:
        raise WireFormatError("request: \"requirements\" must be non-empty")
    for field in ("normalizer", "ranker"):
        if payload.get(field) is None:
            raise WireFormatError(f"request: \"{field}\" is required")
    try:
        normalizer = parse_normalizer(payload["normalizer"])
        ranker = parse_ranker(payload["ranker"])
    except ValueError as exc:
        raise WireFormatError(str(exc)) from None
    return SelectionRequest(
        repositories=tuple(repositories),
        domain=domain,
        requirements=requirements,
        normalizer=normalizer,
        ranker=ranker,
    )


def selection_request_to_payload(request: SelectionRequest) -> dict:
    return {
        "repositories": [repository_to_payload(r) for r in request.repositories],
        "domain": request.domain,
        "requirements": requirements_to_payload(request.requirements),
        "normalizer": normalizer_name(request.normalizer),
        "ranker": ranker_name(request.ranker),
    }


# --- results -----------------------------------------------------------------

def _entry_to_payload(entry: RankedEntry) -> dict:
    return {
        "serviceId": entry.service_id,
        "displayName": entry.display_name,
        "score": entry.score,
        "polarity": entry.polarity.value,
        "scoreRank": entry.score_rank,
        "mandatoryFulfilled": entry.mandatory_fulfilled,
        "mandatoryTotal": entry.mandatory_total,
        "rank": entry.rank,
    }


def selection_result_to_payload(request: SelectionRequest, result: SelectionResult) -> dict:
    return {
        "domain": request.domain,
        "normalizer": normalizer_name(request.normalizer),
        "ranker": ranker_name(request.ranker),
        "entries": [_entry_to_payload(e) for e in result.entries],
        "diagnostics": {
            "repositories": [
                {
                    "name": report.repository.name,
                    "endpoint": report.repository.endpoint,
                    "kind": report.repository.kind.value,
                    "status": "ok" if report.ok else "error",
                    "detail": report.detail,
                    "serviceCount": report.service_count,
                }
                for report in result.repositories
            ],
            "services": {
                service_id: {
                    "undefinedAttributes": list(diag.undefined_attributes),
                    "provenance": dict(diag.provenance),
                    "scoringError": diag.scoring_error,
                }
                for service_id, diag in result.services.items()
            },
        },
    }


def algorithm_catalog_payload() -> dict:
    """Static catalog of the shipped normalizers and rankers."""
    return {
        "normalizers": [
            {"id": int(n), "name": normalizer_name(n)} for n in NormalizerId
        ],
        "rankers": [
            {"id": int(r), "name": ranker_name(r), "polarity": r.polarity.value}
            for r in RankerId
        ],
    }
