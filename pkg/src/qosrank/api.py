"""HTTP facade over federation, normalization, and ranking.

Request and response bodies are plain JSON documents rendered through
``wire.canonical_json``, so a ranking fetched over HTTP is byte-identical to
the CLI's machine-readable output for the same inputs. Bodies are parsed by
hand instead of through pydantic models; the wire module owns validation and
the error taxonomy stays small: 400 bad input, 404 unknown repository,
502 upstream failure.

Run directly (``python -m qosrank.api``) it binds the address from
QOSRANK_HOST / QOSRANK_PORT and pre-registers repositories from the JSON file
named by QOSRANK_REPOSITORIES, if set.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from starlette.concurrency import run_in_threadpool

from .errors import (
    EmptyRequirementsError,
    NoQosSourcesError,
    RepositoryUnreachableError,
    WireFormatError,
)
from .federation import fetch_repository
from .model import RepositoryDescriptor, RepositoryKind
from .normalize import normalize, normalizer_name, parse_normalizer
from .pipeline import run_selection
from .wire import (
    algorithm_catalog_payload,
    canonical_json,
    matrix_from_payload,
    matrix_to_payload,
    repository_from_payload,
    requirements_from_payload,
    requirements_to_payload,
    selection_request_from_payload,
    selection_result_to_payload,
)


def _json_response(payload: object, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(
    status_code: int,
    code: str,
    message: str,
    per_repository_details: list | None = None,
) -> Response:
    body: dict = {"code": code, "message": message}
    if per_repository_details is not None:
        body["perRepositoryDetails"] = per_repository_details
    return _json_response(body, status_code)


def load_repositories_config(path: str | Path) -> list[RepositoryDescriptor]:
    """Read a JSON list of repository descriptors for pre-registration."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise WireFormatError(f"{path}: cannot read repository config: {exc}") from exc
    if not isinstance(payload, list):
        raise WireFormatError(f"{path}: repository config must be a JSON list")
    return [
        repository_from_payload(entry, where=f"{path}[{i}]")
        for i, entry in enumerate(payload)
    ]


def create_app(
    repositories: Sequence[RepositoryDescriptor] = (),
    *,
    fetch_timeout: float = 10.0,
) -> FastAPI:
    """Build the application, optionally pre-registering repositories by endpoint."""
    registered = {repo.endpoint: repo for repo in repositories}
    app = FastAPI(title="qosrank", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError) -> Response:
        message = "; ".join(
            ".".join(str(part) for part in err.get("loc", ())) + ": " + err.get("msg", "invalid")
            for err in exc.errors()
        )
        return _error(400, "invalid_request", message or "invalid request")

    async def _read_json(request: Request) -> object:
        try:
            return await request.json()
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise WireFormatError("request body is not valid JSON") from None

    @app.post("/rank")
    async def rank(request: Request) -> Response:
        try:
            selection = selection_request_from_payload(await _read_json(request))
        except WireFormatError as exc:
            return _error(400, "invalid_request", str(exc))
        try:
            result = await run_in_threadpool(
                run_selection, selection, timeout=fetch_timeout
            )
        except NoQosSourcesError as exc:
            return _error(
                502,
                "no_qos_sources",
                str(exc),
                per_repository_details=[
                    {"endpoint": endpoint, "detail": detail}
                    for endpoint, detail in exc.failures
                ],
            )
        except EmptyRequirementsError as exc:
            return _error(400, "empty_requirements", str(exc))
        return _json_response(selection_result_to_payload(selection, result))

    @app.post("/normalize")
    async def normalize_matrix(request: Request) -> Response:
        try:
            payload = await _read_json(request)
            if not isinstance(payload, dict):
                raise WireFormatError("request body must be a JSON object")
            matrix = matrix_from_payload(payload.get("matrix"))
            requirements = requirements_from_payload(payload.get("requirements"))
            if payload.get("normalizer") is None:
                raise WireFormatError("request: \"normalizer\" is required")
            normalizer = parse_normalizer(payload["normalizer"])
        except (WireFormatError, ValueError) as exc:
            return _error(400, "invalid_request", str(exc))
        try:
            normalized_matrix, normalized_requirements = normalize(
                matrix, requirements, normalizer
            )
        except EmptyRequirementsError as exc:
            return _error(400, "empty_requirements", str(exc))
        except ValueError as exc:
            return _error(400, "invalid_values", str(exc))
        return _json_response(
            {
                "matrix": matrix_to_payload(normalized_matrix),
                "requirements": requirements_to_payload(normalized_requirements),
                "normalizer": normalizer_name(normalizer),
            }
        )

    @app.get("/repositories/services")
    async def repository_services(
        endpoint: str, domain: str, kind: str | None = None
    ) -> Response:
        repo = registered.get(endpoint)
        if repo is None:
            if kind is None:
                return _error(
                    404, "unknown_endpoint", f"endpoint {endpoint!r} is not registered"
                )
            try:
                repo = RepositoryDescriptor(
                    name=endpoint,
                    endpoint=endpoint,
                    kind=RepositoryKind(kind.strip().lower()),
                )
            except ValueError:
                return _error(400, "invalid_request", f"unknown repository kind {kind!r}")
        try:
            records = await run_in_threadpool(
                fetch_repository, repo, domain, timeout=fetch_timeout
            )
        except RepositoryUnreachableError as exc:
            return _error(502, "repository_unreachable", str(exc))
        return _json_response(
            [
                {
                    "serviceId": record.service_id,
                    "displayName": record.display_name,
                    "qos": {
                        attribute: value
                        for attribute, value in record.values.items()
                        if value is not None
                    },
                }
                for record in records
            ]
        )

    @app.get("/algorithms")
    async def algorithms() -> Response:
        return _json_response(algorithm_catalog_payload())

    return app


def main() -> None:
    import uvicorn

    repositories: list[RepositoryDescriptor] = []
    config_path = os.environ.get("QOSRANK_REPOSITORIES")
    if config_path:
        repositories = load_repositories_config(config_path)
    uvicorn.run(
        create_app(repositories),
        host=os.environ.get("QOSRANK_HOST", "127.0.0.1"),
        port=int(os.environ.get("QOSRANK_PORT", "8000")),
        log_level="warning",
    )


if __name__ == "__main__":
    main()
