"""Three-phase selection: normalize, rank, then reorder by mandatory compliance.

Mandatory checks run on RAW values, not normalized ones: all four normalizers
are monotone, so threshold satisfaction is equivalent either way, and raw
evaluation avoids rounding artifacts. The ranking phase deliberately ignores
the minimize/maximize flags; direction only matters for the mandatory counts
applied in the final cross-priority sort.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .federation import FederatedView, RepositoryReport, federate
from .model import (
    Polarity,
    QoSMatrix,
    RankedEntry,
    RepositoryDescriptor,
    RequirementVector,
    ServiceRecord,
)
from .normalize import NormalizerId, normalize
from .rank import RankerId, rank_services


@dataclass(frozen=True)
class SelectionRequest:
    """Everything one ranking run needs: sources, scope, requirements, algorithms."""

    repositories: tuple[RepositoryDescriptor, ...]
    domain: str
    requirements: RequirementVector
    normalizer: NormalizerId
    ranker: RankerId


@dataclass(frozen=True)
class ServiceDiagnostics:
    """Per-service notes: undefined requirement attributes, value provenance, scoring failure."""

    undefined_attributes: tuple[str, ...]
    provenance: Mapping[str, str] = field(default_factory=dict)
    scoring_error: str | None = None


@dataclass(frozen=True)
class SelectionResult:
    entries: tuple[RankedEntry, ...]
    repositories: tuple[RepositoryReport, ...]
    services: Mapping[str, ServiceDiagnostics]


def evaluate_mandatory(record: ServiceRecord, reqs: RequirementVector) -> tuple[int, int]:
    """Count fulfilled mandatory requirements on raw values.

    A minimized attribute fulfills when value <= target, a maximized one when
    value >= target. An undefined value never fulfills.
    """
    fulfilled = 0
    total = 0
    for req in reqs.requirements:
        if not req.mandatory:
            continue
        total += 1
        value = record.value(req.attribute)
        if value is None:
            continue
        if (value >= req.target) if req.maximize else (value <= req.target):
            fulfilled += 1
    return fulfilled, total


def cross_priority_order(
    scored: Sequence[tuple[str, float]],
    failures: Sequence[tuple[str, str]],
    counts: Mapping[str, tuple[int, int]],
    polarity: Polarity,
) -> list[str]:
    """Final ordering: mandatory fulfilled desc, then score by polarity, then serviceId.

    ``scored`` must already be in score order (best first); unscored services
    are appended after every scored one, by ascending serviceId.
    """
    direction = -1.0 if polarity is Polarity.HIGHER_IS_BETTER else 1.0
    ordered = sorted(
        scored,
        key=lambda item: (-counts[item[0]][0], direction * item[1], item[0]),
    )
    return [service_id for service_id, _ in ordered] + sorted(f[0] for f in failures)


def run_selection(request: SelectionRequest, *, timeout: float = 10.0) -> SelectionResult:
    """Execute the full pipeline: federate, normalize, rank, prioritize.

    Raises NoQosSourcesError when every repository fails and
    EmptyRequirementsError on an empty requirement vector. An empty service
    set for the domain is a valid empty result.
    """
    view = federate(request.repositories, request.domain, timeout=timeout)
    return select_from_view(view, request)


def select_from_view(view: FederatedView, request: SelectionRequest) -> SelectionResult:
    """Rank an already-federated view; split out for in-process reuse and tests."""
    matrix = view.matrix
    reqs = request.requirements
    polarity = request.ranker.polarity

    if not matrix.rows:
        return SelectionResult(entries=(), repositories=view.reports, services={})

    matrix_n, reqs_n = normalize(matrix, reqs, request.normalizer)
    scored, failures = rank_services(matrix_n, reqs_n, request.ranker)

    records = {row.service_id: row for row in matrix.rows}
    counts = {sid: evaluate_mandatory(records[sid], reqs) for sid in records}

    score_order = [sid for sid, _ in scored] + sorted(f[0] for f in failures)
    score_ranks = {sid: i + 1 for i, sid in enumerate(score_order)}
    final_order = cross_priority_order(scored, failures, counts, polarity)
    scores = dict(scored)

    entries = tuple(
        RankedEntry(
            service_id=sid,
            display_name=records[sid].display_name,
            score=scores.get(sid),
            polarity=polarity,
            score_rank=score_ranks[sid],
            mandatory_fulfilled=counts[sid][0],
            mandatory_total=counts[sid][1],
            rank=position + 1,
        )
        for position, sid in enumerate(final_order)
    )

    failure_reasons = dict(failures)
    attributes = reqs.attributes()
    services = {
        sid: ServiceDiagnostics(
            undefined_attributes=tuple(
                a for a in attributes if records[sid].value(a) is None
            ),
            provenance=dict(records[sid].provenance),
            scoring_error=failure_reasons.get(sid),
        )
        for sid in sorted(records)
    }
    return SelectionResult(entries=entries, repositories=view.reports, services=services)
