"""Domain model: QoS matrices, stakeholder requirements, repositories, ranking results.

Values are plain non-negative floats with one distinguished extra state:
``None`` encodes an *undefined* measurement. Undefined is not 0 (zero cost is
a real measurement) and not a missing dict key; matrix cells carry it
explicitly so that downstream stages can exclude those coordinates instead of
silently inventing data.

Everything here is an immutable value object; validation is diagnostic
(functions returning violation lists) rather than constructor-enforced, so
callers can report every problem in a document at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

# A measured quality value: non-negative finite float, or None for undefined.
QualityValue = float | None


class RepositoryKind(Enum):
    DATA_BANK = "databank"
    MONITOR = "monitor"


class Polarity(Enum):
    """Whether a ranking score is better when lower (distance) or higher (similarity)."""

    LOWER_IS_BETTER = "lower-is-better"
    HIGHER_IS_BETTER = "higher-is-better"


@dataclass(frozen=True)
class ServiceRecord:
    """One candidate service and the quality values known for it.

    ``provenance`` maps an attribute to the endpoint of the repository that
    supplied its value; only federated records carry it.
    """

    service_id: str
    display_name: str = ""
    domain: str = ""
    values: Mapping[str, QualityValue] = field(default_factory=dict)
    provenance: Mapping[str, str] = field(default_factory=dict)

    def value(self, attribute: str) -> QualityValue:
        """Value for ``attribute``; a missing key reads as undefined."""
        return self.values.get(attribute)


@dataclass(frozen=True)
class QoSMatrix:
    """Services x quality-attributes table; cells may be undefined."""

    columns: tuple[str, ...]
    rows: tuple[ServiceRecord, ...]

    def column(self, attribute: str) -> list[QualityValue]:
        return [row.value(attribute) for row in self.rows]

    def service_ids(self) -> list[str]:
        return [row.service_id for row in self.rows]


@dataclass(frozen=True)
class Requirement:
    """A stakeholder constraint on one quality attribute.

    ``maximize`` is the direction (True: higher is better), ``mandatory``
    marks the target as a hard bound: a minimized attribute may not exceed
    the target, a maximized one may not fall below it.
    """

    attribute: str
    target: float
    maximize: bool
    mandatory: bool


@dataclass(frozen=True)
class RequirementVector:
    requirements: tuple[Requirement, ...]

    def __len__(self) -> int:
        return len(self.requirements)

    def attributes(self) -> list[str]:
        return [r.attribute for r in self.requirements]


@dataclass(frozen=True)
class RepositoryDescriptor:
    """A QoS source. The endpoint string is the identity."""

    name: str
    endpoint: str
    kind: RepositoryKind
    description: str = ""


@dataclass(frozen=True)
class RankedEntry:
    """One row of a selection result.

    ``score_rank`` is the position in the pure score-phase ordering, ``rank``
    the final cross-priority position. ``score`` is None for services that
    could not be scored (e.g. no comparable attributes); those are appended
    after every scored service.
    """

    service_id: str
    display_name: str
    score: float | None
    polarity: Polarity
    score_rank: int
    mandatory_fulfilled: int
    mandatory_total: int
    rank: int


def _check_value(cell: str, value: object, violations: list[str]) -> None:
    if value is None:
        return
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        violations.append(f"{cell}: value {value!r} is not a number")
    elif not math.isfinite(value):
        violations.append(f"{cell}: value {value!r} is not finite")
    elif value < 0:
        violations.append(f"{cell}: negative value {value!r}")


def validate_matrix(matrix: QoSMatrix) -> list[str]:
    """Return every invariant violation in ``matrix`` (empty list iff valid)."""
    violations: list[str] = []
    if not matrix.columns:
        violations.append("matrix has no attribute columns")
    seen_columns: set[str] = set()
    for name in matrix.columns:
        if not name:
            violations.append("empty attribute name in columns")
        elif name in seen_columns:
            violations.append(f"duplicate attribute column {name!r}")
        seen_columns.add(name)

    seen_ids: set[str] = set()
    for row in matrix.rows:
        if not row.service_id:
            violations.append("service with empty serviceId")
        elif row.service_id in seen_ids:
            violations.append(f"duplicate serviceId {row.service_id!r}")
        seen_ids.add(row.service_id)
        for attribute, value in row.values.items():
            if attribute not in seen_columns:
                violations.append(
                    f"service {row.service_id!r}: value for {attribute!r} which is not a column"
                )
            _check_value(f"service {row.service_id!r}, attribute {attribute!r}", value, violations)
        for attribute in row.provenance:
            if attribute not in row.values:
                violations.append(
                    f"service {row.service_id!r}: provenance for {attribute!r} without a value entry"
                )
    return violations


def validate_requirements(reqs: RequirementVector) -> list[str]:
    """Return every invariant violation in ``reqs`` (empty list iff valid)."""
    violations: list[str] = []
    if len(reqs) == 0:
        violations.append("requirement vector is empty")
    seen: set[str] = set()
    for req in reqs.requirements:
        if not req.attribute:
            violations.append("requirement with empty attribute name")
        elif req.attribute in seen:
            violations.append(f"duplicate requirement attribute {req.attribute!r}")
        seen.add(req.attribute)
        _check_value(f"requirement {req.attribute!r}", req.target, violations)
        if req.target is None:
            violations.append(f"requirement {req.attribute!r}: target may not be undefined")
    return violations
