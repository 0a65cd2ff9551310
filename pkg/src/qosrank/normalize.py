"""Column-wise projection of raw QoS values and requirement targets into [0,1].

Four selectable algorithms, applied per attribute column. The statistics pool
for a column (max, min, sum, sum of squares) is the multiset of defined
service values PLUS the requirement target, so a target that dominates every
offer still normalizes to 1.0 under max scaling. Undefined cells never enter
the pool and stay undefined in the output.

Degenerate pools are defined, not errors: an all-zero pool maps every defined
value to 0.0 under MAX/SUM/EUCLIDEAN (no information, no discrimination), and
a constant pool maps everything to 1.0 under MIN_MAX (a non-discriminating
column must contribute zero distance).
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import Sequence

from .errors import EmptyRequirementsError
from .model import QoSMatrix, QualityValue, Requirement, RequirementVector, ServiceRecord


class NormalizerId(IntEnum):
    """The four normalization algorithms, keyed by their selector integer."""

    MAX = 1
    SUM = 2
    MIN_MAX = 3
    EUCLIDEAN = 4


_NORMALIZER_NAMES = {
    NormalizerId.MAX: "max",
    NormalizerId.SUM: "sum",
    NormalizerId.MIN_MAX: "min-max",
    NormalizerId.EUCLIDEAN: "euclidean",
}


def normalizer_name(normalizer: NormalizerId) -> str:
    return _NORMALIZER_NAMES[normalizer]


def parse_normalizer(value: int | str) -> NormalizerId:
    """Accept the selector integer (1-4) or the mnemonic name."""
    if isinstance(value, bool):
        raise ValueError(f"not a normalizer id: {value!r}")
    if isinstance(value, int):
        try:
            return NormalizerId(value)
        except ValueError:
            raise ValueError(f"unknown normalizer id {value}; expected 1-4") from None
    name = str(value).strip().lower().replace("_", "-")
    if name.isdigit():
        return parse_normalizer(int(name))
    for normalizer, known in _NORMALIZER_NAMES.items():
        if name == known or name == known.replace("-", ""):
            return normalizer
    raise ValueError(f"unknown normalizer {value!r}; expected one of "
                     + ", ".join(_NORMALIZER_NAMES.values()) + " or 1-4")


def normalize_column(
    values: Sequence[QualityValue],
    target: float,
    normalizer: NormalizerId,
) -> tuple[list[QualityValue], float]:
    """Normalize one attribute column and its requirement target together.

    Returns (normalized values, normalized target). Undefined inputs map to
    undefined outputs. Raises ValueError on negative input.
    """
    defined = [v for v in values if v is not None]
    for v in defined + [target]:
        if v < 0:
            raise ValueError(f"negative quality value {v!r} cannot be normalized")
    pool = defined + [target]

    scale = _column_scaler(pool, normalizer)
    return [None if v is None else scale(v) for v in values], scale(target)


def _column_scaler(pool: list[float], normalizer: NormalizerId):
    if normalizer is NormalizerId.MAX:
        top = max(pool)
        if top == 0:
            return lambda v: 0.0
        return lambda v: v / top
    if normalizer is NormalizerId.SUM:
        total = math.fsum(pool)
        if total == 0:
            return lambda v: 0.0
        return lambda v: v / total
    if normalizer is NormalizerId.MIN_MAX:
        low, high = min(pool), max(pool)
        if high == low:
            return lambda v: 1.0
        return lambda v: (v - low) / (high - low)
    if normalizer is NormalizerId.EUCLIDEAN:
        norm = math.sqrt(math.fsum(v * v for v in pool))
        if norm == 0:
            return lambda v: 0.0
        return lambda v: v / norm
    raise ValueError(f"unknown normalizer {normalizer!r}")


def normalize(
    matrix: QoSMatrix,
    reqs: RequirementVector,
    normalizer: NormalizerId,
) -> tuple[QoSMatrix, RequirementVector]:
    """Normalize a matrix and requirement vector column by column.

    Output columns follow requirement order; matrix columns without a
    requirement are dropped. A requirement attribute missing from the matrix
    behaves as an all-undefined column: the services stay undefined and the
    target is normalized against a pool containing only itself.
    """
    if len(reqs) == 0:
        raise EmptyRequirementsError("nothing to normalize")

    normalized_targets: list[float] = []
    normalized_columns: list[list[QualityValue]] = []
    for req in reqs.requirements:
        column = matrix.column(req.attribute)
        norm_values, norm_target = normalize_column(column, req.target, normalizer)
        normalized_columns.append(norm_values)
        normalized_targets.append(norm_target)

    attributes = reqs.attributes()
    rows = tuple(
        ServiceRecord(
            service_id=row.service_id,
            display_name=row.display_name,
            domain=row.domain,
            values={
                attribute: normalized_columns[j][i] for j, attribute in enumerate(attributes)
            },
            provenance={a: e for a, e in row.provenance.items() if a in set(attributes)},
        )
        for i, row in enumerate(matrix.rows)
    )
    normalized_reqs = RequirementVector(
        tuple(
            Requirement(
                attribute=req.attribute,
                target=normalized_targets[j],
                maximize=req.maximize,
                mandatory=req.mandatory,
            )
            for j, req in enumerate(reqs.requirements)
        )
    )
    return QoSMatrix(columns=tuple(attributes), rows=rows), normalized_reqs
