"""Vector-space scoring of normalized service vectors against the requirement vector.

Six selectable algorithms. The similarity coefficients are implemented with
plain coordinate sums in their denominators (sum of a_i, not sum of a_i^2);
that is the published form this engine ships, even where textbook variants
differ, so scores stay reproducible against the reference tables.

Undefined coordinates are handled by pairwise deletion: any index where either
vector is undefined is removed from both vectors before the formula is
applied. Deleting everything is an error; a zero similarity denominator
(both surviving vectors all zero) scores 0.0, the neutral "no affinity" value.
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import Sequence

from .errors import NoComparableAttributesError
from .model import Polarity, QoSMatrix, QualityValue, RequirementVector


class RankerId(IntEnum):
    """The six ranking algorithms, keyed by their selector integer."""

    COSINE = 1
    JACCARD = 2
    OVERLAP = 3
    EUCLIDEAN = 4
    DICE = 5
    INVERSE_EUCLIDEAN = 6

    @property
    def polarity(self) -> Polarity:
        if self is RankerId.EUCLIDEAN:
            return Polarity.LOWER_IS_BETTER
        return Polarity.HIGHER_IS_BETTER


_RANKER_NAMES = {
    RankerId.COSINE: "cosine",
    RankerId.JACCARD: "jaccard",
    RankerId.OVERLAP: "overlap",
    RankerId.EUCLIDEAN: "euclidean",
    RankerId.DICE: "dice",
    RankerId.INVERSE_EUCLIDEAN: "inverse-euclidean",
}


def ranker_name(ranker: RankerId) -> str:
    return _RANKER_NAMES[ranker]


def parse_ranker(value: int | str) -> RankerId:
    """Accept the selector integer (1-6) or the mnemonic name."""
    if isinstance(value, bool):
        raise ValueError(f"not a ranker id: {value!r}")
    if isinstance(value, int):
        try:
            return RankerId(value)
        except ValueError:
            raise ValueError(f"unknown ranker id {value}; expected 1-6") from None
    name = str(value).strip().lower().replace("_", "-")
    if name.isdigit():
        return parse_ranker(int(name))
    for ranker, known in _RANKER_NAMES.items():
        if name == known or name == known.replace("-", ""):
            return ranker
    raise ValueError(f"unknown ranker {value!r}; expected one of "
                     + ", ".join(_RANKER_NAMES.values()) + " or 1-6")


def score(
    a: Sequence[QualityValue],
    b: Sequence[QualityValue],
    ranker: RankerId,
) -> float:
    """Score two equal-length vectors of [0,1] values after pairwise deletion.

    Raises NoComparableAttributesError when no coordinate pair survives.
    """
    if len(a) != len(b):
        raise ValueError(f"vector length mismatch: {len(a)} vs {len(b)}")
    pairs = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if not pairs:
        raise NoComparableAttributesError("no comparable attributes")
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]

    if ranker is RankerId.EUCLIDEAN:
        return _euclidean(xs, ys)
    if ranker is RankerId.INVERSE_EUCLIDEAN:
        return 1.0 / (1.0 + _euclidean(xs, ys))

    dot = math.fsum(x * y for x, y in zip(xs, ys))
    if ranker is RankerId.COSINE:
        denominator = math.sqrt(
            math.fsum(x * x for x in xs) * math.fsum(y * y for y in ys)
        )
    elif ranker is RankerId.JACCARD:
        denominator = math.fsum(xs) + math.fsum(ys) - dot
    elif ranker is RankerId.OVERLAP:
        denominator = min(math.fsum(xs), math.fsum(ys))
    elif ranker is RankerId.DICE:
        denominator = math.fsum(xs) + math.fsum(ys)
        dot = 2.0 * dot
    else:
        raise ValueError(f"unknown ranker {ranker!r}")
    if denominator == 0:
        return 0.0
    return dot / denominator


def _euclidean(xs: list[float], ys: list[float]) -> float:
    return math.sqrt(math.fsum((x - y) ** 2 for x, y in zip(xs, ys)))


def rank_services(
    matrix: QoSMatrix,
    reqs: RequirementVector,
    ranker: RankerId,
) -> tuple[list[tuple[str, float]], list[tuple[str, str]]]:
    """Score every service in a normalized matrix against the normalized requirements.

    Returns (scored, failures): ``scored`` is (serviceId, score) sorted
    best-first for the ranker's polarity with ties broken by ascending
    serviceId; ``failures`` is (serviceId, reason) for services that could not
    be scored, sorted by serviceId. A failing service never aborts the batch.
    """
    targets = [req.target for req in reqs.requirements]
    attributes = reqs.attributes()

    scored: list[tuple[str, float]] = []
    failures: list[tuple[str, str]] = []
    for row in matrix.rows:
        vector = [row.value(attribute) for attribute in attributes]
        try:
            scored.append((row.service_id, score(targets, vector, ranker)))
        except NoComparableAttributesError as exc:
            failures.append((row.service_id, str(exc)))

    reverse = ranker.polarity is Polarity.HIGHER_IS_BETTER
    if reverse:
        scored.sort(key=lambda item: (-item[1], item[0]))
    else:
        scored.sort(key=lambda item: (item[1], item[0]))
    failures.sort(key=lambda item: item[0])
    return scored, failures
