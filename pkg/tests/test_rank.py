"""Scoring: the six algorithms, pairwise deletion, batch ranking order."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qosrank.errors import NoComparableAttributesError
from qosrank.model import Polarity, QoSMatrix, Requirement, RequirementVector, ServiceRecord
from qosrank.rank import RankerId, parse_ranker, rank_services, score

ALL_RANKERS = list(RankerId)

unit_floats = st.floats(min_value=0.0, max_value=1.0)
optional_unit_floats = st.one_of(st.none(), unit_floats)


def test_selector_integers_match_published_numbering():
    assert [int(r) for r in ALL_RANKERS] == [1, 2, 3, 4, 5, 6]
    assert RankerId.COSINE == 1
    assert RankerId.EUCLIDEAN == 4
    assert RankerId.INVERSE_EUCLIDEAN == 6


def test_parse_accepts_integers_names_and_digit_strings():
    assert parse_ranker(4) is RankerId.EUCLIDEAN
    assert parse_ranker("4") is RankerId.EUCLIDEAN
    assert parse_ranker("euclidean") is RankerId.EUCLIDEAN
    assert parse_ranker("inverse-euclidean") is RankerId.INVERSE_EUCLIDEAN
    assert parse_ranker("INVERSE_EUCLIDEAN") is RankerId.INVERSE_EUCLIDEAN
    with pytest.raises(ValueError):
        parse_ranker(0)
    with pytest.raises(ValueError):
        parse_ranker("manhattan")


def test_only_euclidean_distance_is_lower_is_better():
    for ranker in ALL_RANKERS:
        expected = (
            Polarity.LOWER_IS_BETTER
            if ranker is RankerId.EUCLIDEAN
            else Polarity.HIGHER_IS_BETTER
        )
        assert ranker.polarity is expected


def test_orthogonal_vectors():
    a, b = [1.0, 0.0], [0.0, 1.0]
    assert score(a, b, RankerId.COSINE) == 0.0
    assert score(a, b, RankerId.JACCARD) == 0.0
    assert score(a, b, RankerId.OVERLAP) == 0.0
    assert score(a, b, RankerId.DICE) == 0.0
    assert score(a, b, RankerId.EUCLIDEAN) == pytest.approx(math.sqrt(2.0))
    assert score(a, b, RankerId.INVERSE_EUCLIDEAN) == pytest.approx(1.0 / (1.0 + math.sqrt(2.0)))


def test_identical_unit_vectors():
    a = [1.0, 1.0]
    assert score(a, a, RankerId.COSINE) == pytest.approx(1.0)
    assert score(a, a, RankerId.JACCARD) == pytest.approx(1.0)
    assert score(a, a, RankerId.OVERLAP) == pytest.approx(1.0)
    assert score(a, a, RankerId.DICE) == pytest.approx(1.0)
    assert score(a, a, RankerId.EUCLIDEAN) == 0.0
    assert score(a, a, RankerId.INVERSE_EUCLIDEAN) == 1.0


def test_coefficient_denominators_use_plain_sums():
    # the shipped forms divide by plain coordinate sums, so identical
    # non-unit vectors do NOT reach similarity 1
    a = [0.5, 0.5]
    assert score(a, a, RankerId.JACCARD) == pytest.approx(1.0 / 3.0)
    assert score(a, a, RankerId.DICE) == pytest.approx(0.5)
    assert score(a, a, RankerId.OVERLAP) == pytest.approx(0.5)
    # cosine is scale-free either way
    assert score(a, a, RankerId.COSINE) == pytest.approx(1.0)


def test_pairwise_deletion_drops_undefined_coordinates_from_both_sides():
    a = [1.0, 1.0, 1.0]
    b = [1.0, None, 0.0]
    assert score(a, b, RankerId.EUCLIDEAN) == pytest.approx(1.0)
    a2 = [1.0, None, 1.0]
    b2 = [1.0, 1.0, None]
    # only the first coordinate survives
    assert score(a2, b2, RankerId.EUCLIDEAN) == 0.0


def test_all_coordinates_deleted_is_an_error():
    with pytest.raises(NoComparableAttributesError) as err:
        score([1.0, None], [None, 1.0], RankerId.COSINE)
    assert "no comparable attributes" in str(err.value)


def test_length_mismatch_is_an_error():
    with pytest.raises(ValueError):
        score([1.0], [1.0, 2.0], RankerId.COSINE)


@pytest.mark.parametrize(
    "ranker", [RankerId.COSINE, RankerId.JACCARD, RankerId.OVERLAP, RankerId.DICE]
)
def test_zero_denominator_scores_zero(ranker):
    assert score([0.0, 0.0], [0.0, 0.0], ranker) == 0.0


def test_rank_services_sorts_best_first_by_polarity():
    reqs = RequirementVector(
        (
            Requirement(attribute="x", target=1.0, maximize=False, mandatory=False),
            Requirement(attribute="y", target=1.0, maximize=False, mandatory=False),
        )
    )
    matrix = QoSMatrix(
        columns=("x", "y"),
        rows=(
            ServiceRecord(service_id="far", values={"x": 0.0, "y": 0.0}),
            ServiceRecord(service_id="near", values={"x": 1.0, "y": 0.9}),
            ServiceRecord(service_id="blank", values={"x": None, "y": None}),
        ),
    )
    scored, failures = rank_services(matrix, reqs, RankerId.EUCLIDEAN)
    assert [sid for sid, _ in scored] == ["near", "far"]
    assert failures == [("blank", "no comparable attributes")]

    scored_sim, _ = rank_services(matrix, reqs, RankerId.COSINE)
    assert scored_sim[0][0] == "near"


def test_rank_services_breaks_ties_by_service_id():
    reqs = RequirementVector(
        (Requirement(attribute="x", target=1.0, maximize=False, mandatory=False),)
    )
    matrix = QoSMatrix(
        columns=("x",),
        rows=(
            ServiceRecord(service_id="b", values={"x": 0.5}),
            ServiceRecord(service_id="a", values={"x": 0.5}),
        ),
    )
    scored, _ = rank_services(matrix, reqs, RankerId.EUCLIDEAN)
    assert [sid for sid, _ in scored] == ["a", "b"]


@settings(max_examples=200)
@given(
    pairs=st.lists(
        st.tuples(optional_unit_floats, optional_unit_floats), min_size=1, max_size=8
    ),
)
def test_inverse_euclidean_is_reciprocal_of_one_plus_distance(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    try:
        distance = score(a, b, RankerId.EUCLIDEAN)
    except NoComparableAttributesError:
        with pytest.raises(NoComparableAttributesError):
            score(a, b, RankerId.INVERSE_EUCLIDEAN)
        return
    assert score(a, b, RankerId.INVERSE_EUCLIDEAN) == 1.0 / (1.0 + distance)


@settings(max_examples=200)
@given(
    pairs=st.lists(
        st.tuples(optional_unit_floats, optional_unit_floats), min_size=1, max_size=8
    ),
    ranker=st.sampled_from(ALL_RANKERS),
)
def test_scores_are_symmetric_after_pairwise_deletion(pairs, ranker):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    try:
        forward = score(a, b, ranker)
    except NoComparableAttributesError:
        return
    assert score(b, a, ranker) == forward
