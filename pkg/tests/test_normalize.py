"""Normalization: the four algorithms, target-in-pool behavior, degenerate pools."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qosrank.errors import EmptyRequirementsError
from qosrank.model import QoSMatrix, Requirement, RequirementVector, ServiceRecord
from qosrank.normalize import NormalizerId, normalize, normalize_column, parse_normalizer

ALL_NORMALIZERS = list(NormalizerId)


def _reqs(*pairs):
    return RequirementVector(
        tuple(
            Requirement(attribute=a, target=t, maximize=False, mandatory=False)
            for a, t in pairs
        )
    )


def test_selector_integers_match_published_numbering():
    assert NormalizerId.MAX == 1
    assert NormalizerId.SUM == 2
    assert NormalizerId.MIN_MAX == 3
    assert NormalizerId.EUCLIDEAN == 4


def test_parse_accepts_integers_names_and_digit_strings():
    assert parse_normalizer(3) is NormalizerId.MIN_MAX
    assert parse_normalizer("3") is NormalizerId.MIN_MAX
    assert parse_normalizer("min-max") is NormalizerId.MIN_MAX
    assert parse_normalizer("MIN_MAX") is NormalizerId.MIN_MAX
    assert parse_normalizer("minmax") is NormalizerId.MIN_MAX
    with pytest.raises(ValueError):
        parse_normalizer(7)
    with pytest.raises(ValueError):
        parse_normalizer("zscore")
    with pytest.raises(ValueError):
        parse_normalizer(True)


def test_max_scaling_matches_published_throughput_column():
    # throughput column of the demo catalog: the target tops the pool
    values, target = normalize_column([30.0, 10.0, 11.0, 35.0], 35.0, NormalizerId.MAX)
    assert values == pytest.approx([0.857, 0.286, 0.314, 1.0], abs=5e-4)
    assert target == 1.0


def test_max_scaling_target_dominates_pool():
    values, target = normalize_column([2.0, 4.0], 8.0, NormalizerId.MAX)
    assert values == [0.25, 0.5]
    assert target == 1.0


def test_sum_scaling_divides_by_pool_total():
    values, target = normalize_column([2.0, 4.0], 2.0, NormalizerId.SUM)
    assert values == [0.25, 0.5]
    assert target == 0.25


def test_min_max_scaling_spans_pool_range():
    values, target = normalize_column([2.0, 4.0], 8.0, NormalizerId.MIN_MAX)
    assert values == pytest.approx([0.0, 1.0 / 3.0])
    assert target == 1.0


def test_euclidean_scaling_divides_by_pool_norm():
    values, target = normalize_column([3.0, 4.0], 0.0, NormalizerId.EUCLIDEAN)
    assert values == pytest.approx([0.6, 0.8])
    assert target == 0.0


@pytest.mark.parametrize(
    "normalizer", [NormalizerId.MAX, NormalizerId.SUM, NormalizerId.EUCLIDEAN]
)
def test_all_zero_pool_maps_to_zero(normalizer):
    values, target = normalize_column([0.0, 0.0], 0.0, normalizer)
    assert values == [0.0, 0.0]
    assert target == 0.0


def test_constant_pool_maps_to_one_under_min_max():
    values, target = normalize_column([5.0, 5.0], 5.0, NormalizerId.MIN_MAX)
    assert values == [1.0, 1.0]
    assert target == 1.0


def test_undefined_cells_stay_undefined_and_never_enter_the_pool():
    # if None leaked into the pool as 0, the minimum would shift to 0
    values, target = normalize_column([None, 4.0, 8.0], 8.0, NormalizerId.MIN_MAX)
    assert values == [None, 0.0, 1.0]
    assert target == 1.0


def test_negative_values_are_rejected():
    with pytest.raises(ValueError):
        normalize_column([1.0, -2.0], 1.0, NormalizerId.MAX)
    with pytest.raises(ValueError):
        normalize_column([1.0], -1.0, NormalizerId.MAX)


def test_normalize_reorders_columns_to_requirement_order():
    matrix = QoSMatrix(
        columns=("speed", "cost", "extra"),
        rows=(
            ServiceRecord(
                service_id="a",
                values={"speed": 5.0, "cost": 2.0, "extra": 9.0},
                provenance={"speed": "http://r", "extra": "http://r"},
            ),
        ),
    )
    normalized, reqs_n = normalize(matrix, _reqs(("cost", 4.0), ("speed", 10.0)), NormalizerId.MAX)
    assert normalized.columns == ("cost", "speed")
    row = normalized.rows[0]
    assert row.values == {"cost": 0.5, "speed": 0.5}
    # provenance for dropped columns goes away with them
    assert row.provenance == {"speed": "http://r"}
    assert [r.target for r in reqs_n.requirements] == [1.0, 1.0]


def test_requirement_without_matrix_column_normalizes_against_itself():
    matrix = QoSMatrix(
        columns=("cost",),
        rows=(ServiceRecord(service_id="a", values={"cost": 2.0}),),
    )
    normalized, reqs_n = normalize(matrix, _reqs(("cost", 4.0), ("ghost", 7.0)), NormalizerId.MAX)
    assert normalized.column("ghost") == [None]
    assert reqs_n.requirements[1].target == 1.0


def test_empty_requirements_raise():
    matrix = QoSMatrix(columns=("cost",), rows=())
    with pytest.raises(EmptyRequirementsError):
        normalize(matrix, RequirementVector(()), NormalizerId.MAX)


@pytest.mark.parametrize("normalizer", ALL_NORMALIZERS)
def test_normalization_is_idempotent(normalizer):
    values = [30.0, 10.0, 11.0, 35.0]
    once, target_once = normalize_column(values, 20.0, normalizer)
    twice, target_twice = normalize_column(once, target_once, normalizer)
    assert twice == pytest.approx(once, abs=1e-12)
    assert target_twice == pytest.approx(target_once, abs=1e-12)


@settings(max_examples=200)
@given(
    values=st.lists(st.floats(min_value=0.0, max_value=1e9), min_size=1, max_size=8),
    target=st.floats(min_value=0.0, max_value=1e9),
    normalizer=st.sampled_from(ALL_NORMALIZERS),
)
def test_outputs_stay_in_unit_interval(values, target, normalizer):
    normalized, target_n = normalize_column(values, target, normalizer)
    for value in normalized + [target_n]:
        assert 0.0 <= value <= 1.0


@settings(max_examples=200)
@given(
    values=st.lists(st.floats(min_value=0.0, max_value=1e9), min_size=2, max_size=8),
    target=st.floats(min_value=0.0, max_value=1e9),
    normalizer=st.sampled_from(ALL_NORMALIZERS),
)
def test_normalization_preserves_column_order(values, target, normalizer):
    normalized, _ = normalize_column(values, target, normalizer)
    for i in range(len(values)):
        for j in range(len(values)):
            if values[i] <= values[j]:
                assert normalized[i] <= normalized[j]
