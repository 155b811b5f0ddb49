from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv

from estimators import intervals
from extraction import (
    LevelProfile,
    ProfileError,
    block_objectives,
    discretized_profile,
    sharpness_scan,
    sharpness_series,
    threshold_select,
)
from extraction.profile import GUARANTEE_RANGE

counts = st.lists(st.integers(min_value=1, max_value=50), min_size=3, max_size=40)
unit_values = st.lists(
    st.tuples(st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60)),
    min_size=1,
    max_size=30,
).map(lambda pairs: [Fraction(min(a, b), max(a, b)) for a, b in pairs])


def brute_force_objective(profile):
    """max_j (j / n) f(j / n) over every single cell."""
    cells = [v for v, m in profile.levels for _ in range(m)]
    n = len(cells)
    return max(Fraction(j, n) * v for j, v in enumerate(cells, 1))


def check_guarantee(report):
    with intervals.precision(128):
        i_iv = intervals.interval(report.integral)
        bound = i_iv / (-4 * iv.log(i_iv))
        assert intervals.certainly_leq(bound, intervals.interval(report.objective))


# ---- the threshold guarantee -------------------------------------------------


@given(counts)
@settings(max_examples=1000, deadline=None)
def test_normalized_profiles_meet_guarantee(values):
    total = sum(values)
    profile = LevelProfile.from_values(Fraction(v, total) for v in values)
    report = threshold_select(profile)
    assert report.integral == Fraction(1, len(values))
    assert report.guarantee_met is True
    check_guarantee(report)
    assert report.objective == brute_force_objective(profile)


@given(unit_values)
@settings(max_examples=1000, deadline=None)
def test_unit_profiles(values):
    profile = LevelProfile.from_values(values)
    report = threshold_select(profile)
    assert report.objective == brute_force_objective(profile)
    assert report.lambda_ == profile.levels[report.chosen_level_index][0]
    assert report.objective == report.x0 * report.lambda_
    if profile.integral <= GUARANTEE_RANGE:
        assert report.guarantee_met is True
        check_guarantee(report)
    else:
        assert report.guarantee is None and report.alpha is None


@given(unit_values)
@settings(max_examples=300, deadline=None)
def test_ties_go_to_later_block(values):
    profile = LevelProfile.from_values(values)
    objectives = block_objectives(profile)
    report = threshold_select(profile)
    best = max(objectives)
    assert report.chosen_level_index == max(i for i, o in enumerate(objectives) if o == best)


def test_block_objectives_example():
    profile = LevelProfile(((Fraction(1, 2), 1), (Fraction(1, 4), 2)))
    assert block_objectives(profile) == [Fraction(1, 6), Fraction(1, 4)]
    report = threshold_select(profile)
    assert report.chosen_level_index == 1
    assert report.x0 == 1
    assert report.integral == Fraction(1, 3)


def test_tie_example():
    # 1/2 * 1 == 1 * 1/2
    profile = LevelProfile(((Fraction(1), 1), (Fraction(1, 2), 1)))
    assert threshold_select(profile).chosen_level_index == 1


def test_guarantee_not_applicable():
    report = threshold_select(LevelProfile(((Fraction(1), 1),)))
    assert report.integral == 1
    assert report.alpha is None and report.guarantee is None and report.guarantee_met is None


def test_to_dict_keys():
    d = threshold_select(LevelProfile.from_values([Fraction(1, 4)] * 4)).to_dict()
    assert set(d) == {
        "chosen_level_index", "lambda", "x0", "objective", "I", "alpha", "guarantee", "guarantee_met",
    }


@pytest.mark.parametrize(
    "levels",
    [
        (),
        ((Fraction(0), 1),),
        ((Fraction(3, 2), 1),),
        ((Fraction(1, 2), 0),),
        ((Fraction(1, 4), 1), (Fraction(1, 2), 1)),
    ],
)
def test_profile_validation(levels):
    with pytest.raises(ProfileError):
        LevelProfile(levels)


def test_from_weighted_merges_equal_values():
    profile = LevelProfile.from_weighted([(Fraction(1, 8), 4), (Fraction(1, 4), 1), (Fraction(1, 8), 2)])
    assert profile.levels == ((Fraction(1, 4), 1), (Fraction(1, 8), 6))
    assert profile.total_mass == 1
    assert profile.total_count == 7


# ---- sharpness of the logarithm ----------------------------------------------


def test_sharpness_scan_at_100():
    case = sharpness_scan(100)
    assert case.ratio == pytest.approx(0.178407, abs=1e-6)
    assert case.objective == pytest.approx(0.01)
    assert case.guarantee_met is True
    assert case.guarantee <= case.objective


def test_sharpness_series():
    ns = [10, 100, 1_000, 10_000, 100_000, 1_000_000]
    cases = sharpness_series(ns)
    ratios = [c.ratio for c in cases]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(c.guarantee_met for c in cases)
    assert [c.n for c in cases] == ns


def test_discretized_sharpness():
    case = sharpness_scan(100, grid=1000)
    assert case.discrete.objective == Fraction(1, 100)
    assert case.discrete.guarantee_met is True


def test_discretized_profile_values():
    profile = discretized_profile(4, 8)
    assert profile.levels[0] == (Fraction(1), 2)
    assert profile.total_count == 8


def test_sharpness_needs_n_at_least_3():
    with pytest.raises(ValueError):
        sharpness_scan(2)
