from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from group import Free, FreeAbelian, standard_set
from ring import (
    NonRadial,
    RadialElement,
    RankMismatch,
    SphereProfile,
    ball_size,
    convolve,
    delta,
    distance_distribution,
    indicator_radial,
    iter_sphere,
    markov,
    power_exact,
    radial_convolve,
    radial_delta,
    radial_markov_power,
    radial_power,
    sphere_size,
    to_dense,
    to_radial,
)

radial_coefficients = st.lists(
    st.integers(min_value=-2, max_value=3).map(Fraction), min_size=1, max_size=4
).map(tuple)


def test_sphere_sizes():
    assert [sphere_size(2, ell) for ell in range(4)] == [1, 4, 12, 36]
    assert ball_size(2, 2) == 17
    assert SphereProfile.of(3, 2).sizes == (1, 6, 30)
    assert SphereProfile.of(3, 2).ball_size == 37


def test_iter_sphere_order():
    assert list(iter_sphere(2, 1)) == [(1,), (-1,), (2,), (-2,)]
    assert len(list(iter_sphere(2, 3))) == 36
    assert list(iter_sphere(2, 0)) == [()]


def test_distance_distribution():
    assert distance_distribution(2, 2) == [Fraction(1, 4), 0, Fraction(3, 4)]
    assert sum(distance_distribution(3, 7)) == 1


def test_trailing_zeros_trimmed():
    u = RadialElement(2, (1, 0, 0))
    assert u.coefficients == (1,)
    assert u == radial_delta(2)


def test_indicator_radial():
    u = indicator_radial(2, [0, 2])
    assert u.coefficients == (1, 0, 1)
    assert u.size == 13
    assert u.spheres() == [0, 2]


def test_markov_square_trace():
    m = radial_markov_power(2, 1)
    assert m.coefficients == (0, Fraction(1, 4))
    assert m.square_trace() == Fraction(1, 4)
    assert radial_power(m, 4).trace() == Fraction(7, 64)


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("k", range(1, 7))
def test_radial_power_matches_dense(r, k):
    dense = power_exact(markov(standard_set(Free(r))), k)
    assert to_radial(dense) == radial_markov_power(r, k)


@given(u=radial_coefficients, v=radial_coefficients)
@settings(max_examples=60, deadline=None)
def test_radial_convolve_matches_dense(u, v):
    a, b = RadialElement(2, u), RadialElement(2, v)
    assert to_dense(radial_convolve(2, a, b)) == convolve(to_dense(a), to_dense(b))


@given(u=radial_coefficients, v=radial_coefficients)
@settings(max_examples=60, deadline=None)
def test_radial_algebra_is_commutative(u, v):
    a, b = RadialElement(3, u), RadialElement(3, v)
    assert radial_convolve(3, a, b) == radial_convolve(3, b, a)


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        radial_convolve(2, radial_delta(2), radial_delta(3))


def test_non_radial_witness():
    with pytest.raises(NonRadial) as info:
        to_radial(delta(Free(2), (1,)))
    assert info.value.witness == ((1,), (-1,))


def test_to_radial_needs_free_group():
    with pytest.raises(ValueError):
        to_radial(delta(FreeAbelian(2)))


def test_dense_round_trip():
    u = RadialElement(2, (Fraction(1, 2), 0, Fraction(1, 24)))
    assert to_radial(to_dense(u)) == u


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_markov_powers_vanish_off_parity(r):
    for k in range(1, 21):
        c = radial_markov_power(r, k).coefficients
        assert len(c) == k + 1
        assert all(c[d] == 0 for d in range(len(c)) if d % 2 != k % 2)
        assert all(c[d] > 0 for d in range(len(c)) if d % 2 == k % 2 and d <= k)


reaching_distance_four = st.tuples(
    st.lists(st.integers(min_value=-2, max_value=3).map(Fraction), min_size=4, max_size=4),
    st.integers(min_value=1, max_value=3).map(Fraction),
).map(lambda t: tuple(t[0]) + (t[1],))


@given(u=reaching_distance_four, v=reaching_distance_four)
@settings(max_examples=15, deadline=None)
def test_radial_convolve_matches_dense_at_distance_four(u, v):
    a, b = RadialElement(2, u), RadialElement(2, v)
    assert a.max_distance == b.max_distance == 4
    assert to_dense(radial_convolve(2, a, b)) == convolve(to_dense(a), to_dense(b))
