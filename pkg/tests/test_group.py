import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from group import (
    BallGuardExceeded,
    CayleyBall,
    Free,
    FreeAbelian,
    FreeProductCyclic,
    InvalidGenerator,
    NotSymmetric,
    ParseError,
    cayley_ball,
    format_word,
    parse_genset,
    parse_presentation,
    parse_word,
    standard_set,
    symmetrize,
)

PRESENTATIONS = [Free(2), FreeAbelian(2), FreeProductCyclic((2, 3)), FreeProductCyclic((0, 4))]

words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8).map(tuple)


# ---- text formats ------------------------------------------------------------


def test_parse_word():
    assert parse_word("aAb") == (1, -1, 2)
    assert parse_word("a A b") == (1, -1, 2)
    assert parse_word("e") == ()
    assert format_word(()) == "e"
    assert format_word((1, -2)) == "aB"


def test_alphabet_skips_identity_letter():
    assert format_word((5,)) == "f"
    assert parse_word("F") == (-5,)


def test_parse_word_error_position():
    with pytest.raises(ParseError) as info:
        parse_word("ab#")
    assert info.value.position == 2


def test_parse_presentation():
    assert parse_presentation("free:2") == Free(2)
    assert parse_presentation("zd:3") == FreeAbelian(3)
    assert parse_presentation("fpc:2,3") == FreeProductCyclic((2, 3))
    assert parse_presentation("free:2").spec_string() == "free:2"


def test_parse_presentation_errors():
    with pytest.raises(ParseError) as info:
        parse_presentation("free2")
    assert info.value.position == 5
    with pytest.raises(ParseError):
        parse_presentation("free:x")
    with pytest.raises(ParseError):
        parse_presentation("heisenberg:3")
    with pytest.raises(ValueError):
        parse_presentation("fpc:1,3")


# ---- normal forms ------------------------------------------------------------


def test_free_reduction():
    p = Free(2)
    assert p.normal_form((1, -1, 2)) == (2,)
    assert p.normal_form((1, 2, -2, -1)) == ()
    assert p.invert((1, 2)) == (-2, -1)


def test_cyclic_residues():
    p = FreeProductCyclic((3, 2))
    assert p.normal_form((1, 1)) == (-1,)
    assert p.normal_form((2, 2)) == ()
    assert p.normal_form((1, 1, 1)) == ()


def test_abelian_normal_form():
    p = FreeAbelian(2)
    assert p.normal_form((2, 1, -2)) == (1,)
    assert p.multiply((1,), (2,)) == p.multiply((2,), (1,))


def test_invalid_generator():
    with pytest.raises(InvalidGenerator):
        Free(2).normal_form((3,))


@pytest.mark.parametrize("p", PRESENTATIONS, ids=str)
@given(u=words, v=words, w=words)
@settings(max_examples=200, deadline=None)
def test_group_law(p, u, v, w):
    assert p.multiply(p.multiply(u, v), w) == p.multiply(u, p.multiply(v, w))
    assert p.multiply(u, p.invert(u)) == ()
    assert p.is_normal(p.normal_form(u))


@pytest.mark.parametrize("p", PRESENTATIONS, ids=str)
@given(u=words)
@settings(max_examples=100, deadline=None)
def test_key_codec(p, u):
    key = p.to_key(u)
    assert p.to_key(p.from_key(key)) == key
    assert p.key_length(key) == len(p.normal_form(u))


# ---- symmetric sets ----------------------------------------------------------


def test_parse_genset_sorts_shortlex(f2):
    S = parse_genset(f2, "B,b,A,a")
    assert S.words == ((1,), (-1,), (2,), (-2,))
    assert S.is_standard()
    assert S.text() == "a,A,b,B"


def test_not_symmetric(f2):
    with pytest.raises(NotSymmetric, match="set not symmetric: missing A"):
        parse_genset(f2, "a,b")


def test_genset_duplicate(f2):
    with pytest.raises(ValueError):
        parse_genset(f2, "a,A,aAa")


def test_empty_element_position(f2):
    with pytest.raises(ParseError) as info:
        parse_genset(f2, "a,,A")
    assert info.value.position == 2


def test_standard_set_with_involution(modular):
    S = standard_set(modular)
    assert len(S) == 3
    assert not S.contains_identity


def test_symmetrize(f2):
    S = symmetrize(f2, [(1, 2)])
    assert set(S.words) == {(1, 2), (-2, -1)}
    assert S.max_length == 2


# ---- Cayley balls ------------------------------------------------------------


def test_free_ball_spheres(sigma_f2):
    ball = CayleyBall(sigma_f2, 3)
    assert ball.sphere_sizes() == [1, 4, 12, 36]
    assert len(ball) == 53


def test_abelian_ball(sigma_z2):
    ball = cayley_ball(sigma_z2, 2)
    assert ball.sphere_sizes() == [1, 4, 8]


def test_ball_guard(sigma_f2):
    with pytest.raises(BallGuardExceeded):
        CayleyBall(sigma_f2, 3, guard=10)


def test_transition_matrix(sigma_f2):
    ball = CayleyBall(sigma_f2, 2)
    m = ball.transition_matrix()
    assert m.shape == (17, 17)
    rows = np.asarray(m.sum(axis=1)).ravel()
    # interior rows are stochastic, boundary rows lose mass
    assert rows[0] == pytest.approx(1.0)
    assert rows[-1] == pytest.approx(0.25)
