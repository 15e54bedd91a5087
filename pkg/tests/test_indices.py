import math
from fractions import Fraction

import pytest
from hypothesis import given

from commnorm.indices import (
    INF, IndexDomainError, NormIndex, conjugate, index, interpolate_index, parse_index, scale_coord,
)

from conftest import indices, reciprocals


def test_inf_is_zero_reciprocal():
    assert index("inf").u == 0
    assert str(INF) == "inf"
    assert index(math.inf) == INF
    assert INF.value() == math.inf


@pytest.mark.parametrize("p", [1, 2, Fraction(4, 3), Fraction(7, 2), 10])
def test_round_trip(p):
    assert index(p).value() == p


@pytest.mark.parametrize("text,u", [("4/3", Fraction(3, 4)), ("2.5", Fraction(2, 5)), ("1", 1), ("inf", 0)])
def test_parse(text, u):
    assert parse_index(text).u == u


@pytest.mark.parametrize("bad", ["0.5", "-3", "abc", "1/0"])
def test_parse_rejects(bad):
    with pytest.raises(IndexDomainError):
        parse_index(bad)


def test_reciprocal_range_enforced():
    with pytest.raises(IndexDomainError):
        NormIndex(Fraction(3, 2))


@pytest.mark.parametrize("p,expected", [(1, "inf"), (2, 2), (4, Fraction(4, 3))])
def test_conjugate_examples(p, expected):
    assert conjugate(index(p)) == index(expected)


@pytest.mark.parametrize("p,s", [(1, 0), ("inf", 1), (2, Fraction(1, 2))])
def test_scale_coord_examples(p, s):
    assert scale_coord(index(p)) == s


def test_interpolate_examples():
    r = 4
    theta = 1 - Fraction(2, r)
    assert interpolate_index(index(2), INF, theta) == index(4)
    a = index(Fraction(5, 3))
    assert interpolate_index(a, index(7), 0) == a
    assert interpolate_index(index(1), INF, Fraction(1, 2)) == index(2)


def test_interpolate_rejects_theta():
    with pytest.raises(ValueError):
        interpolate_index(index(1), INF, Fraction(3, 2))


@given(indices)
def test_conjugate_involution(a):
    assert conjugate(conjugate(a)) == a


@given(indices)
def test_scale_of_conjugate(a):
    assert scale_coord(conjugate(a)) == 1 - scale_coord(a)


@given(indices, indices)
def test_scale_order_preserving(a, b):
    assert (a <= b) == (scale_coord(a) <= scale_coord(b))


@given(reciprocals, reciprocals, reciprocals, reciprocals)
def test_interpolate_monotone(ua, ub, t1, t2):
    a, b = NormIndex(ua), NormIndex(ub)
    if ua <= ub:
        return
    lo, hi = sorted((t1, t2))
    assert interpolate_index(a, b, lo).u >= interpolate_index(a, b, hi).u
