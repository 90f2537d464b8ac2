from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expcircle.subsets import (
    CapacityError,
    FiniteSubset,
    apply_power_map,
    quotient_tuple,
    rotate,
    stabilizer_order,
    union_with_basepoint,
)

from conftest import rationals

subsets = st.lists(rationals(), min_size=1, max_size=6).map(lambda xs: FiniteSubset.of(xs, 6))


def S(*xs, k=None):
    return FiniteSubset.of([F(x) for x in xs], k)


@pytest.mark.parametrize(
    "xs, expected",
    [
        ([0, 0, F(1, 2)], S(0, F(1, 2), k=3)),
        ([F(1, 3), 0, F(2, 3)], S(0, F(1, 3), F(2, 3), k=3)),
        ([F(1, 4)] * 3, S(F(1, 4), k=3)),
    ],
)
def test_quotient_tuple(xs, expected):
    assert quotient_tuple(xs, 3) == expected


def test_quotient_tuple_rejects_empty_and_long():
    with pytest.raises(ValueError):
        quotient_tuple([], 3)
    with pytest.raises(CapacityError):
        quotient_tuple([0, F(1, 4), F(1, 2), F(3, 4)], 3)


def test_angles_are_reduced_mod_one():
    assert S(F(5, 4), -1, k=2).points == (0, F(1, 4))


def test_rotate():
    assert rotate(S(0, F(1, 2), k=2), F(1, 2)) == S(0, F(1, 2), k=2)
    assert rotate(S(0, k=1), F(1, 3)) == S(F(1, 3), k=1)
    assert rotate(S(0, F(1, 4), k=2), F(7, 8)).points == (F(1, 8), F(7, 8))


def test_stabilizer_order():
    assert stabilizer_order(S(0, F(1, 2))) == 2
    assert stabilizer_order(S(0, F(1, 3), F(2, 3))) == 3
    assert stabilizer_order(S(0, F(1, 3))) == 1


def test_printed_multiplicity_three_set_is_not_rotation_invariant():
    # {1, e^{pi i/3}, e^{2 pi i/3}} is not a regular orbit
    assert stabilizer_order(S(0, F(1, 6), F(1, 3))) == 1


def test_apply_power_map():
    assert apply_power_map(S(0, F(1, 2)), 2) == S(0, k=2)
    assert apply_power_map(S(0, F(1, 3), F(2, 3)), 1) == S(0, F(1, 3), F(2, 3))
    assert apply_power_map(S(F(1, 4)), -1) == S(F(3, 4))


def test_union_with_basepoint():
    assert union_with_basepoint(S(F(1, 2)), 2) == S(0, F(1, 2), k=2)
    assert union_with_basepoint(S(0), 2) == S(0, k=2)
    assert union_with_basepoint(S(F(1, 3), F(2, 3)), 3) == S(0, F(1, 3), F(2, 3), k=3)
    with pytest.raises(CapacityError):
        union_with_basepoint(S(F(1, 3), F(2, 3)), 2)


def test_json_round_trip():
    s = S(F(2, 3), 0, F(1, 4), k=5)
    assert s.to_json() == '["0/1", "1/4", "2/3"]'
    assert FiniteSubset.from_json(s.to_json(), 5) == s


def test_subset_json_matches_schema(validate):
    import json

    validate("subset", json.loads(S(F(1, 3), F(7, 9)).to_json()))


@given(subsets)
def test_quotient_tuple_idempotent(s):
    padded = list(s.points) + [s.points[0]] * (s.capacity - len(s))
    assert quotient_tuple(padded, s.capacity) == s


@given(subsets, rationals())
def test_rotation_inverse(s, theta):
    assert rotate(rotate(s, theta), -theta) == s
    assert len(rotate(s, theta)) == len(s)


@given(subsets, rationals())
def test_stabilizer_divides_size_and_is_rotation_invariant(s, theta):
    m = stabilizer_order(s)
    assert len(s) % m == 0
    assert stabilizer_order(rotate(s, theta)) == m


@given(st.integers(1, 6), rationals())
def test_stabilizer_of_regular_orbits(n, theta):
    # n equally spaced points, rotated: stabilizer is exactly n
    s = rotate(FiniteSubset.of([F(j, n) for j in range(n)]), theta)
    assert stabilizer_order(s) == n


@given(subsets, st.integers(-4, 4), rationals())
def test_power_map_is_equivariant(s, d, theta):
    assert apply_power_map(rotate(s, theta), d) == rotate(apply_power_map(s, d), d * theta)
