import itertools
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from expcircle.degrees import (
    BudgetExceededError,
    cyclic_sign,
    degree_formula,
    degree_oracle,
    degree_oracle_inverse,
    oracle_terms,
    permutation_sign,
    preimage_angles,
)

from conftest import unit_rationals


def sign_by_cycles(seq):
    """Sign of the sorting permutation from its cycle decomposition."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    seen, sign = set(), 1
    for start in range(len(seq)):
        length = 0
        i = start
        while i not in seen:
            seen.add(i)
            i = order[i]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


@pytest.mark.parametrize(
    "points, sign",
    [((0, F(1, 3), F(2, 3)), 1), ((0, F(2, 3), F(1, 3)), -1), ((F(1, 3), F(2, 3), 0), 1)],
)
def test_cyclic_sign_examples(points, sign):
    assert cyclic_sign(points) == sign


def test_cyclic_sign_errors():
    with pytest.raises(ValueError):
        cyclic_sign((0, F(1, 2)))
    with pytest.raises(ValueError):
        cyclic_sign((0, 1, F(1, 2)))  # 0 and 1 are the same point


odd_point_lists = st.integers(0, 3).flatmap(
    lambda m: st.lists(unit_rationals(40), min_size=2 * m + 1, max_size=2 * m + 1, unique=True)
)


@given(odd_point_lists)
def test_cyclic_sign_rotation_and_transposition(points):
    assume(not (0 in points and 1 in points))
    s = cyclic_sign(points)
    assert s == sign_by_cycles(points)
    for r in range(len(points)):
        assert cyclic_sign(points[r:] + points[:r]) == s
    if len(points) > 1:
        swapped = [points[1], points[0]] + points[2:]
        assert cyclic_sign(swapped) == -s


@given(st.lists(st.integers(), min_size=0, max_size=7, unique=True))
def test_permutation_sign_against_cycles(seq):
    assert permutation_sign(seq) == sign_by_cycles(seq)


@pytest.mark.parametrize("k, d, value", [(3, 2, 4), (4, 2, 4), (5, -1, -1), (3, 0, 0), (1, 5, 5)])
def test_degree_formula_examples(k, d, value):
    assert degree_formula(k, d) == value


def test_degree_formula_rejects_bad_k():
    with pytest.raises(ValueError):
        degree_formula(0, 2)


@pytest.mark.parametrize("k, d, value", [(3, 1, 1), (3, 2, 4), (5, 2, 8)])
def test_oracle_examples(k, d, value):
    assert degree_oracle(k, d) == value


@pytest.mark.parametrize("k, d", list(itertools.product([1, 3, 5, 7], [1, 2, 3])))
def test_oracle_matches_formula(k, d):
    assert degree_oracle(k, d) == degree_formula(k, d)


def test_oracle_signs_agree_with_cyclic_sign_of_angles():
    for s, sign in oracle_terms(3, 3):
        assert sign == cyclic_sign(preimage_angles(s, 3, 3))


@pytest.mark.parametrize("k, value", [(1, -1), (3, 1), (5, -1), (7, 1), (9, -1)])
def test_inverse_oracle(k, value):
    assert degree_oracle_inverse(k) == value == degree_formula(k, -1)


@pytest.mark.parametrize("k, d", [(3, 2), (5, 2), (5, 3), (7, 2)])
def test_paired_tuples_are_all_positive(k, d):
    paired = [
        sign
        for s, sign in oracle_terms(k, d)
        if all(s[2 * j] == s[2 * j + 1] for j in range(k // 2))
    ]
    assert all(sign == 1 for sign in paired)
    assert sum(paired) == d ** ((k + 1) // 2)


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_negative_degree_via_composition(k, d):
    assert degree_formula(k, -d) == degree_formula(k, d) * degree_formula(k, -1)


def test_budget_is_checked_before_enumerating():
    with pytest.raises(BudgetExceededError) as err:
        oracle_terms(9, 3, budget=1000)
    assert err.value.needed == 3**9 and err.value.budget == 1000


def test_oracle_rejects_even_k_and_nonpositive_d():
    with pytest.raises(ValueError):
        degree_oracle(4, 2)
    with pytest.raises(ValueError):
        degree_oracle(3, 0)
