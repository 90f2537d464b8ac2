"""Degrees of the maps exp_k(f) induced by power maps f(z) = z**d.

``degree_formula`` is the closed form; ``degree_oracle`` recomputes it by
enumerating every preimage of the k-th roots of unity and adding up the
local signs, which only needs cyclic orders of points on the circle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from .subsets import angle

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "cyclic_sign",
    "permutation_sign",
    "degree_formula",
    "preimage_angles",
    "oracle_terms",
    "degree_oracle",
    "degree_oracle_inverse",
]

DEFAULT_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs {needed} tuples, budget is {budget}")
        self.needed = needed
        self.budget = budget


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation that sorts ``seq`` (entries assumed distinct)."""
    inversions = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def cyclic_sign(points: Sequence) -> int:
    """+1 if the points, read in the given order, are an even permutation of cyclic order.

    Only meaningful for an odd number of points, where every rotation of the
    cyclic order is itself even.
    """
    angles = [angle(p) for p in points]
    if len(angles) % 2 == 0:
        raise ValueError(f"cyclic sign needs an odd number of points, got {len(angles)}")
    if len(set(angles)) != len(angles):
        raise ValueError("points must be pairwise distinct")
    return permutation_sign(angles)


def degree_formula(k: int, d: int) -> int:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return d ** ((k + 1) // 2)


def preimage_angles(s: Sequence[int], k: int, d: int) -> list[Fraction]:
    """Angles of the chosen d-th roots, one over each k-th root of unity, in written order."""
    return [Fraction(s_r * k + r, k * d) for r, s_r in enumerate(s)]


def _check_odd(k: int) -> None:
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be a positive odd integer, got {k}")


def oracle_terms(k: int, d: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(s, sign)`` for every preimage tuple, in lexicographic order."""
    _check_odd(k)
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if d**k > budget:
        raise BudgetExceededError(d**k, budget)
    return _terms(k, d)


def _terms(k: int, d: int) -> Iterator[tuple[tuple[int, ...], int]]:
    for s in itertools.product(range(d), repeat=k):
        # the angles share the denominator k*d, so compare numerators
        yield s, permutation_sign([s_r * k + r for r, s_r in enumerate(s)])


def degree_oracle(k: int, d: int, budget: int = DEFAULT_BUDGET) -> int:
    return sum(sign for _, sign in oracle_terms(k, d, budget))


def degree_oracle_inverse(k: int) -> int:
    """Degree of exp_k of complex conjugation, from its single preimage.

    The k-th roots of unity come back in the order 1, z^{k-1}, ..., z; each
    point contributes the local degree -1 of conjugation.
    """
    _check_odd(k)
    written = [Fraction(0)] + [Fraction(r, k) for r in range(k - 1, 0, -1)]
    return cyclic_sign(written) * (-1) ** k
