"""Points of exp_k(S^1) as finite sets of exact rational angles.

An angle ``x`` stands for the point ``exp(2*pi*i*x)`` of the unit circle, so
angles live in ``[0, 1)`` and the basepoint ``1`` is angle ``0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[Fraction, int, str]

__all__ = [
    "CapacityError",
    "FiniteSubset",
    "angle",
    "quotient_tuple",
    "rotate",
    "stabilizer_order",
    "apply_power_map",
    "union_with_basepoint",
    "format_angle",
    "parse_angle",
]


class CapacityError(ValueError):
    """Raised when a subset would hold more points than its capacity allows."""


def angle(x: Rational) -> Fraction:
    """Reduce ``x`` to the representative of its class in [0, 1)."""
    return Fraction(x) % 1


def format_angle(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_angle(s: str) -> Fraction:
    return angle(Fraction(s))


@dataclass(frozen=True)
class FiniteSubset:
    """A nonempty set of at most ``capacity`` points of the circle.

    ``points`` is kept strictly increasing, so two subsets are equal exactly
    when they describe the same point of exp_k(S^1).
    """

    points: tuple[Fraction, ...]
    capacity: int

    def __post_init__(self):
        pts = tuple(angle(p) for p in self.points)
        if not pts:
            raise ValueError("a finite subset must be nonempty")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError(f"points must be strictly increasing: {pts}")
        if self.capacity < 1:
            raise ValueError(f"capacity must be positive, got {self.capacity}")
        if len(pts) > self.capacity:
            raise CapacityError(f"{len(pts)} points exceed capacity {self.capacity}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, xs: Iterable[Rational], k: int | None = None) -> "FiniteSubset":
        pts = tuple(sorted({angle(x) for x in xs}))
        return cls(pts, len(pts) if k is None else k)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return angle(x) in self.points

    def to_json(self) -> str:
        return json.dumps([format_angle(p) for p in self.points])

    @classmethod
    def from_json(cls, text: str, k: int | None = None) -> "FiniteSubset":
        return cls.of((parse_angle(s) for s in json.loads(text)), k)


def quotient_tuple(xs: Sequence[Rational], k: int) -> FiniteSubset:
    """The quotient map ``(x_1, ..., x_k) -> {x_1} u ... u {x_k}``."""
    if not xs:
        raise ValueError("cannot form a subset from an empty tuple")
    if len(xs) > k:
        raise CapacityError(f"tuple of length {len(xs)} exceeds k={k}")
    return FiniteSubset.of(xs, k)


def rotate(subset: FiniteSubset, theta: Rational) -> FiniteSubset:
    theta = Fraction(theta)
    return FiniteSubset.of((p + theta for p in subset), subset.capacity)


def _divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


def stabilizer_order(subset: FiniteSubset) -> int:
    """Order of the cyclic group of rotations fixing ``subset``.

    A rotation fixing the set permutes its points freely, so only divisors
    of ``len(subset)`` need to be tried.
    """
    return max(m for m in _divisors(len(subset)) if rotate(subset, Fraction(1, m)) == subset)


def apply_power_map(subset: FiniteSubset, d: int) -> FiniteSubset:
    """Image of ``subset`` under ``z -> z**d``."""
    return FiniteSubset.of((d * p for p in subset), subset.capacity)


def union_with_basepoint(subset: FiniteSubset, k: int) -> FiniteSubset:
    if len(subset) > k - 1:
        raise CapacityError(f"need |subset| <= k-1 = {k - 1}, got {len(subset)}")
    return FiniteSubset.of((*subset.points, 0), k)
