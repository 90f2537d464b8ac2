"""Cell structures and coordinate models specific to the circle.

Cells of exp_k(S^1) are named ``sigma_i`` (0 <= i <= k), the image of the
simplex 0 <= x_1 <= ... <= x_i <= 1, and ``tau_i`` (1 <= i <= k-1), the
subsets that contain the basepoint.  The single vertex is ``sigma_0``, which
doubles as ``tau_0``.

Points of the simplex model are nondecreasing coordinate tuples; points of
the prism model Delta x I are ``(a, t)`` with ``a`` nondecreasing.
Barycentric points are plain weight tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complexes import (
    ChainComplex,
    DeltaComplex,
    HomologyGroup,
    IntMatrix,
    boundary_matrices,
    homology,
)
from .subsets import FiniteSubset, format_angle, quotient_tuple

__all__ = [
    "sigma",
    "tau",
    "exp_cell_complex",
    "expcupone_cell_complex",
    "exp_truncated_complex",
    "closed_form_boundary",
    "sphere_dimension",
    "sphere_homology",
    "exp_homology_table",
    "inclusion_chain_map",
    "basepoint_union_chain_map",
    "SimplexPoint",
    "PrismPoint",
    "FakeFaceError",
    "prism_to_simplex",
    "simplex_to_prism",
    "simplex_point_subset",
    "monodromy_phi",
    "monodromy_linear_part",
    "monodromy_orientation_sign",
    "DeletedFaceError",
    "psi_stage",
    "edge_retraction_psi",
    "star_retraction",
    "on_star_graph",
    "barycentre",
    "facet_barycentre",
]


def sigma(i: int) -> str:
    return f"sigma_{i}"


def tau(i: int) -> str:
    return sigma(0) if i == 0 else f"tau_{i}"


def _sigma_faces(i: int) -> tuple[str, ...]:
    # faces 0 and i are both the basepoint-containing cell one dimension down
    return (tau(i - 1),) + (sigma(i - 1),) * (i - 1) + (tau(i - 1),)


def _tau_faces(i: int) -> tuple[str, ...]:
    return (tau(i - 1),) * (i + 1)


def _build(cells: list[list[str]]) -> DeltaComplex:
    faces = {}
    for dim, cs in enumerate(cells):
        for c in cs:
            if dim:
                faces[c] = _sigma_faces(dim) if c.startswith("sigma") else _tau_faces(dim)
    return DeltaComplex(tuple(map(tuple, cells)), faces)


def exp_cell_complex(k: int) -> DeltaComplex:
    """The Delta-complex structure on exp_k(S^1).

    Per dimension the cells are listed sigma first, then tau.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    cells = [[sigma(0)]]
    for i in range(1, k + 1):
        cells.append([sigma(i)] + ([tau(i)] if i < k else []))
    return _build(cells)


def expcupone_cell_complex(k: int) -> DeltaComplex:
    """exp_k(S^1) restricted to subsets containing the basepoint: one cell per dimension < k."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return _build([[tau(i)] for i in range(k)])


def exp_truncated_complex(n: int) -> DeltaComplex:
    """All cells sigma_i, tau_i of dimension <= n of the full space exp(S^1)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return _build([[sigma(0)]] + [[sigma(i), tau(i)] for i in range(1, n + 1)])


def closed_form_boundary(k: int, i: int) -> IntMatrix:
    """The boundary matrix of exp_k(S^1) in dimension i as predicted in closed form."""
    c = (1 + (-1) ** i) // 2
    D = [[-c, 0], [2 * c, c]]
    if i == 0:
        return IntMatrix.zeros(0, 1)
    if i == 1:
        return IntMatrix.zeros(1, 2 if k > 1 else 1)
    if i < k:
        return IntMatrix.from_rows(D)
    if i == k:
        return IntMatrix.column([D[0][0], D[1][0]])
    raise ValueError(f"no dimension {i} in exp_{k}")


def sphere_dimension(k: int) -> int:
    return 2 * ((k + 1) // 2) - 1


def sphere_homology(n: int, length: int | None = None) -> list[HomologyGroup]:
    """H_0..H_{length-1} of the n-sphere (``length`` defaults to n + 1)."""
    return [HomologyGroup(1 if i in (0, n) else 0) for i in range(n + 1 if length is None else length)]


def exp_homology_table(k_max: int) -> dict[int, list[HomologyGroup]]:
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    return {k: homology(boundary_matrices(exp_cell_complex(k))) for k in range(1, k_max + 1)}


def _cell_map(src: DeltaComplex, dst: DeltaComplex, rename) -> list[IntMatrix]:
    mats = []
    for i, cs in enumerate(src.cells):
        targets = dst.cells[i] if i < len(dst.cells) else ()
        rows = [[0] * len(cs) for _ in targets]
        for j, c in enumerate(cs):
            rows[targets.index(rename(c))][j] = 1
        mats.append(IntMatrix(len(targets), len(cs), tuple(map(tuple, rows))))
    return mats


def inclusion_chain_map(k_from: int, k_to: int) -> list[IntMatrix]:
    """Chain map of exp_{k_from} -> exp_{k_to}, sending each cell to the cell of the same name."""
    if not 1 <= k_from < k_to:
        raise ValueError(f"need 1 <= k_from < k_to, got {k_from}, {k_to}")
    return _cell_map(exp_cell_complex(k_from), exp_cell_complex(k_to), lambda c: c)


def basepoint_union_chain_map(k: int) -> list[IntMatrix]:
    """Chain map of Lambda -> Lambda u {1}, from exp_{k-1} to the basepoint subspace of exp_k.

    On the simplex model this appends the coordinate 1, so sigma_i and tau_i
    both land on tau_i.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return _cell_map(
        exp_cell_complex(k - 1),
        expcupone_cell_complex(k),
        lambda c: tau(int(c.rsplit("_", 1)[1])),
    )


# ---------------------------------------------------------------------------
# simplex and prism models


class FakeFaceError(ValueError):
    """The point lies on the face where the prism coordinates are undefined."""


def _check_chain(xs: Sequence[Fraction], what: str) -> None:
    if any(x < 0 or x > 1 for x in xs) or any(a > b for a, b in zip(xs, xs[1:])):
        raise ValueError(f"{what} must be nondecreasing in [0, 1]: {list(map(str, xs))}")


@dataclass(frozen=True)
class SimplexPoint:
    x: tuple[Fraction, ...]

    def __post_init__(self):
        x = tuple(Fraction(v) for v in self.x)
        if not x:
            raise ValueError("a simplex point needs at least one coordinate")
        _check_chain(x, "simplex coordinates")
        object.__setattr__(self, "x", x)

    @property
    def k(self) -> int:
        return len(self.x)

    def to_json(self) -> str:
        return json.dumps([format_angle(v) for v in self.x])

    @classmethod
    def from_json(cls, text: str) -> "SimplexPoint":
        return cls(tuple(Fraction(s) for s in json.loads(text)))


@dataclass(frozen=True)
class PrismPoint:
    a: tuple[Fraction, ...]
    t: Fraction

    def __post_init__(self):
        a = tuple(Fraction(v) for v in self.a)
        t = Fraction(self.t)
        _check_chain(a, "prism coordinates")
        if not 0 <= t <= 1:
            raise ValueError(f"t must lie in [0, 1], got {t}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "t", t)

    @property
    def k(self) -> int:
        return len(self.a) + 1

    def to_json(self) -> str:
        return json.dumps({"a": [format_angle(v) for v in self.a], "t": format_angle(self.t)})

    @classmethod
    def from_json(cls, text: str) -> "PrismPoint":
        data = json.loads(text)
        return cls(tuple(Fraction(s) for s in data["a"]), Fraction(data["t"]))


def prism_to_simplex(p: PrismPoint) -> SimplexPoint:
    last = p.a[-1] if p.a else Fraction(0)
    shift = (1 - last) * p.t
    return SimplexPoint((shift,) + tuple(ai + shift for ai in p.a))


def simplex_to_prism(x: SimplexPoint) -> PrismPoint:
    first, last = x.x[0], x.x[-1]
    denom = 1 - last + first
    if denom == 0:
        raise FakeFaceError(f"{list(map(str, x.x))} lies on the fake face (x_1 = 0, x_k = 1)")
    return PrismPoint(tuple(v - first for v in x.x[1:]), first / denom)


def simplex_point_subset(x: SimplexPoint) -> FiniteSubset:
    """The point of exp_k(S^1) represented by a simplex point."""
    return quotient_tuple(list(x.x), x.k)


def monodromy_phi(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """The affine map gluing the top of the prism to its bottom."""
    a = tuple(Fraction(v) for v in a)
    if not a:
        return ()
    shift = 1 - a[-1]
    return (shift,) + tuple(v + shift for v in a[:-1])


def monodromy_linear_part(k: int) -> list[list[int]]:
    """Matrix of the linear part of monodromy_phi on R^{k-1}."""
    n = k - 1
    rows = []
    for i in range(n):
        row = [0] * n
        if i:
            row[i - 1] += 1
        row[n - 1] -= 1
        rows.append(row)
    return rows


def monodromy_orientation_sign(k: int) -> int:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    det = IntMatrix.from_rows(monodromy_linear_part(k)).determinant()
    return 1 if det > 0 else -1


# ---------------------------------------------------------------------------
# retractions


class DeletedFaceError(ValueError):
    """The point lies on the face removed before retracting."""


def _weights(w: Sequence) -> tuple[Fraction, ...]:
    w = tuple(Fraction(v) for v in w)
    if any(v < 0 for v in w) or sum(w) != 1:
        raise ValueError(f"barycentric weights must be non-negative and sum to 1: {list(map(str, w))}")
    return w


def psi_stage(w: Sequence, t, start: int = 0) -> tuple[Fraction, ...]:
    """One straight-line push of the weight at index ``start`` onto the later vertices.

    Weights before ``start`` are expected to be zero already.
    """
    w = _weights(w)
    t = Fraction(t)
    lam = w[start]
    if lam == 1:
        raise DeletedFaceError("cannot push a vertex away from itself")
    out = list(w)
    out[start] = (1 - t) * lam
    for i in range(start + 1, len(w)):
        out[i] = (1 - t) * w[i] + t * w[i] / (1 - lam)
    return tuple(out)


def edge_retraction_psi(w: Sequence, t) -> tuple[Fraction, ...]:
    """Retract [b_0..b_n] minus [b_0..b_{n-2}] onto the last edge [b_{n-1}, b_n].

    The n-1 stages run one after another, each over an equal share of [0, 1].
    """
    w = _weights(w)
    t = Fraction(t)
    n = len(w) - 1
    if n < 1:
        raise ValueError("need at least two vertices")
    if n >= 2 and w[-1] == 0 and w[-2] == 0:
        raise DeletedFaceError(f"{list(map(str, w))} lies on the deleted face")
    if not 0 <= t <= 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    stages = n - 1
    for j in range(stages):
        s = min(max(stages * t - j, Fraction(0)), Fraction(1))
        if s == 0:
            break
        w = psi_stage(w, s, j)
    return w


def barycentre(k: int) -> tuple[Fraction, ...]:
    return (Fraction(1, k),) * k


def facet_barycentre(k: int, i: int) -> tuple[Fraction, ...]:
    """Barycentre of the facet opposite vertex ``i``."""
    return tuple(Fraction(0) if j == i else Fraction(1, k - 1) for j in range(k))


def star_retraction(w: Sequence, t) -> tuple[Fraction, ...]:
    """Retract the simplex minus its codimension >= 2 faces onto the star graph.

    The point is located in the barycentric subdivision by sorting its
    weights; in that small simplex the edge retraction pushes it onto the
    segment from a facet barycentre to the barycentre.
    """
    w = _weights(w)
    k = len(w)
    if k < 2:
        raise ValueError("need a simplex of dimension at least 1")
    if sum(1 for v in w if v == 0) > 1:
        raise DeletedFaceError(f"{list(map(str, w))} lies on a codimension >= 2 face")
    # stable sort keeps the result independent of how ties are broken
    order = sorted(range(k), key=lambda i: -w[i])
    sw = [w[i] for i in order] + [Fraction(0)]
    # weights on beta_j = barycentre of the j+1 largest-weight vertices
    mu = [(j + 1) * (sw[j] - sw[j + 1]) for j in range(k)]
    mu = edge_retraction_psi(mu, t)
    out = [Fraction(0)] * k
    for pos, vertex in enumerate(order):
        out[vertex] = sum(mu[j] / (j + 1) for j in range(pos, k))
    return tuple(out)


def on_star_graph(w: Sequence) -> bool:
    """True when ``w`` lies on a segment from the barycentre to a facet barycentre.

    Those segments are exactly the points whose k-1 largest weights agree.
    """
    w = sorted(_weights(w))
    return all(v == w[-1] for v in w[1:])

