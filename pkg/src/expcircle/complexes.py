"""Integer chain complexes of Delta-complexes and their homology.

Everything is exact: matrices hold Python ints, and homology is read off a
Smith normal form that also tracks the unimodular change-of-basis matrices
(and their inverses), so cycle representatives and induced maps on homology
come out as explicit integer data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

__all__ = [
    "IntMatrix",
    "SNFResult",
    "DeltaComplex",
    "ChainComplex",
    "HomologyGroup",
    "HomologyBasis",
    "MalformedComplexError",
    "NotAChainMapError",
    "smith_normal_form",
    "boundary_matrices",
    "homology_at",
    "homology_basis",
    "homology",
    "reduced_homology",
    "euler_characteristic",
    "induced_map_on_homology",
    "check_chain_map",
]


class MalformedComplexError(ValueError):
    pass


class NotAChainMapError(ValueError):
    """The candidate chain map fails to commute with the boundaries."""

    def __init__(self, dimension: int):
        super().__init__(f"chain map does not commute with the boundary in dimension {dimension}")
        self.dimension = dimension


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        ents = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ents) != self.rows or any(len(row) != self.cols for row in ents):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, tuple((v,) for v in values))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def col(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().entries
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in self.entries),
        )

    def __mul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(scalar * x for x in r) for r in self.entries))

    __rmul__ = __mul__

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return [sum(a * b for a, b in zip(row, v)) for row in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``U_inv`` and ``V_inv`` are carried along so callers never have to invert
    an integer matrix themselves.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A: IntMatrix) -> SNFResult:
    m, n = A.shape
    a = A.tolist()
    U = IntMatrix.identity(m).tolist()
    Ui = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    Vi = IntMatrix.identity(n).tolist()

    # Row op R_i += c R_j on A corresponds to the same op on U and to
    # C_j -= c C_i on U^{-1}; column ops mirror this with V and V^{-1}.
    def add_row(i, j, c):
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def add_col(i, j, c):
        for row in a:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]
        Vi[j] = [x - c * y for x, y in zip(Vi[j], Vi[i])]

    def swap_cols(i, j):
        for mat in (a, V):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                # a remainder survived: move the smallest one to the pivot
                _, pi, pj = min(
                    [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                    + [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                )
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            # enforce divisibility by pulling the offending row into row t
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    def mk(rows, r, c):
        return IntMatrix(r, c, tuple(tuple(x) for x in rows))

    return SNFResult(mk(U, m, m), mk(a, m, n), mk(V, n, n), mk(Ui, m, m), mk(Vi, n, n))


# ---------------------------------------------------------------------------
# Delta-complexes and chain complexes


@dataclass(frozen=True)
class DeltaComplex:
    """Cells by dimension plus ordered face tables.

    ``faces[c][j]`` is the cell glued onto the face of ``c`` opposite its
    j-th vertex.
    """

    cells: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))
        object.__setattr__(self, "faces", {c: tuple(f) for c, f in self.faces.items()})
        self.validate()

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def dim_of(self, cell: str) -> int:
        for i, cs in enumerate(self.cells):
            if cell in cs:
                return i
        raise KeyError(cell)

    def validate(self) -> None:
        seen = set()
        for i, cs in enumerate(self.cells):
            for c in cs:
                if c in seen:
                    raise MalformedComplexError(f"duplicate cell {c!r}")
                seen.add(c)
                fs = self.faces.get(c, ())
                if i == 0:
                    if fs:
                        raise MalformedComplexError(f"vertex {c!r} has faces")
                    continue
                if len(fs) != i + 1:
                    raise MalformedComplexError(f"{i}-cell {c!r} has {len(fs)} faces, expected {i + 1}")
                lower = self.cells[i - 1]
                for f in fs:
                    if f not in lower:
                        raise MalformedComplexError(f"face {f!r} of {c!r} is not a {i - 1}-cell")
        extra = set(self.faces) - seen
        if extra:
            raise MalformedComplexError(f"faces given for unknown cells {sorted(extra)}")


@dataclass(frozen=True)
class ChainComplex:
    """``boundaries[i]`` maps C_i to C_{i-1}; ``boundaries[0]`` is 0 x ranks[0]."""

    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if len(self.boundaries) != len(self.ranks):
            raise MalformedComplexError("need exactly one boundary matrix per dimension")
        for i, (r, d) in enumerate(zip(self.ranks, self.boundaries)):
            below = self.ranks[i - 1] if i else 0
            if d.shape != (below, r):
                raise MalformedComplexError(f"boundary[{i}] has shape {d.shape}, expected {(below, r)}")

    @property
    def dimension(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, i: int) -> IntMatrix:
        """The boundary out of C_i, with zero maps outside the stored range."""
        if i > self.dimension:
            return IntMatrix.zeros(self.rank(i - 1), 0)
        return self.boundaries[i]

    def rank(self, i: int) -> int:
        return self.ranks[i] if 0 <= i <= self.dimension else 0

    def is_complex(self) -> bool:
        return all((self.boundary(i - 1) @ self.boundary(i)).is_zero() for i in range(2, self.dimension + 1))

    def to_dict(self) -> dict:
        return {"ranks": list(self.ranks), "boundaries": [d.tolist() for d in self.boundaries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "ChainComplex":
        ranks = list(data["ranks"])
        mats = []
        for i, (r, rows) in enumerate(zip(ranks, data["boundaries"])):
            mats.append(IntMatrix.from_rows(rows, cols=r) if rows else IntMatrix.zeros(ranks[i - 1] if i else 0, r))
        return cls(tuple(ranks), tuple(mats))


def boundary_matrices(X: DeltaComplex) -> ChainComplex:
    X.validate()
    mats = [IntMatrix.zeros(0, len(X.cells[0]))]
    for i in range(1, len(X.cells)):
        index = {c: r for r, c in enumerate(X.cells[i - 1])}
        rows = [[0] * len(X.cells[i]) for _ in X.cells[i - 1]]
        for col, c in enumerate(X.cells[i]):
            for j, f in enumerate(X.faces[c]):
                rows[index[f]][col] += (-1) ** j
        mats.append(IntMatrix(len(X.cells[i - 1]), len(X.cells[i]), tuple(map(tuple, rows))))
    return ChainComplex(tuple(len(c) for c in X.cells), tuple(mats), X.cells)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()
    generators: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion coefficients must form a divisibility chain: {self.torsion}")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * (self.rank > 0)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class HomologyBasis:
    """Generators of H_i with the data needed to express cycles in them.

    ``orders[j]`` is the order of ``cycles[j]`` in homology, 0 meaning
    infinite; torsion generators come first.
    """

    dim: int
    cycles: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    _kernel_rank: int  # rank of the outgoing boundary
    _to_kernel: IntMatrix  # V^{-1} of the outgoing boundary's SNF
    _to_quotient: IntMatrix  # U of the incoming boundary's SNF (kernel coordinates)
    _kept: tuple[int, ...]  # quotient coordinates that survive

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(
            rank=sum(1 for o in self.orders if o == 0),
            torsion=tuple(o for o in self.orders if o),
            generators=self.cycles,
        )

    def coordinates(self, z: Sequence[int]) -> list[int]:
        """Coordinates of the class of cycle ``z``; torsion entries reduced mod their order."""
        y = self._to_kernel.apply(list(z))
        if any(y[: self._kernel_rank]):
            raise ValueError(f"{list(z)} is not a cycle")
        w = self._to_quotient.apply(y[self._kernel_rank :])
        return [w[j] % o if o else w[j] for j, o in zip(self._kept, self.orders)]


def homology_basis(C: ChainComplex, i: int) -> HomologyBasis:
    if not 0 <= i <= C.dimension:
        raise IndexError(f"dimension {i} outside 0..{C.dimension}")
    n = C.rank(i)
    out = smith_normal_form(C.boundary(i))
    r = out.rank
    # columns r.. of V span ker(boundary_i)
    kernel = [out.V.col(j) for j in range(r, n)]
    m = len(kernel)
    incoming = C.boundary(i + 1)
    # express the image of boundary_{i+1} in kernel coordinates
    proj = out.V_inv.tolist()[r:]
    X = IntMatrix(m, n, tuple(map(tuple, proj))) @ incoming
    inn = smith_normal_form(X)
    diag = inn.diagonal + [0] * (m - len(inn.diagonal))
    # new kernel basis K @ U^{-1}
    K_cols = kernel
    Ui = inn.U_inv
    cycles, orders, kept = [], [], []
    order_key = sorted(range(m), key=lambda j: (diag[j] == 0, j))
    for j in order_key:
        d = abs(diag[j])
        if d == 1:
            continue
        vec = tuple(sum(K_cols[l][row] * Ui[l, j] for l in range(m)) for row in range(n))
        cycles.append(vec)
        orders.append(d)
        kept.append(j)
    return HomologyBasis(i, tuple(cycles), tuple(orders), r, out.V_inv, inn.U, tuple(kept))


def homology_at(C: ChainComplex, i: int) -> HomologyGroup:
    return homology_basis(C, i).group


def homology(C: ChainComplex) -> list[HomologyGroup]:
    return [homology_at(C, i) for i in range(C.dimension + 1)]


def reduced_homology(C: ChainComplex) -> list[HomologyGroup]:
    """Homology with one free summand removed from H_0 (C assumed nonempty)."""
    groups = homology(C)
    h0 = groups[0]
    groups[0] = HomologyGroup(max(h0.rank - 1, 0), h0.torsion)
    return groups


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** i * r for i, r in enumerate(C.ranks))


def check_chain_map(f: Sequence[IntMatrix], source: ChainComplex, target: ChainComplex) -> None:
    """Raise NotAChainMapError unless ``d' f_i == f_{i-1} d`` in every dimension."""
    if len(f) != source.dimension + 1:
        raise ValueError(f"need {source.dimension + 1} component matrices, got {len(f)}")
    for i, fi in enumerate(f):
        if fi.shape != (target.rank(i), source.rank(i)):
            raise ValueError(f"component {i} has shape {fi.shape}, expected {(target.rank(i), source.rank(i))}")
    for i in range(1, len(f)):
        if target.boundary(i) @ f[i] != f[i - 1] @ source.boundary(i):
            raise NotAChainMapError(i)


def _columns(cols: list[list[int]], rows: int) -> IntMatrix:
    if not cols:
        return IntMatrix.zeros(rows, 0)
    return IntMatrix.from_rows([list(r) for r in zip(*cols)], cols=len(cols))


def _change_of_basis(basis: HomologyBasis, cycles: Sequence[Sequence[int]]) -> IntMatrix:
    if any(basis.orders):
        raise ValueError("explicit generators are only supported for free homology")
    P = _columns([basis.coordinates(z) for z in cycles], len(basis.cycles))
    if P.rows != P.cols or abs(P.determinant()) != 1:
        raise ValueError("the given cycles do not form a basis of homology")
    return P


def induced_map_on_homology(
    f: Sequence[IntMatrix],
    source: ChainComplex,
    target: ChainComplex,
    i: int,
    source_generators: Sequence[Sequence[int]] | None = None,
    target_generators: Sequence[Sequence[int]] | None = None,
) -> IntMatrix:
    """Matrix of f_* : H_i(source) -> H_i(target).

    Column j holds the coordinates of the image of the j-th source generator.
    By default the generators are the ones homology_basis computes; explicit
    cycles may be supplied instead when H_i is free on both sides.
    """
    check_chain_map(f, source, target)
    src = homology_basis(source, i)
    dst = homology_basis(target, i)
    M = _columns([dst.coordinates(f[i].apply(list(z))) for z in src.cycles], len(dst.cycles))
    if source_generators is not None:
        M = M @ _change_of_basis(src, source_generators)
    if target_generators is not None:
        P = _change_of_basis(dst, target_generators)
        snf = smith_normal_form(P)
        M = snf.V @ snf.U @ M  # P is unimodular, so P^{-1} = V U
    return M
