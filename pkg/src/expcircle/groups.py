"""Group presentations, Alexander polynomials and Seifert fibre data.

A word is a tuple of nonzero ints: ``i + 1`` is the i-th generator and
``-(i + 1)`` its inverse.  Words are freely reduced whenever they are built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .complexes import HomologyGroup, IntMatrix, smith_normal_form

__all__ = [
    "Word",
    "free_reduce",
    "cyclic_reduce",
    "GroupPresentation",
    "AbelianGroup",
    "complement_group",
    "pi1_exp3",
    "star_graph_presentation",
    "abelianization",
    "tietze_simplify",
    "LaurentPolynomial",
    "fox_derivative",
    "fox_alexander",
    "NotAKnotGroupError",
    "SeifertData",
    "seifert_gluing_determinant",
    "seifert_alpha_solutions",
    "seifert_first_homology",
    "seifert_reverse",
    "seifert_equivalent",
    "SurfaceCurve",
    "DEHN_TWIST",
    "dehn_twist",
]

Word = tuple[int, ...]
AbelianGroup = HomologyGroup


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def _invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens}")
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            for x in r:
                if not 1 <= abs(x) <= len(gens):
                    raise ValueError(f"letter {x} does not name a generator of {gens}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_syllables(cls, generators: Sequence[str], relators: Sequence[Sequence[tuple[str, int]]]):
        """Build from relators written as ``[("a", 3), ("b", -2)]``."""
        index = {g: i + 1 for i, g in enumerate(generators)}
        rels = []
        for rel in relators:
            letters = []
            for g, e in rel:
                letters += [index[g] if e > 0 else -index[g]] * abs(e)
            rels.append(tuple(letters))
        return cls(tuple(generators), tuple(rels))

    def syllables(self, w: Word) -> list[list]:
        out: list[list] = []
        for x in w:
            g, e = self.generators[abs(x) - 1], (1 if x > 0 else -1)
            if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
                out[-1][1] += e
            else:
                out.append([g, e])
        return out

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        return "".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables(w))

    def __str__(self) -> str:
        return f"<{', '.join(self.generators)} | {', '.join(self.word_str(r) for r in self.relators)}>"

    def to_dict(self) -> dict:
        return {"gens": list(self.generators), "rels": [self.syllables(r) for r in self.relators]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "GroupPresentation":
        return cls.from_syllables(data["gens"], [[(g, e) for g, e in rel] for rel in data["rels"]])


def complement_group(k: int) -> GroupPresentation:
    """pi_1 of exp_k minus exp_{k-2}: <alpha, beta | alpha^k = beta^(k-1)>."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return GroupPresentation.from_syllables(["alpha", "beta"], [[("alpha", k), ("beta", -(k - 1))]])


def pi1_exp3() -> GroupPresentation:
    return GroupPresentation.from_syllables(["a", "b"], [[("a", 1)], [("a", 2), ("b", -1)]])


def star_graph_presentation(k: int) -> GroupPresentation:
    """The 2-cell attaching word a^(k-1) c b^(-k) c^(-1) of the retract q(B x I).

    Recorded as data only: the 1-cells a, b, c need not be loops, so this is
    not claimed to present the fundamental group.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return GroupPresentation.from_syllables(
        ["a", "b", "c"], [[("a", k - 1), ("c", 1), ("b", -k), ("c", -1)]]
    )


def _exponent_matrix(G: GroupPresentation) -> IntMatrix:
    rows = []
    for r in G.relators:
        row = [0] * len(G.generators)
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=len(G.generators))


def abelianization(G: GroupPresentation) -> AbelianGroup:
    snf = smith_normal_form(_exponent_matrix(G))
    diag = snf.diagonal
    return HomologyGroup(
        rank=len(G.generators) - snf.rank,
        torsion=tuple(d for d in diag if d > 1),
    )


def _substitute(w: Word, gen: int, replacement: Word) -> Word:
    out: list[int] = []
    inverse = _invert(replacement)
    for x in w:
        if abs(x) == gen:
            out += replacement if x > 0 else inverse
        else:
            out.append(x)
    return free_reduce(out)


def _drop_generator(w: Word, gen: int) -> Word:
    return tuple(x - 1 if x > gen else x + 1 if x < -gen else x for x in w)


def tietze_simplify(G: GroupPresentation) -> GroupPresentation:
    """Eliminate generators that occur exactly once in some relator, until none do.

    Relators are cyclically reduced and empty or repeated relators dropped
    along the way.  Each step is a Tietze move, so the group is unchanged.
    """
    gens = list(G.generators)
    rels = [cyclic_reduce(r) for r in G.relators]
    while True:
        rels = list(dict.fromkeys(r for r in rels if r))
        choice = None
        for ri in sorted(range(len(rels)), key=lambda i: (len(rels[i]), i)):
            r = rels[ri]
            for g in range(1, len(gens) + 1):
                positions = [p for p, x in enumerate(r) if abs(x) == g]
                if len(positions) == 1:
                    choice = (ri, g, positions[0])
                    break
            if choice:
                break
        if choice is None:
            break
        ri, g, p = choice
        r = rels.pop(ri)
        # r = u x^e v, cyclically x^e (v u) = 1, so x^e = (v u)^-1
        rest = r[p + 1 :] + r[:p]
        value = _invert(rest) if r[p] > 0 else free_reduce(rest)
        rels = [_drop_generator(cyclic_reduce(_substitute(q, g, value)), g) for q in rels]
        del gens[g - 1]
    return GroupPresentation(tuple(gens), tuple(rels))


# ---------------------------------------------------------------------------
# Laurent polynomials and Fox calculus


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, stored as {exponent: coefficient}."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: c for e, c in sorted(self.coeffs.items()) if c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def from_list(cls, coefficients: Sequence[int], low: int = 0) -> "LaurentPolynomial":
        """Coefficients listed from exponent ``low`` upward."""
        return cls({low + i: c for i, c in enumerate(coefficients)})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t) -> Fraction:
        return sum((Fraction(t) ** e * c for e, c in self.coeffs.items()), Fraction(0))

    @property
    def low(self) -> int:
        return min(self.coeffs)

    @property
    def high(self) -> int:
        return max(self.coeffs)

    def to_list(self) -> list[int]:
        """Coefficients from the lowest exponent to the highest."""
        if self.is_zero():
            return []
        return [self.coeffs.get(e, 0) for e in range(self.low, self.high + 1)]

    def normalized(self) -> "LaurentPolynomial":
        """Representative up to units +-t^n: lowest exponent 0, positive leading coefficient."""
        if self.is_zero():
            return self
        sign = 1 if self.coeffs[self.high] > 0 else -1
        return LaurentPolynomial({e - self.low: sign * c for e, c in self.coeffs.items()})

    def exact_divide(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        rem = dict(self.coeffs)
        quot: dict[int, int] = {}
        lead_e, lead_c = other.high, other.coeffs[other.high]
        lowest_shift = self.low - other.low
        while rem:
            e = max(rem)
            shift = e - lead_e
            q, r = divmod(rem[e], lead_c)
            if r or shift < lowest_shift:
                raise ValueError(f"{self} is not divisible by {other}")
            quot[shift] = q
            for oe, oc in other.coeffs.items():
                rem[oe + shift] = rem.get(oe + shift, 0) - q * oc
                if rem[oe + shift] == 0:
                    del rem[oe + shift]
        return LaurentPolynomial(quot)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "" if e == 0 else "t" if e == 1 else f"t^{e}"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+") else "-" + s[2:]

    def to_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in self.coeffs.items()}


class NotAKnotGroupError(ValueError):
    """The presentation does not abelianize to the infinite cyclic group."""


def fox_derivative(w: Word, gen: int, image: Sequence[int]) -> LaurentPolynomial:
    """Fox derivative of ``w`` in generator ``gen`` (1-based), pushed into Z[t, 1/t].

    ``image[i]`` is the exponent of t that generator i+1 maps to.
    """
    total: dict[int, int] = {}
    prefix = 0
    for x in w:
        e = image[abs(x) - 1]
        if x > 0:
            if x == gen:
                total[prefix] = total.get(prefix, 0) + 1
            prefix += e
        else:
            prefix -= e
            if -x == gen:
                total[prefix] = total.get(prefix, 0) - 1
    return LaurentPolynomial(total)


def _abelianizing_exponents(G: GroupPresentation) -> tuple[int, int]:
    p, q = _exponent_matrix(G).entries[0]
    g = gcd(p, q)
    if g != 1:
        raise NotAKnotGroupError(f"relator exponent sums ({p}, {q}) do not give Z")
    # p*x + q*y = 0 with gcd(x, y) = 1
    return (-q, p)


def fox_alexander(G: GroupPresentation) -> LaurentPolynomial:
    """Alexander polynomial of a two-generator, one-relator group with abelianization Z.

    With images t^m, t^n of the generators, the Fox derivative of the relator
    in the first generator equals Delta(t) (t^n - 1) / (t - 1) up to units.
    """
    if len(G.generators) != 2 or len(G.relators) != 1:
        raise ValueError("need a presentation with two generators and one relator")
    if abelianization(G) != HomologyGroup(1):
        raise NotAKnotGroupError(f"abelianization of {G} is {abelianization(G)}, not Z")
    image = _abelianizing_exponents(G)
    r = G.relators[0]
    # divide by t^n - 1 for whichever generator has nonzero image n
    wrt, other = (1, 1) if image[1] else (2, 0)
    n = image[other]
    A = fox_derivative(r, wrt, image)
    t_minus_one = LaurentPolynomial({1: 1, 0: -1})
    denom = LaurentPolynomial({abs(n): 1, 0: -1})
    return (A * t_minus_one).exact_divide(denom).normalized()


# ---------------------------------------------------------------------------
# Seifert fibred spaces


@dataclass(frozen=True)
class SeifertData:
    """Seifert invariants M(+-g, b; a_1/b_1, ..., a_n/b_n).

    ``genus`` carries the orientability sign of the orbit surface.
    """

    genus: int
    boundary: int
    slopes: tuple[Fraction, ...]

    def __post_init__(self):
        if self.boundary < 0:
            raise ValueError("boundary count must be non-negative")
        object.__setattr__(self, "slopes", tuple(Fraction(s) for s in self.slopes))

    @property
    def euler_number(self) -> Fraction:
        return sum(self.slopes, Fraction(0))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(s.denominator for s in self.slopes)

    def __str__(self) -> str:
        return f"M({self.genus},{self.boundary};{','.join(str(s) for s in self.slopes)})"


def seifert_gluing_determinant(alpha: int) -> int:
    """det [[2, -3], [1, alpha]], the order of H_1 after refilling slopes 1/2 and alpha/3."""
    return IntMatrix.from_rows([[2, -3], [1, alpha]]).determinant()


def seifert_alpha_solutions() -> list[int]:
    """The integers alpha making the refilled manifold have trivial first homology.

    The determinant is 2*alpha + 3, so alpha = (+-1 - 3) / 2.
    """
    out = []
    for det in (1, -1):
        alpha, r = divmod(det - 3, 2)
        if r == 0 and seifert_gluing_determinant(alpha) == det:
            out.append(alpha)
    return out


def seifert_first_homology(alpha: int) -> HomologyGroup:
    """H_1 of the circle bundle over the annulus with discs glued along 2b+f and -3b+alpha*f."""
    return abelianization(
        GroupPresentation.from_syllables(
            ["b", "f"],
            [[("b", 2), ("f", 1)], [("b", -3), ("f", alpha)]],
        )
    )


def seifert_reverse(M: SeifertData) -> SeifertData:
    return SeifertData(M.genus, M.boundary, tuple(-s for s in M.slopes))


def seifert_equivalent(M1: SeifertData, M2: SeifertData) -> bool:
    """Equal up to changing slopes by integers while keeping their sum."""
    if (M1.genus, M1.boundary) != (M2.genus, M2.boundary):
        raise ValueError(f"orbit data differ: {M1} vs {M2}")
    return sorted(s % 1 for s in M1.slopes) == sorted(s % 1 for s in M2.slopes) and (
        M1.euler_number == M2.euler_number
    )


# ---------------------------------------------------------------------------
# curves on a Heegaard torus


@dataclass(frozen=True)
class SurfaceCurve:
    """A (p, q) curve: p times the meridian, q times the longitude."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("(0, 0) is not a curve")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not primitive")


DEHN_TWIST = ((1, -1), (0, 1))


def dehn_twist(curve: SurfaceCurve) -> SurfaceCurve:
    (a, b), (c, d) = DEHN_TWIST
    return SurfaceCurve(a * curve.p + b * curve.q, c * curve.p + d * curve.q)
