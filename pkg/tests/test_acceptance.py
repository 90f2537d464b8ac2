"""The eleven acceptance criteria, each timed against its limit.

A PASS/FAIL line per criterion is printed in the terminal summary.  Run
alone with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from expcircle import circle_cells as cc
from expcircle import degrees, groups
from expcircle.complexes import (
    HomologyGroup,
    IntMatrix,
    boundary_matrices,
    check_chain_map,
    euler_characteristic,
    homology,
    induced_map_on_homology,
    reduced_homology,
)
from expcircle.groups import GroupPresentation

from test_groups import TREFOIL_FOX


@pytest.fixture
def criterion(acceptance_log):
    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            acceptance_log.append((number, title, ok and within, elapsed, limit))
            print(f"[{'PASS' if ok and within else 'FAIL'}] {number}. {title} ({elapsed:.3f}s)")
        assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def random_weights(rng, n, denom=60):
    """n weights summing to 1, some of them zero."""
    while True:
        raw = [rng.randint(0, denom) if rng.random() < 0.8 else 0 for _ in range(n)]
        if any(raw):
            return tuple(F(v, sum(raw)) for v in raw)


def test_01_homology_is_an_odd_sphere(criterion):
    with criterion(1, "H_*(exp_k) = H_*(S^(2ceil(k/2)-1)), k=1..12", 1):
        for k in range(1, 13):
            n = 2 * -(-k // 2) - 1
            expected = [HomologyGroup(1 if i in (0, n) else 0) for i in range(k + 1)]
            assert homology(boundary_matrices(cc.exp_cell_complex(k))) == expected, k


def test_02_boundary_closed_form(criterion):
    with criterion(2, "boundary matrices equal D_i, k=2..12", 1):
        for k in range(2, 13):
            C = boundary_matrices(cc.exp_cell_complex(k))
            for i in range(2, k + 1):
                c = (1 + (-1) ** i) // 2
                D = [[-c, 0], [2 * c, c]]
                expected = IntMatrix.from_rows(D if i < k else [[D[0][0]], [D[1][0]]])
                assert C.boundary(i) == expected, (k, i)
            assert C.boundary(1).is_zero()


def test_03_inclusion_doubles_top_class(criterion):
    with criterion(3, "exp_(2l-1) -> exp_(2l) is x2 on H_(2l-1), l=1..5", 1):
        for l in range(1, 6):
            src = boundary_matrices(cc.exp_cell_complex(2 * l - 1))
            dst = boundary_matrices(cc.exp_cell_complex(2 * l))
            f = cc.inclusion_chain_map(2 * l - 1, 2 * l)
            check_chain_map(f, src, dst)
            # generators: sigma_(2l-1) upstairs, tau_(2l-1) downstairs
            M = induced_map_on_homology(f, src, dst, 2 * l - 1, [[1]], [[0, 1]])
            assert M == IntMatrix.from_rows([[2]]), l


def test_04_basepoint_subspace(criterion):
    with criterion(4, "reduced H_*(exp^1_k) closed form, k=1..10; sigma -> tau", 1):
        for k in range(1, 11):
            red = reduced_homology(boundary_matrices(cc.expcupone_cell_complex(k)))
            expected = [HomologyGroup(1 if (i == k - 1 and i % 2 == 1) else 0) for i in range(k)]
            assert red == expected, k
            if k % 2 == 0:
                f = cc.basepoint_union_chain_map(k)
                check_chain_map(
                    f,
                    boundary_matrices(cc.exp_cell_complex(k - 1)),
                    boundary_matrices(cc.expcupone_cell_complex(k)),
                )
                assert f[k - 1] == IntMatrix.from_rows([[1]]), k


def test_05_degree_formula_against_oracle(criterion):
    with criterion(5, "degree oracle = d^floor((k+1)/2); inverse oracle", 60):
        for k, d in itertools.product((1, 3, 5, 7), (1, 2, 3)):
            assert degrees.degree_oracle(k, d) == degrees.degree_formula(k, d) == d ** ((k + 1) // 2), (k, d)
        for k in (1, 3, 5, 7, 9):
            assert degrees.degree_oracle_inverse(k) == degrees.degree_formula(k, -1), k


def test_06_euler_characteristic(criterion):
    with criterion(6, "chi(exp_k) = 0, k=1..12", 1):
        for k in range(1, 13):
            assert euler_characteristic(boundary_matrices(cc.exp_cell_complex(k))) == 0, k


def test_07_group_invariants(criterion):
    with criterion(7, "abelianizations, Tietze reduction, trefoil Alexander polynomial", 1):
        P = GroupPresentation.from_syllables(["a", "b"], [[("a", 1)], [("a", 2), ("b", -1)]])
        assert P == groups.pi1_exp3()
        assert groups.abelianization(P).is_trivial
        assert groups.tietze_simplify(P) == GroupPresentation((), ())
        for k in range(2, 9):
            assert groups.abelianization(groups.complement_group(k)) == HomologyGroup(1), k
        G = groups.complement_group(3)
        r, image = G.relators[0], TREFOIL_FOX["image"]
        assert groups.fox_derivative(r, 1, image).to_list() == TREFOIL_FOX["d_alpha"]
        assert groups.fox_derivative(r, 2, image) == groups.LaurentPolynomial(TREFOIL_FOX["d_beta"])
        delta = groups.fox_alexander(G)
        assert delta.to_list() == TREFOIL_FOX["alexander"]
        assert str(delta) == "t^2 - t + 1"


def test_08_seifert_steps(criterion):
    with criterion(8, "Seifert alpha solutions, reversal equivalence, Euler numbers", 1):
        assert sorted(groups.seifert_alpha_solutions()) == [-2, -1]
        M1 = groups.SeifertData(0, 0, (F(1, 2), F(-1, 3)))
        M2 = groups.SeifertData(0, 0, (F(1, 2), F(-2, 3)))
        assert groups.seifert_equivalent(groups.seifert_reverse(M1), M2) is True
        assert (M1.euler_number, M2.euler_number) == (F(1, 6), F(-1, 6))


def test_09_prism_model(criterion):
    with criterion(9, "prism round trips, fake face, phi^k = id, orientation", 5):
        rng = random.Random(9)
        done = 0
        while done < 1000:
            k = rng.randint(2, 8)
            xs = tuple(sorted(F(rng.randint(0, 97), 97) for _ in range(k)))
            if xs[0] == 0 and xs[-1] == 1:
                continue
            x = cc.SimplexPoint(xs)
            p = cc.simplex_to_prism(x)
            assert cc.prism_to_simplex(p) == x
            if p.a[-1] != 1:
                assert cc.simplex_to_prism(cc.prism_to_simplex(p)) == p
            done += 1
        for xs in [(0, F(1, 2), 1), (0, 1), (0, F(1, 3), F(2, 3), 1)]:
            with pytest.raises(cc.FakeFaceError):
                cc.simplex_to_prism(cc.SimplexPoint(xs))
        for k in range(2, 9):
            for _ in range(50):
                a = tuple(sorted(F(rng.randint(0, 97), 97) for _ in range(k - 1)))
                b = a
                for _ in range(k):
                    b = cc.monodromy_phi(b)
                assert b == a
            assert cc.monodromy_orientation_sign(k) == (-1) ** (k + 1)


def test_10_retractions(criterion):
    with criterion(10, "psi lands on last edge with face condition; star retraction", 10):
        rng = random.Random(10)
        done = 0
        while done < 500:
            n = rng.randint(1, 5)
            w = random_weights(rng, n + 1)
            if n >= 2 and w[-1] == 0 and w[-2] == 0:
                continue
            end = cc.edge_retraction_psi(w, 1)
            assert all(v == 0 for v in end[:-2]) and sum(end) == 1
            support = {i for i, v in enumerate(w) if v}
            for t in (F(rng.randint(0, 12), 12), 1):
                out = cc.edge_retraction_psi(w, t)
                assert {i for i, v in enumerate(out) if v} <= support
            done += 1
        for k in (3, 4):
            done = 0
            while done < 100:
                w = random_weights(rng, k)
                if sum(1 for v in w if v == 0) > 1:
                    continue
                t = F(rng.randint(0, 12), 12)
                out = cc.star_retraction(w, t)
                for perm in itertools.permutations(range(k)):
                    assert cc.star_retraction(tuple(w[i] for i in perm), t) == tuple(out[i] for i in perm)
                assert cc.on_star_graph(cc.star_retraction(w, 1))
                done += 1


def test_11_dehn_twist(criterion):
    with criterion(11, "Dehn twist arithmetic", 1):
        assert groups.dehn_twist(groups.SurfaceCurve(1, 3)) == groups.SurfaceCurve(-2, 3)
        assert groups.dehn_twist(groups.SurfaceCurve(1, 1)) == groups.SurfaceCurve(0, 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
