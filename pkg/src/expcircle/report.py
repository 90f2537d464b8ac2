"""Assembles the verification dossier written by ``expcircle report``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import circle_cells as cc
from . import degrees, groups
from .complexes import (
    boundary_matrices,
    euler_characteristic,
    homology,
    induced_map_on_homology,
    reduced_homology,
)
from .subsets import FiniteSubset, format_angle, stabilizer_order

PRISM_SAMPLES = 200
PRISM_SEED = 20020101
DEGREE_VALUES = (-1, 1, 2, 3)


@dataclass(frozen=True)
class ReportConfig:
    k_max: int
    out: Path | None = None
    format: str = "json"
    budget: int = 10**5

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        if self.budget < 1:
            raise ValueError(f"budget must be at least 1, got {self.budget}")
        if self.format not in ("json", "md"):
            raise ValueError(f"unknown format {self.format!r}")

    def key(self) -> dict:
        return {"k_max": self.k_max, "format": self.format, "budget": self.budget}


def homology_row(k: int) -> dict:
    C = boundary_matrices(cc.exp_cell_complex(k))
    groups_ = homology(C)
    n = cc.sphere_dimension(k)
    return {
        "k": k,
        "homology": [g.to_dict() for g in groups_],
        "sphere_dimension": n,
        "euler_characteristic": euler_characteristic(C),
        "match": groups_ == cc.sphere_homology(n, length=k + 1),
    }


def _boundary_rows(k_max: int) -> list[dict]:
    rows = []
    for k in range(1, k_max + 1):
        C = boundary_matrices(cc.exp_cell_complex(k))
        rows.append(
            {
                "k": k,
                "closed_form": all(C.boundary(i) == cc.closed_form_boundary(k, i) for i in range(k + 1)),
                "is_complex": C.is_complex(),
            }
        )
    return rows


def times_two(odd_k: int) -> int:
    """The induced map on top homology of exp_{k} -> exp_{k+1}, in the cells' own generators."""
    src = boundary_matrices(cc.exp_cell_complex(odd_k))
    dst = boundary_matrices(cc.exp_cell_complex(odd_k + 1))
    M = induced_map_on_homology(
        cc.inclusion_chain_map(odd_k, odd_k + 1),
        src,
        dst,
        odd_k,
        source_generators=[[1]],  # sigma_k
        target_generators=[[0, 1]],  # tau_k
    )
    return M[0, 0]


def _expcupone_rows(k_max: int) -> list[dict]:
    rows = []
    for k in range(1, k_max + 1):
        red = reduced_homology(boundary_matrices(cc.expcupone_cell_complex(k)))
        expected = [1 if (i == k - 1 and i % 2 == 1) else 0 for i in range(k)]
        rows.append(
            {
                "k": k,
                "reduced_homology": [g.to_dict() for g in red],
                "match": [g.rank for g in red] == expected and all(not g.torsion for g in red),
            }
        )
    return rows


def degree_entry(k: int, d: int, budget: int) -> dict:
    """Formula and, where the enumeration applies, the sign-counting oracle."""
    entry = {"k": k, "d": d, "formula": degrees.degree_formula(k, d), "oracle": None}
    odd_k = k if k % 2 else k - 1  # adding the basepoint has degree one
    if d == -1:
        entry["oracle"] = degrees.degree_oracle_inverse(odd_k)
    elif d >= 1:
        try:
            entry["oracle"] = degrees.degree_oracle(odd_k, d, budget)
        except degrees.BudgetExceededError:
            entry["budget_exceeded"] = True
    return entry


def _group_rows(k_max: int) -> dict:
    rows = []
    for k in range(2, k_max + 1):
        G = groups.complement_group(k)
        rows.append(
            {
                "k": k,
                "presentation": G.to_dict(),
                "abelianization": groups.abelianization(G).to_dict(),
                "alexander": groups.fox_alexander(G).to_list(),
            }
        )
    P = groups.pi1_exp3()
    return {
        "complement_groups": rows,
        "pi1_exp3": {
            "presentation": P.to_dict(),
            "abelianization": groups.abelianization(P).to_dict(),
            "simplified": groups.tietze_simplify(P).to_dict(),
        },
    }


def _seifert_section() -> dict:
    first = groups.SeifertData(0, 0, (Fraction(1, 2), Fraction(-1, 3)))
    second = groups.SeifertData(0, 0, (Fraction(1, 2), Fraction(-2, 3)))
    return {
        "alpha_solutions": groups.seifert_alpha_solutions(),
        "candidates": [
            {"slopes": [format_angle(s) for s in M.slopes], "euler_number": format_angle(M.euler_number)}
            for M in (first, second)
        ],
        "reverse_first_equivalent_to_second": groups.seifert_equivalent(groups.seifert_reverse(first), second),
        "first_equivalent_to_second": groups.seifert_equivalent(first, second),
        "exceptional_multiplicities": [
            stabilizer_order(FiniteSubset.of([0, Fraction(1, 2)])),
            stabilizer_order(FiniteSubset.of([0, Fraction(1, 3), Fraction(2, 3)])),
        ],
    }


def random_prism_point(rng: random.Random, k: int, denom: int = 60) -> cc.PrismPoint:
    a = sorted(Fraction(rng.randint(0, denom), denom) for _ in range(k - 1))
    return cc.PrismPoint(tuple(a), Fraction(rng.randint(0, denom), denom))


def _prism_rows(k_max: int) -> list[dict]:
    rows = []
    for k in range(2, k_max + 1):
        rng = random.Random(PRISM_SEED + k)
        round_trips = fake = 0
        phi_order_ok = True
        for _ in range(PRISM_SAMPLES):
            p = random_prism_point(rng, k)
            x = cc.prism_to_simplex(p)
            try:
                back = cc.simplex_to_prism(x)
            except cc.FakeFaceError:
                fake += 1
                continue
            round_trips += back == p
            a = p.a
            for _ in range(k):
                a = cc.monodromy_phi(a)
            phi_order_ok &= a == p.a
        rows.append(
            {
                "k": k,
                "samples": PRISM_SAMPLES,
                "fake_face": fake,
                "round_trips": round_trips,
                "phi_order_k": phi_order_ok,
                "orientation_sign": cc.monodromy_orientation_sign(k),
            }
        )
    return rows


def build_report(config: ReportConfig) -> dict:
    k_max = config.k_max
    return {
        "config": config.key(),
        "homology": [homology_row(k) for k in range(1, k_max + 1)],
        "boundary_closed_form": _boundary_rows(k_max),
        "inclusion_times_two": [
            {"from": 2 * l - 1, "to": 2 * l, "dimension": 2 * l - 1, "factor": times_two(2 * l - 1)}
            for l in range(1, k_max // 2 + 1)
        ],
        "expcupone": _expcupone_rows(k_max),
        "degrees": [degree_entry(k, d, config.budget) for k in range(1, k_max + 1) for d in DEGREE_VALUES],
        "groups": _group_rows(k_max),
        "seifert": _seifert_section(),
        "prism": _prism_rows(k_max),
        "dehn_twist": [
            {"from": [p, q], "to": [c.p, c.q]}
            for p, q in ((1, 3), (1, 1), (0, 1))
            for c in [groups.dehn_twist(groups.SurfaceCurve(p, q))]
        ],
    }


def _groups_str(gs: list[dict]) -> str:
    def one(g):
        parts = (["Z"] if g["rank"] == 1 else [f"Z^{g['rank']}"] if g["rank"] else []) + [
            f"Z/{t}" for t in g["torsion"]
        ]
        return " + ".join(parts) or "0"

    return ", ".join(one(g) for g in gs)


def render_markdown(report: dict) -> str:
    lines = [f"# exp_k(S^1) verification report (k_max = {report['config']['k_max']})", ""]
    lines += ["## Homology", "", "| k | H_* | sphere | chi | verdict |", "|---|---|---|---|---|"]
    for r in report["homology"]:
        verdict = "MATCH" if r["match"] else "MISMATCH"
        lines.append(
            f"| {r['k']} | {_groups_str(r['homology'])} | S^{r['sphere_dimension']} "
            f"| {r['euler_characteristic']} | {verdict} |"
        )
    lines += ["", "## Boundary matrices", ""]
    lines += [f"- k={r['k']}: closed form {'ok' if r['closed_form'] else 'FAIL'}" for r in report["boundary_closed_form"]]
    lines += ["", "## Inclusions on top homology", ""]
    lines += [f"- exp_{r['from']} -> exp_{r['to']}: x{r['factor']} on H_{r['dimension']}" for r in report["inclusion_times_two"]]
    lines += ["", "## Subsets containing the basepoint", ""]
    lines += [
        f"- k={r['k']}: reduced H_* = {_groups_str(r['reduced_homology'])} ({'MATCH' if r['match'] else 'MISMATCH'})"
        for r in report["expcupone"]
    ]
    lines += ["", "## Degrees", "", "| k | d | formula | oracle |", "|---|---|---|---|"]
    for r in report["degrees"]:
        oracle = "budget" if r.get("budget_exceeded") else ("-" if r["oracle"] is None else r["oracle"])
        lines.append(f"| {r['k']} | {r['d']} | {r['formula']} | {oracle} |")
    g = report["groups"]
    lines += ["", "## Groups", ""]
    for r in g["complement_groups"]:
        lines.append(f"- k={r['k']}: abelianization {_groups_str([r['abelianization']])}, Alexander coefficients {r['alexander']}")
    lines.append(f"- pi_1(exp_3) simplifies to {g['pi1_exp3']['simplified']}")
    s = report["seifert"]
    lines += ["", "## Seifert data", ""]
    lines.append(f"- alpha solutions: {s['alpha_solutions']}")
    for c in s["candidates"]:
        lines.append(f"- M(0,0;{','.join(c['slopes'])}): Euler number {c['euler_number']}")
    lines.append(f"- reversed first equivalent to second: {s['reverse_first_equivalent_to_second']}")
    lines.append(f"- exceptional multiplicities: {s['exceptional_multiplicities']}")
    lines += ["", "## Prism model", ""]
    for r in report["prism"]:
        lines.append(
            f"- k={r['k']}: {r['round_trips']}/{r['samples'] - r['fake_face']} round trips, "
            f"phi^k = id {r['phi_order_k']}, orientation {r['orientation_sign']:+d}"
        )
    lines += ["", "## Dehn twist", ""]
    lines += [f"- {tuple(r['from'])} -> {tuple(r['to'])}" for r in report["dehn_twist"]]
    return "\n".join(lines) + "\n"
