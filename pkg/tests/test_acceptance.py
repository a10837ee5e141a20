"""One test per acceptance criterion; a PASS/FAIL line for each is tabulated at the end.

Run ``python3 -m pytest tests/test_acceptance.py -v`` and read the
"acceptance criteria" section of the terminal summary, or run this file
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE, family  # noqa: E402
from gbt_verify import reference as ref  # noqa: E402
from gbt_verify import report as rp  # noqa: E402
from gbt_verify.field import LaurentPoly, SymValue, a  # noqa: E402
from gbt_verify.hypersurface import (  # noqa: E402
    curve_genus_in_surface,
    fixed_locus_on_X,
    mu_values_as_relations,
    surface_invariants,
)
from gbt_verify.quotient import CosetLoci, bloch_verdict, default_scheme, descend  # noqa: E402
from gbt_verify.singularity import certify_free_action, singular_locus, singular_points  # noqa: E402
from gbt_verify.torus import by_label, enumerate_fixing_elements, label, named_subgroup  # noqa: E402


class Outcome:
    def __init__(self):
        self.problems: list = []
        self.notes: list = []

    def expect(self, what: str, expected, computed) -> None:
        if expected != computed:
            self.problems.append(f"{what}: expected {expected!r}, computed {computed!r}")

    def verdict(self, n: int, summary: str) -> tuple:
        ok = not self.problems
        detail = summary if ok else "; ".join(self.problems[:4])
        if self.notes:
            detail += " [" + "; ".join(self.notes) + "]"
        ACCEPTANCE[n] = (ok, detail)
        return ok, self.problems


@lru_cache(maxsize=None)
def suite(convention=(1, 1, 1)) -> dict:
    return rp.convention_suite(convention)


@lru_cache(maxsize=None)
def bloch(name: str):
    return bloch_verdict(default_scheme(name))


def b_prime() -> list:
    out = []
    for subset in itertools.product((0, 1), repeat=3):
        m = LaurentPoly.const(1)
        for j, take in enumerate(subset, start=1):
            if take:
                m = m * a(j)
        out += [SymValue.of(m), SymValue.of(-m)]
    return out


def same_values(xs, ys) -> bool:
    return len(xs) == len(ys) and all(any(x == y for y in ys) for x in xs)


# --- 1 ---------------------------------------------------------------------------

def criterion_1() -> tuple:
    out = Outcome()
    found = enumerate_fixing_elements(named_subgroup("G0"))
    out.expect("number of fixing elements", 17, len(found))
    out.expect("set of bit-vectors", sorted(ref.TABLE1_BITS), sorted(str(g) for g, _ in found))
    dims = {str(g): t.dimension for g, t in found}
    out.expect("dimensions", list(ref.TABLE1_DIMENSIONS), [dims.get(b) for b in ref.TABLE1_BITS])
    groups = [[label(g) for g, t in found if t.dimension == d] for d in (2, 1, 0)]
    out.expect("dimension grouping", [["g1", "g2", "g3"], [f"g{k}" for k in range(4, 10)],
                                      [f"g{k}" for k in range(10, 18)]], groups)
    return out.verdict(1, "17 elements, bit-vectors and dimensions as tabulated")


# --- 2 ---------------------------------------------------------------------------

def criterion_2() -> tuple:
    out = Outcome()
    nu = singular_locus(family("nu"))
    out.expect("nu singular parameters", True, same_values(nu.bad_values, ref.nu_bad_values()))
    for v in ref.nu_bad_values():
        fam = family("nu", f"nu=({v.num}:{v.den})")
        out.expect(
            f"nodes for nu={v}",
            sorted(map(str, ref.nu_expected_nodes(fam))),
            sorted(map(str, singular_points(fam).points)),
        )
    mu = singular_locus(family("mu"))
    out.expect("mu singular outside B'", [], [str(v) for v in mu.bad_values])
    out.expect("mu exceptional values are B'", True, same_values(mu.nonfree_values, b_prime()))
    b = singular_locus(family("b"))
    out.expect("b generic smooth", True, b.generic_smooth)
    out.expect("b nodal conditions", 8, len(b.relations))
    for rel, pts in b.relations:
        out.expect(f"nodes under {rel}", 8, len(pts))
        out.expect(f"nodes under {rel} in F0", True, all(p.is_two_torsion() for z in pts for p in z))
    if any(not c.ok for r in ("singularities",) for c in suite()[r].checks()):
        out.problems.append("singularities report has failing checks")
    return out.verdict(2, "4 nu-values with 8 listed nodes each; mu smooth off B'; 8 b-conditions x 8 nodes in F0")


# --- 3 ---------------------------------------------------------------------------

def table_cells() -> list:
    """(kind, column, label, tabulated, computed) for every tabulated cell."""
    cells = []
    for (kind, column), table in ref.FIXED_LOCUS_TABLES.items():
        rows = suite()[f"fixed-loci {kind} {column}"].sections[0].data["rows"]
        computed = {r["label"]: r["summary"] for r in rows}
        for lab, tabulated in table.items():
            cells.append((kind, column, lab, tabulated, computed.get(lab)))
    return cells


def criterion_3() -> tuple:
    out = Outcome()
    errata = []
    for kind, column, lab, tabulated, computed in table_cells():
        err = ref.erratum_for(kind, column, lab)
        if tabulated != computed:
            out.problems.append(f"({kind}, {lab}, {column}): tabulated {tabulated!r}, computed {computed!r}")
            if err is not None and err.expected == computed:
                errata.append(lab)
    nu_sing = suite()["fixed-loci nu singular"].sections[0]
    gamma = [c for c in nu_sing.checks if "nodes per elliptic curve" in c.name]
    out.expect("Gamma incidence (2 nodes per elliptic curve)", [True], [c.ok for c in gamma])
    # g14 and g15 on the nu-family do not depend on nu
    for spec in (None, "nu=(b1:1)", "nu=(1:-b1)", "nu=(b1^3:1)", "nu=(2:1)"):
        for lab in ("g14", "g15"):
            out.expect(f"({lab}, {spec})", "32 pt", fixed_locus_on_X(family("nu", spec), by_label(lab)).summary())
    if errata:
        out.notes.append(f"cells {', '.join(errata)} of the singular b-table cannot hold; see ERRATA")
    return out.verdict(3, "every tabulated cell reproduced")


# --- 4 ---------------------------------------------------------------------------

def criterion_4() -> tuple:
    out = Outcome()
    nu = family("nu")
    c1 = certify_free_action(nu, named_subgroup("GrpG1"))
    out.expect("G1 verdict", "free-iff-avoids", c1.verdict)
    out.expect("G1 bad set is B0", True, same_values(c1.bad.values, singular_locus(nu).nonfree_values))
    c2 = certify_free_action(family("mu"), named_subgroup("GrpG2"))
    out.expect("G2 verdict", "free-iff-avoids", c2.verdict)
    out.expect("G2 bad set is B'", True, same_values(c2.bad.values, b_prime()))
    out.expect("B' as conditions on b", 8, len(mu_values_as_relations(c2.bad.values)))
    for g in ("GrpG3", "GrpG4"):
        out.expect(f"{g} verdict", "free", certify_free_action(family("b"), named_subgroup(g)).verdict)
    return out.verdict(4, "G1 free off B0 (16 values), G2 free off B' (8 conditions), G3 and G4 free")


# --- 5 ---------------------------------------------------------------------------

def criterion_5() -> tuple:
    out = Outcome()
    inv = surface_invariants((2, 2, 2), 8)
    out.expect("K^2, e, chi of X", (48, 48, 8), (inv.K2, inv.euler, inv.chi))
    out.expect("K^2, chi of X/G", (6, 1), (inv.quotient_K2, inv.quotient_chi))
    out.expect("genus of (2,2) curves", 5, curve_genus_in_surface(2, 2))
    out.expect("genus of the fixed (2,2) curves", [5] * 4,
               [c.genus for c in fixed_locus_on_X(family("nu"), by_label("g1")).curves()])
    return out.verdict(5, "K^2 = 48, e = 48, chi = 8; quotient K^2 = 6, chi = 1; genus 5")


# --- 6 ---------------------------------------------------------------------------

def criterion_6() -> tuple:
    out = Outcome()
    sch = default_scheme("G1")
    fam = family("nu")
    for lab in ("g4", "g5", "g6", "g11", "g14", "g15"):
        locus = fixed_locus_on_X(fam, by_label(lab))
        rep = descend(fam, sch.group, CosetLoci(by_label(lab), [locus], True))
        out.expect(f"{lab}: 32 points descend to", 4, rep.points)
    curves = {o.report.sigma_label: o.report.curves for o in bloch("G1").outcomes if o.report.branch == "smooth"}
    out.expect(
        "genus-5 orbit with free order-2 stabilizer",
        [(5, 2, 3)],
        [(c.upstairs_genus, c.stabilizer_order, c.genus) for c in curves["sigma2"]],
    )
    out.expect(
        "genus-5 orbits with free order-4 stabilizer",
        [(5, 4, 2), (5, 4, 2)],
        [(c.upstairs_genus, c.stabilizer_order, c.genus) for c in curves["sigma3"]],
    )
    s4 = next(o.report for o in bloch("G2").outcomes if o.report.sigma_label == "sigma4")
    out.expect("sigma4 quotient locus", (10, [2, 2, 1, 1]), (s4.points, s4.genera()))
    return out.verdict(6, "32 pt -> 4 pt; genus 5 -> 3 (order 2), -> 2 + 2 (order 4); sigma4: 10 pt, 2+2+1+1")


# --- 7 ---------------------------------------------------------------------------

def criterion_7() -> tuple:
    out = Outcome()
    for name in ("G2", "G3", "G4"):
        out.expect(f"{name} strict verdict", True, bloch(name).verdict["strict"])
    g2 = bloch("G2").outcomes
    out.expect("sigma4 case", ["i"], [v.case for v in g2[0].strict])
    for name in ("G3", "G4"):
        for o in bloch(name).outcomes:
            if o.report.branch == "smooth" and o.report.sigma_label in ("sigma6", "sigma7"):
                out.expect(f"{name} {o.report.sigma_label} case", ["ii"], [v.case for v in o.strict])
    g1 = bloch("G1")
    flags = " | ".join(g1.flags)
    for needle in ("sigma2: stated fixed curves of genera [3, 1], computed [3]", "only 8 isolated points"):
        if needle not in flags:
            out.problems.append(f"G1 flag missing: {needle}")
    for name in ("G1", "G2", "G3", "G4"):
        out.expect(f"{name} as-claimed verdict", True, bloch(name).verdict["as-claimed"])
    for name in ("G1", "G2", "G3", "G4"):
        rep = suite()[f"bloch {name}"]
        out.expect(f"bloch {name} sections", 7 if name != "G2" else 4, len(rep.sections))
    out.notes.append("G1 strict: not established (only 8 isolated points for sigma2, sigma3)")
    return out.verdict(7, "G2 (case i), G3/G4 (case ii) hold strictly; G1 flags emitted; as-claimed holds for all four")


# --- 8 ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def oracle():
    return rp.oracle_report(seed=0, triples=20)


def criterion_8() -> tuple:
    out = Outcome()
    rep = oracle()
    sec = rep.sections[0]
    for c in sec.checks:
        out.expect(c.name, c.expected, c.computed)
    out.expect("at least 20 curve triples", True, len(sec.data["taus"]) >= 20)
    out.expect("nodes checked per family", True, all(n % 8 == 0 and n > 0 for n in sec.data["nodes_checked"].values()))
    return out.verdict(
        8,
        f"20 random triples + {len(sec.data['taus']) - 20} solved onto nodal b-relations, L-residual {sec.data['legendre_residual']}, "
        f"margin {sec.data['min_margin']}, min normalized Hessian det {sec.data['min_normalized_hessian_det']}",
    )


# --- 9 ---------------------------------------------------------------------------

def criterion_9() -> tuple:
    out = Outcome()
    for c in rp.property_report(seed=0).checks():
        out.expect(c.name, c.expected, c.computed)
    for c in rp.convention_report(suite()).checks():
        out.expect(c.name, c.expected, c.computed)
    return out.verdict(9, "action, Legendre routes, sign conventions and Horikawa identity all hold")


# --- tests -----------------------------------------------------------------------

def test_criterion_1_table():
    ok, problems = criterion_1()
    assert ok, problems


def test_criterion_2_singularities():
    ok, problems = criterion_2()
    assert ok, problems


def test_criterion_3_cells_outside_errata():
    criterion_3()
    for kind, column, lab, tabulated, computed in table_cells():
        err = ref.erratum_for(kind, column, lab)
        assert computed == (err.expected if err else tabulated), (kind, column, lab)


@pytest.mark.xfail(strict=True, reason="the singular b-table lists g7-g9 as '8 nodes, 8 ell. curves', which cannot hold")
def test_criterion_3_reference_table():
    ok, problems = criterion_3()
    assert ok, problems


def test_criterion_4_freeness():
    ok, problems = criterion_4()
    assert ok, problems


def test_criterion_5_invariants():
    ok, problems = criterion_5()
    assert ok, problems


def test_criterion_6_descent():
    ok, problems = criterion_6()
    assert ok, problems


def test_criterion_7_bloch():
    ok, problems = criterion_7()
    assert ok, problems


def test_criterion_8_oracle():
    ok, problems = criterion_8()
    assert ok, problems


def test_criterion_9_properties():
    ok, problems = criterion_9()
    assert ok, problems


if __name__ == "__main__":
    for n, fn in enumerate(
        (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
         criterion_6, criterion_7, criterion_8, criterion_9),
        start=1,
    ):
        fn()
        ok, detail = ACCEPTANCE[n]
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
