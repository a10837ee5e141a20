"""Checks and reports behind each command-line subcommand.

A report is a list of sections; each section carries checks (expected vs
computed), free-form data and discrepancy flags.  Everything is plain data
so the text and JSON renderers stay trivial and deterministic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import reference as ref
from .field import a, build_legendre_table, parse_specialization
from .hypersurface import (
    Family,
    contains_point,
    curve_genus_in_surface,
    fixed_locus_on_X,
    mu_values_as_relations,
    surface_invariants,
)
from .quotient import bloch_verdict, default_scheme, horikawa_fixed_points
from .singularity import (
    certify_free_action,
    singular_locus,
    singular_points,
    which_elements_fix_on_X,
)
from .torus import (
    FREE_GROUP_AMBIENT,
    TABLE1,
    FactorCode,
    act,
    enumerate_fixing_elements,
    fixed_locus_on_T,
    label,
    named_subgroup,
    torsion_points,
)

SCHEMA_ID = "gbt-verify/report/v1"
GROUP_FAMILY = {"G1": "nu", "G2": "mu", "G3": "b", "G4": "b"}
FAMILY_AMBIENT = {"nu": "G1'", "mu": "G1", "b": "G0"}


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    ok: bool
    location: str = ""
    note: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "expected": self.expected,
            "computed": self.computed,
            "location": self.location,
            "note": self.note,
        }


def check(name, expected, computed, location="", note="") -> Check:
    return Check(name, expected, computed, expected == computed, location, note)


@dataclass
class Section:
    title: str
    citation: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "citation": self.citation,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "data": self.data,
            "flags": list(self.flags),
        }


@dataclass
class Report:
    command: str
    options: dict
    sections: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    @property
    def flags(self) -> list:
        return [f for s in self.sections for f in s.flags]

    def checks(self) -> list:
        return [c for s in self.sections for c in s.checks]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_ID,
            "command": self.command,
            "options": self.options,
            "ok": self.ok,
            "sections": [s.to_json() for s in self.sections],
            "flags": self.flags,
        }


def make_family(kind: str, spec_text: Optional[str] = None, convention=(1, 1, 1)) -> Family:
    spec = parse_specialization(spec_text) if spec_text else None
    return Family.make(kind, convention=tuple(convention), spec=spec)


# ---------------------------------------------------------------------------
# table1


def table1_report() -> Report:
    sec = Section("Elements of G0 with fixed points on T", "table of fixing elements")
    found = enumerate_fixing_elements(named_subgroup("G0"))
    sec.checks.append(check("number of fixing elements", 17, len(found)))
    sec.checks.append(
        check("bit-vectors in table order", list(ref.TABLE1_BITS), [str(g) for g, _ in found])
    )
    sec.checks.append(
        check("fixed-locus dimensions", list(ref.TABLE1_DIMENSIONS), [t.dimension for _, t in found])
    )
    sec.data["rows"] = [
        {"label": label(g), "element": str(g), "dimension": t.dimension} for g, t in found
    ]
    return Report("table1", {}, [sec])


# ---------------------------------------------------------------------------
# fixed loci


def _column(family: Family) -> str:
    if family.generic:
        return "smooth"
    return "singular" if singular_points(family).points else "smooth"


def _gamma_incidence(family: Family, locus) -> Check:
    """Each elliptic curve of the locus passes through two nodes, each node lies on two."""
    nodes = singular_points(family).points
    ell = locus.elliptic()
    per_curve = sorted({sum(contains_point(family, c, z) for z in nodes) for c in ell})
    per_node = sorted({sum(contains_point(family, c, z) for c in ell) for z in nodes})
    return check(
        f"{label(locus.element)}: nodes per elliptic curve / elliptic curves per node",
        [[2], [2]],
        [per_curve, per_node],
        location=label(locus.element),
    )


def fixed_loci_report(kind: str, spec_text: Optional[str] = None, convention=(1, 1, 1)) -> Report:
    family = make_family(kind, spec_text, convention)
    column = _column(family)
    table = ref.FIXED_LOCUS_TABLES.get((kind, column), {})
    sec = Section(
        f"Fixed loci on the {family.describe()} ({column})",
        "fixed-locus table of the family",
    )
    ambient = named_subgroup(FAMILY_AMBIENT[kind])
    always, special = which_elements_fix_on_X(family, ambient)
    if spec_text is None:
        exp_always, exp_special = ref.FIXING_ON_X[kind]
        sec.checks.append(check("elements fixing points on X", exp_always, [label(g) for g in always]))
        sec.checks.append(
            check("elements fixing points only for special moduli", exp_special, [label(g) for g in special])
        )
    rows = []
    for g in always + special:
        locus = fixed_locus_on_X(family, g)
        lab = label(g)
        summary = locus.summary() if locus.components else "special moduli only"
        rows.append(
            {
                "label": lab,
                "element": str(g),
                "summary": summary,
                "components": [c.to_json(family) for c in locus.components],
                "anomalies": list(locus.anomalies),
            }
        )
        if lab in table:
            err = ref.erratum_for(kind, column, lab)
            note = ""
            if err is not None:
                note = f"tabulated cell cannot hold: {err.reason}"
                sec.flags.append(f"{lab} ({column}): tabulated '{err.tabulated}', computed '{summary}'")
            sec.checks.append(check(f"{lab} fixed locus", table[lab], summary, lab, note))
        if kind == "nu" and column == "singular" and lab == "g3":
            sec.checks.append(_gamma_incidence(family, locus))
    sec.data["column"] = column
    sec.data["rows"] = rows
    return Report("fixed-loci", {"family": kind, "specialize": spec_text}, [sec])


# ---------------------------------------------------------------------------
# singularities and bad sets


def _points(pts) -> list:
    return [[str(p) for p in z] for z in pts]


def singularities_report(convention=(1, 1, 1)) -> Report:
    sections = []
    # nu
    nu = make_family("nu", convention=convention)
    rep = singular_locus(nu)
    sec = Section("Singular members of the nu-family", "singularity classification of the families")
    expected = ref.nu_bad_values()
    sec.checks.append(check("number of singular parameters", ref.NU_BAD_VALUES, len(rep.bad_values)))
    sec.checks.append(
        check(
            "singular parameters are (+-b1:1), (1:+-b1)",
            True,
            len(rep.bad_values) == len(expected)
            and all(any(v == w for w in rep.bad_values) for v in expected),
        )
    )
    for v in expected:
        fam = nu.specialized(parse_specialization(f"nu=({v.num}:{v.den})"))
        pts = singular_points(fam).points
        sec.checks.append(
            check(f"nodes for nu = {v}", sorted(_points(ref.nu_expected_nodes(fam))), sorted(_points(pts)))
        )
    sec.checks.append(check("non-free parameters (g0 meets X)", ref.NU_NONFREE_VALUES, len(rep.nonfree_values)))
    sec.data = {
        "bad_values": [str(v) for v in rep.bad_values],
        "nonfree_values": [str(v) for v in rep.nonfree_values],
        "anomalies": rep.anomalies,
    }
    sections.append(sec)
    # mu
    mu = make_family("mu", convention=convention)
    rep = singular_locus(mu)
    sec = Section("Singular members of the mu-family", "singularity classification of the families")
    sec.checks.append(check("singular parameters outside the non-free set", 0, len(rep.bad_values)))
    sec.checks.append(check("non-free parameters", ref.MU_NONFREE_VALUES, len(rep.nonfree_values)))
    sec.checks.append(
        check("non-free parameters as b-relations", ref.B_RELATIONS, len(mu_values_as_relations(rep.nonfree_values)))
    )
    node_counts = []
    for v in rep.nonfree_values:
        fam = mu.specialized(parse_specialization(f"mu=({v.num}:{v.den})"))
        node_counts.append(len(singular_points(fam).points))
    sec.data = {
        "nonfree_values": [str(v) for v in rep.nonfree_values],
        "nodes_at_nonfree_values": node_counts,
        "anomalies": rep.anomalies,
    }
    if rep.nonfree_values:
        sec.flags.append(
            f"non-free mu-parameters carry {sorted(set(node_counts))} nodes each; "
            "they lie outside the family of free quotients"
        )
    sections.append(sec)
    # b
    bf = make_family("b", convention=convention)
    rep = singular_locus(bf)
    sec = Section("Singular members of the b-family", "singularity classification of the families")
    sec.checks.append(check("generic member smooth", True, rep.generic_smooth))
    sec.checks.append(check("number of nodal relations", ref.B_RELATIONS, len(rep.relations)))
    for rel, pts in rep.relations:
        sec.checks.append(check(f"nodes under {rel}", ref.NODES_PER_SINGULAR_SURFACE, len(pts)))
        sec.checks.append(
            check(f"nodes under {rel} are 2-torsion", True, all(p.is_two_torsion() for z in pts for p in z))
        )
    sec.data = {
        "relations": [{"relation": str(r), "nodes": _points(p)} for r, p in rep.relations],
        "anomalies": rep.anomalies,
    }
    sections.append(sec)
    return Report("singularities", {"convention": list(convention)}, sections)


def bad_sets_report(convention=(1, 1, 1)) -> Report:
    sections = []
    for kind in ("nu", "mu"):
        rep = singular_locus(make_family(kind, convention=convention))
        sec = Section(f"Exceptional parameters of the {kind}-family", "bad parameter sets")
        sec.data = {
            "singular": [str(v) for v in rep.bad_values],
            "nonfree": [str(v) for v in rep.nonfree_values],
            "excluded": [str(v) for v in rep.excluded_hits],
        }
        if kind == "mu":
            sec.data["nonfree_as_relations"] = [
                str(r) for r in mu_values_as_relations(rep.nonfree_values)
            ]
        sections.append(sec)
    rep = singular_locus(make_family("b", convention=convention))
    sec = Section("Exceptional moduli of the b-family", "bad parameter sets")
    sec.data = {"relations": [str(r) for r, _ in rep.relations]}
    sections.append(sec)
    return Report("bad-sets", {"convention": list(convention)}, sections)


# ---------------------------------------------------------------------------
# freeness


def freeness_report(group: str, convention=(1, 1, 1)) -> Report:
    kind = GROUP_FAMILY[group]
    family = make_family(kind, convention=convention)
    grp = named_subgroup("Grp" + group)
    cert = certify_free_action(family, grp)
    sec = Section(f"Freeness of {group} on the {family.describe()}", "freeness of the groups")
    sec.checks.append(check("group order", 8, grp.order))
    sec.checks.append(check("contained in its ambient group", True, grp.issubset(named_subgroup(FREE_GROUP_AMBIENT["Grp" + group]))))
    if group in ("G1", "G2"):
        sec.checks.append(check("verdict", "free-iff-avoids", cert.verdict))
        nonfree = singular_locus(family).nonfree_values
        same = len(cert.bad) == len(nonfree) and all(cert.bad.contains(v) for v in nonfree)
        sec.checks.append(check("bad set size", 16, len(cert.bad)))
        sec.checks.append(check("bad set equals the parameters where g0 meets X", True, same))
        if group == "G2":
            sec.checks.append(
                check("bad set as b-relations", ref.B_RELATIONS, len(mu_values_as_relations(cert.bad.values)))
            )
    else:
        free_on_T = all(fixed_locus_on_T(g).empty for g in grp.nontrivial())
        sec.checks.append(check("acts freely on T", True, free_on_T))
        sec.checks.append(check("verdict", "free", cert.verdict))
    sec.data = {
        "verdict": cert.verdict,
        "bad": cert.bad.rendered(),
        "evidence": [
            {"element": str(ev.element), "label": label(ev.element) if ev.element in TABLE1 else "",
             "kind": ev.kind, "conditional_points": len(ev.conditions)}
            for ev in cert.evidence
        ],
    }
    return Report("freeness", {"group": group}, [sec])


# ---------------------------------------------------------------------------
# invariants


def invariants_report() -> Report:
    sec = Section("Numerical invariants", "invariants of the cover and the quotient")
    cover = surface_invariants((2, 2, 2), 1)
    quot = surface_invariants((2, 2, 2), 8)
    sec.checks.append(check("K^2 of X", ref.COVER_INVARIANTS["K2"], cover.K2))
    sec.checks.append(check("e(X)", ref.COVER_INVARIANTS["e"], cover.euler))
    sec.checks.append(check("chi(X)", ref.COVER_INVARIANTS["chi"], cover.chi))
    sec.checks.append(check("K^2 of X/G", ref.QUOTIENT_INVARIANTS["K2"], quot.quotient_K2))
    sec.checks.append(check("chi(X/G)", ref.QUOTIENT_INVARIANTS["chi"], quot.quotient_chi))
    sec.checks.append(check("genus of a (2,2) curve", ref.ADJUNCTION_GENUS_22, curve_genus_in_surface(2, 2)))
    sec.data = {"cover": vars(cover)}
    return Report("invariants", {}, [sec])


# ---------------------------------------------------------------------------
# bloch


MODES = ("strict", "as-claimed")


def bloch_report(group: str, mode: str = "both", branches: Sequence[str] = ("smooth", "singular"),
                 convention=(1, 1, 1)) -> Report:
    scheme = default_scheme(group)
    result = bloch_verdict(scheme, branches, convention)
    modes = MODES if mode == "both" else (mode,)
    sections = []
    for o in result.outcomes:
        r = o.report
        sec = Section(
            f"{r.sigma_label} = {r.sigma} ({r.branch} branch)",
            "descent of coset fixed loci and the not-general-type test",
        )
        sec.checks.append(check("coset fixed loci pairwise disjoint", True, r.disjoint, r.sigma_label))
        sec.checks.append(check("no descent anomalies", [], r.anomalies, r.sigma_label))
        forks = []
        for inp, s, c in zip(o.inputs, o.strict, o.as_claimed):
            forks.append(
                {
                    "resolution": inp.branch,
                    "isolated_points": inp.k,
                    "curve_genera": list(inp.genera),
                    "fixed_minus2_curve": inp.fixed_minus2_curve,
                    "strict_case": s.case,
                    "as_claimed_case": c.case,
                    "evidence": list((s if s.case else c).evidence),
                }
            )
        sec.data = {
            "coset": [{"label": label(g), "upstairs": summary} for g, summary in r.contributing],
            "quotient_locus": r.summary(),
            "points": r.points,
            "isolated_nodes": r.isolated_nodes,
            "nodes_on_curves": r.nodes_on_curves,
            "curves": [
                {
                    "genus": qc.genus,
                    "upstairs_genus": qc.upstairs_genus,
                    "orbit_size": qc.orbit_size,
                    "stabilizer": [str(h) for h in qc.stabilizer],
                    "meets_node": qc.meets_node,
                }
                for qc in r.curves
            ],
            "forks": forks,
        }
        stated = ref.STATED_QUOTIENT_LOCI.get((group, r.sigma_label))
        if stated and r.branch == "smooth":
            sec.data["stated_locus"] = stated
        sections.append(sec)
    final = Section(f"Verdict for {group}", "involution criterion for Bloch's conjecture")
    for m in modes:
        final.checks.append(check(f"every involution quotient not of general type ({m})", True, result.verdict[m]))
    final.data = {m: result.conclusion(m) for m in MODES}
    final.flags = list(result.flags)
    sections.append(final)
    return Report("bloch", {"group": group, "mode": mode, "branches": list(branches)}, sections)


# ---------------------------------------------------------------------------
# oracle


def oracle_report(seed: int = 0, triples: int = 20, tolerance: float = 1e-9,
                  det_threshold: float = 1e-6, taus=None) -> Report:
    from .numeric import run_oracle

    res = run_oracle(seed, triples, tolerance, det_threshold, taus)
    sec = Section("Numeric cross-check", "floating-point oracle (independent of the exact computation)")
    sec.checks.append(check("curve triples", True, len({t for t in res.taus}) >= triples))
    sec.checks.append(check("Legendre values agree to 1e-8", True, res.legendre_residual < 1e-8))
    sec.checks.append(check("Legendre identities hold to 1e-8", True, res.identity_residual < 1e-8))
    sec.checks.append(check("zero/nonzero separation >= 1e6", True, res.min_margin >= 1e6))
    sec.checks.append(check("sweep disagreements", [], res.failures))
    nodes_ok = {fam: all(c.nondegenerate for c in v) for fam, v in sorted(res.nodes.items())}
    sec.checks.append(check("all nodes ordinary double points", True, all(nodes_ok.values()) and bool(nodes_ok)))
    sec.checks.append(check("runtime within 300 s", True, res.runtime < 300))
    sec.data = {
        "seed": seed,
        "tolerance": tolerance,
        "det_threshold": det_threshold,
        "taus": [[f"{t.real:.12g}{t.imag:+.12g}j" for t in triple] for triple in res.taus],
        "legendre_residual": f"{res.legendre_residual:.3e}",
        "identity_residual": f"{res.identity_residual:.3e}",
        "min_margin": f"{res.min_margin:.3e}",
        "nodes_checked": {fam: len(v) for fam, v in sorted(res.nodes.items())},
        "min_normalized_hessian_det": f"{min((c.normalized_det for v in res.nodes.values() for c in v), default=0):.3e}",
    }
    return Report("oracle", {"seed": seed, "triples": triples}, [sec])


# ---------------------------------------------------------------------------
# everything


# ---------------------------------------------------------------------------
# properties and convention invariance


def _factor_checks() -> tuple:
    """Every per-factor map on every quarter point: involutive, and composing like bits."""
    codes = [FactorCode(*bits) for bits in itertools.product((0, 1), repeat=3)]
    bad_inv, bad_comp, n = [], [], 0
    for j in (1, 2, 3):
        for z in torsion_points(j, 4):
            for c in codes:
                n += 1
                if c.apply(c.apply(z)) != z:
                    bad_inv.append(f"{c} at {z}")
                for d in codes:
                    s = FactorCode(c.zeta ^ d.zeta, c.eta ^ d.eta, c.epsilon ^ d.epsilon)
                    if c.apply(d.apply(z)) != s.apply(z):
                        bad_comp.append(f"{c}*{d} at {z}")
    return n, bad_inv, bad_comp


def _legendre_walks(rng: random.Random, walks: int) -> list:
    moves = (
        (lambda p, q: ((p + 2) % 4, q), lambda v, j: -v),
        (lambda p, q: ((-p) % 4, (-q) % 4), lambda v, j: v),
        (lambda p, q: (p, (q + 2) % 4), lambda v, j: v.scaled_reciprocal(a(j))),
    )
    bad = []
    for j in (1, 2, 3):
        for conv in (1, -1):
            table = build_legendre_table(j, conv)
            for _ in range(walks):
                key = rng.choice([(0, 0), (1, 0), (0, 1), (1, 1)])
                v = table[key]
                for _ in range(rng.randrange(1, 16)):
                    move_pt, move_val = rng.choice(moves)
                    key, v = move_pt(*key), move_val(v, j)
                if table[key] != v:
                    bad.append(f"factor {j}, convention {conv}, {key}")
    return bad


def property_report(seed: int = 0, samples: int = 2000) -> Report:
    rng = random.Random(seed)
    sec = Section("Property suites", "group action, Legendre table and Horikawa identity")
    n, bad_inv, bad_comp = _factor_checks()
    sec.checks.append(check("per-factor maps involutive on all quarter points", [], bad_inv))
    sec.checks.append(check("per-factor maps compose like bit-vectors", [], bad_comp))
    g0 = named_subgroup("G0").sorted_elements()
    quarter = [torsion_points(j, 4) for j in (1, 2, 3)]
    bad = []
    for _ in range(samples):
        g, h = rng.choice(g0), rng.choice(g0)
        z = tuple(rng.choice(pts) for pts in quarter)
        if act(g, act(g, z)) != z or act(g, act(h, z)) != act(g + h, z):
            bad.append(f"{g}, {h} at {z}")
    sec.checks.append(check("sampled triples: action involutive and composing", [], bad))
    sec.checks.append(check("Legendre values agree along random identity walks", [], _legendre_walks(rng, 200)))
    bad = []
    for _ in range(samples):
        kp2, kp_delta = rng.randrange(-4, 10), rng.randrange(0, 7)
        xs = [rng.randrange(1, 5) for _ in range(rng.randrange(0, 6))]
        k = horikawa_fixed_points(kp2, kp_delta, xs)
        if Fraction(10 - k, 2) != kp2 + kp_delta + sum(x - 1 for x in xs):
            bad.append((kp2, kp_delta, xs))
    sec.checks.append(check("5 - k/2 = K_P^2 + K_P.Delta + sum(x_i - 1) from the two formulas", [], bad))
    sec.data = {"seed": seed, "samples": samples, "factor_point_pairs": n}
    return Report("verify-all", {"seed": seed}, [sec])


CONVENTION_FLIPS = ((-1, -1, -1), (1, -1, 1))


def convention_suite(convention=(1, 1, 1), mode: str = "both") -> dict:
    """Every report whose content depends on the sign convention."""
    out = {"singularities": singularities_report(convention), "bad-sets": bad_sets_report(convention)}
    for kind, column in ref.COLUMN_SPECS:
        out[f"fixed-loci {kind} {column}"] = fixed_loci_report(kind, ref.COLUMN_SPECS[(kind, column)], convention)
    for g in ("G1", "G2", "G3", "G4"):
        out[f"freeness {g}"] = freeness_report(g, convention)
    for g in ("G1", "G2", "G3", "G4"):
        out[f"bloch {g}"] = bloch_report(g, mode, ("smooth", "singular"), convention)
    return out


_INVARIANT_DATA = (
    "quotient_locus", "points", "forks", "bad_values", "nonfree_values",
    "singular", "nonfree", "relations", "verdict", "strict", "as-claimed",
)


def convention_numbers(report: Report) -> list:
    """The convention-independent content of a report: checks and locus summaries.

    Coordinates of individual fixed points do move when the convention flips,
    so component listings are left out.
    """
    out = []
    for sec in report.sections:
        rows = [(r["label"], r["summary"]) for r in sec.data.get("rows", []) if "summary" in r]
        keep = {k: v for k, v in sec.data.items() if k in _INVARIANT_DATA}
        out.append((sec.title, [(c.name, c.computed, c.ok) for c in sec.checks], rows, keep, sec.flags))
    return out


def convention_report(base: Optional[dict] = None, flips=CONVENTION_FLIPS, mode: str = "both") -> Report:
    base = base if base is not None else convention_suite((1, 1, 1), mode)
    sec = Section("Sign-convention invariance", "choice of the sign in the quarter-period value")
    for conv in flips:
        other = convention_suite(conv, mode)
        differing = [name for name in base if convention_numbers(base[name]) != convention_numbers(other[name])]
        sec.checks.append(check(f"every count equal under convention {list(conv)}", [], differing))
    sec.data = {"conventions": [[1, 1, 1]] + [list(c) for c in flips], "reports": sorted(base)}
    return Report("verify-all", {}, [sec])


def verify_all(seed: int = 0, triples: int = 20, mode: str = "both") -> Report:
    base = convention_suite((1, 1, 1), mode)
    parts = [table1_report(), base["singularities"], invariants_report()]
    for kind, column in ref.COLUMN_SPECS:
        parts.append(base[f"fixed-loci {kind} {column}"])
    for g in ("G1", "G2", "G3", "G4"):
        parts.append(base[f"freeness {g}"])
    for g in ("G1", "G2", "G3", "G4"):
        parts.append(base[f"bloch {g}"])
    parts.append(oracle_report(seed, triples))
    parts.append(property_report(seed))
    parts.append(convention_report(base, mode=mode))
    sections = [s for p in parts for s in p.sections]
    return Report("verify-all", {"seed": seed, "triples": triples, "mode": mode}, sections)
