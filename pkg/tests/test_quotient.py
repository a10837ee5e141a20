from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import family
from gbt_verify.quotient import (
    K2_S,
    InvolutionScheme,
    NotGTInput,
    SchemeError,
    bloch_verdict,
    coset_fixed_loci,
    default_scheme,
    descend,
    fixed_points_on_component,
    horikawa_identity_holds,
    not_general_type,
    preserves,
    quotient_genus,
)
from gbt_verify.torus import GroupElement, closure, named_subgroup

g = GroupElement.parse


@pytest.fixture(scope="module")
def verdicts():
    return {name: bloch_verdict(default_scheme(name)) for name in ("G1", "G2", "G3", "G4")}


def outcome(verdicts, scheme, label, branch="smooth"):
    for o in verdicts[scheme].outcomes:
        if o.report.sigma_label == label and o.report.branch == branch:
            return o
    raise KeyError((scheme, label, branch))


# invariance and schemes ------------------------------------------------------

@pytest.mark.parametrize("kind,ambient", [("nu", "G1'"), ("mu", "G1"), ("b", "G0")])
def test_ambient_groups_preserve_their_family(kind, ambient):
    fam = family(kind)
    assert all(preserves(fam, h) for h in named_subgroup(ambient).generators())


def test_nu_family_not_preserved_by_all_of_g0():
    fam = family("nu")
    assert not all(preserves(fam, h) for h in named_subgroup("G0").generators())


def test_scheme_validation():
    grp = named_subgroup("GrpG2")
    with pytest.raises(SchemeError):
        InvolutionScheme("bad", "mu", grp, g("100|000|000"), g("100|000|000")).validate()
    with pytest.raises(SchemeError):
        InvolutionScheme("bad", "mu", grp, g("100|001|101"), g("000|100|000")).validate()
    with pytest.raises(SchemeError):
        default_scheme("G9")


# descent ------------------------------------------------------------------------

def test_point_loci_descend_by_the_group_order(verdicts):
    # sigma2 on the smooth nu-surface: two 32-point loci and the genus-5 curves
    rep = outcome(verdicts, "G1", "sigma2").report
    assert rep.points == 8 == (32 + 32) // 8


def test_genus_five_with_order_two_stabilizer(verdicts):
    (curve,) = outcome(verdicts, "G1", "sigma2").report.curves
    assert (curve.upstairs_genus, curve.stabilizer_order, curve.orbit_size, curve.genus) == (5, 2, 4, 3)


def test_genus_five_with_order_four_stabilizer(verdicts):
    curves = outcome(verdicts, "G1", "sigma3").report.curves
    assert [(c.upstairs_genus, c.stabilizer_order, c.genus) for c in curves] == [(5, 4, 2)] * 2
    expected = closure([g("100|100|100"), g("000|001|101")])
    assert all(set(c.stabilizer) == set(expected) for c in curves)


def test_sigma4_locus_and_stabilizer(verdicts):
    rep = outcome(verdicts, "G2", "sigma4").report
    assert rep.points == 10
    assert rep.genera() == [2, 2, 1, 1]
    expected = set(closure([g("000|101|001"), g("100|100|100")]))
    assert all(set(c.stabilizer) == expected for c in rep.curves if c.upstairs_genus == 5)


@pytest.mark.parametrize("scheme,label", [("G1", "sigma2"), ("G1", "sigma3"), ("G2", "sigma4")])
def test_genus_five_stabilizers_act_freely(verdicts, scheme, label):
    o = outcome(verdicts, scheme, label)
    fam = o.report.family
    for locus in coset_fixed_loci(fam, default_scheme(scheme).group, o.report.sigma).loci:
        for comp in locus.curves():
            if comp.genus != 5:
                continue
            for h in named_subgroup(default_scheme(scheme).group.name).nontrivial():
                if comp.same_locus(comp.moved(h)):
                    assert fixed_points_on_component(fam, comp, h) == 0


@pytest.mark.parametrize("scheme", ["G1", "G2", "G3", "G4"])
def test_descent_conserves_components(verdicts, scheme):
    """Orbit sizes times stabilizer orders give the group order; points come in full orbits."""
    order = default_scheme(scheme).group.order
    for o in verdicts[scheme].outcomes:
        assert o.report.anomalies == []
        for c in o.report.curves:
            assert c.orbit_size * c.stabilizer_order == order
        upstairs = 0
        for locus in coset_fixed_loci(o.report.family, default_scheme(scheme).group, o.report.sigma).loci:
            upstairs += len(locus.points())
        assert upstairs == order * (o.report.points + o.report.isolated_nodes)


@given(st.sampled_from(["G1", "G2"]), st.data())
def test_riemann_hurwitz_is_integral_for_every_stabilizer_subgroup(scheme, data):
    sch = default_scheme(scheme)
    fam = family(sch.family_kind)
    sigma = data.draw(st.sampled_from([s for _, s in sch.sigmas()]))
    loci = coset_fixed_loci(fam, sch.group, sigma).loci
    curves = [c for locus in loci for c in locus.curves()]
    assume(curves)
    comp = data.draw(st.sampled_from(curves))
    stab = [h for h in sch.group.sorted_elements() if comp.same_locus(comp.moved(h))]
    sub = data.draw(st.lists(st.sampled_from(stab), max_size=2))
    genus = quotient_genus(fam, comp, sorted(closure(sub)))
    assert 0 <= genus <= comp.genus


# the not-general-type test --------------------------------------------------

def test_pattern_one_needs_more_than_eight_points_in_strict_mode():
    inp = NotGTInput(8, (3,), False, False, "no fixed node")
    assert not not_general_type(inp, "strict").not_general_type
    assert not_general_type(inp, "as-claimed").case == "i"
    assert not_general_type(NotGTInput(10, (3, 1), False, False, "x"), "strict").case == "i"


def test_patterns_two_and_three():
    assert not_general_type(NotGTInput(6, (1,), False, False, "x")).case == "ii"
    assert not_general_type(NotGTInput(4, (1,), True, False, "x")).case == "iii"
    assert not_general_type(NotGTInput(4, (1,), False, False, "x")).case is None
    assert not_general_type(NotGTInput(6, (1,), False, True, "x")).case is None
    assert not_general_type(NotGTInput(12, (0,), False, False, "x")).case is None
    with pytest.raises(ValueError):
        not_general_type(NotGTInput(6, (1,), False, False, "x"), "lenient")


def _horikawa_k(kp2: int, kp_delta: int, xs) -> int:
    """Isolated fixed points from the two Horikawa formulas, solved independently.

    The chi formula with chi(S) = chi(P) = 1 gives D^2.  The K^2 formula gives
    K_V^2 of the blown-up cover, and k = K_S^2 - K_V^2.
    """
    d2 = Fraction(2 * (1 - 2)) + sum(x * (x - 1) for x in xs) - kp_delta
    k2_cover = 2 * (kp2 + 2 * kp_delta + d2) - 2 * sum((x - 1) ** 2 for x in xs)
    return K2_S - int(k2_cover)


admissible = st.tuples(st.integers(-4, 9), st.integers(0, 6), st.lists(st.integers(1, 4), max_size=5))


@given(admissible)
def test_horikawa_identity_over_random_inputs(data):
    kp2, kp_delta, xs = data
    k = _horikawa_k(kp2, kp_delta, xs)
    assert 2 * (kp2 + kp_delta + sum(x - 1 for x in xs)) == 10 - k
    assert horikawa_identity_holds(k, kp2, kp_delta, xs)
    assert not horikawa_identity_holds(k + 2, kp2, kp_delta, xs)


# verdicts ----------------------------------------------------------------------

def test_g2_holds_by_pattern_one(verdicts):
    rep = verdicts["G2"]
    assert rep.verdict == {"strict": True, "as-claimed": True}
    assert [o.strict[0].case for o in rep.outcomes] == ["i", "i", "i"]


@pytest.mark.parametrize("scheme", ["G3", "G4"])
def test_g3_g4_hold(verdicts, scheme):
    rep = verdicts[scheme]
    assert rep.verdict == {"strict": True, "as-claimed": True}
    for o in rep.outcomes:
        if o.report.branch == "smooth":
            assert o.report.points == 6 and o.report.genera() == [1]
            assert [v.case for v in o.strict] == ["ii"]
        else:
            assert [i.branch for i in o.inputs] == ["node -> two isolated points", "node -> fixed (-2)-curve"]
            assert [v.case for v in o.strict] == ["ii", "iii"]


def test_g1_reports_discrepancies(verdicts):
    rep = verdicts["G1"]
    assert rep.verdict == {"strict": False, "as-claimed": True}
    flags = " | ".join(rep.flags)
    assert "sigma2: stated fixed curves of genera [3, 1], computed [3]" in flags
    assert "only 8 isolated points" in flags
    assert "sigma1: stated 8 isolated points, computed 10" in flags


def test_descend_refuses_non_free_group():
    fam = family("nu")
    grp = named_subgroup("GrpG1")
    bad = family("mu", "mu=1")
    with pytest.raises(SchemeError):
        descend(bad, named_subgroup("GrpG2"), coset_fixed_loci(bad, named_subgroup("GrpG2"), g("100|000|000")))
    with pytest.raises(SchemeError):
        coset_fixed_loci(fam, grp, g("100|100|100"))
