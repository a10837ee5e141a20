from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gbt_verify.torus import (
    FREE_GROUP_AMBIENT,
    TABLE1,
    FactorCode,
    FourPoints,
    GroupElement,
    TorsionPoint,
    WholeCurve,
    act,
    by_label,
    enumerate_fixing_elements,
    fixed_locus_on_T,
    label,
    named_subgroup,
    torsion_points,
    torsion_triples,
)

G0 = named_subgroup("G0").sorted_elements()
QUARTER = [torsion_points(j, 4) for j in (1, 2, 3)]
CODES = [FactorCode(*bits) for bits in itertools.product((0, 1), repeat=3)]

g0_elements = st.sampled_from(G0)
quarter_triples = st.tuples(*[st.sampled_from(pts) for pts in QUARTER])


def test_torsion_point_counts():
    assert [len(p) for p in QUARTER] == [16, 16, 16]
    assert len(list(torsion_triples(4))) == 16 ** 3
    assert all(p.doubled().doubled() == TorsionPoint(p.factor, 0, 0) for p in QUARTER[0])


def test_torsion_point_reduces_mod_lattice():
    assert TorsionPoint(1, Fraction(5, 4), Fraction(-1, 4)) == TorsionPoint(1, Fraction(1, 4), Fraction(3, 4))


# The action is a product of per-factor maps, so checking every factor code
# on every quarter point covers all of G0 x (quarter-torsion)^3.

@pytest.mark.parametrize("code", CODES, ids=str)
def test_factor_maps_are_involutions(code):
    for z in QUARTER[0]:
        assert code.apply(code.apply(z)) == z


def test_factor_maps_compose_like_bit_vectors():
    for c1, c2 in itertools.product(CODES, repeat=2):
        summed = FactorCode(c1.zeta ^ c2.zeta, c1.eta ^ c2.eta, c1.epsilon ^ c2.epsilon)
        for z in QUARTER[1]:
            assert c1.apply(c2.apply(z)) == summed.apply(z)


@given(g0_elements, quarter_triples)
def test_action_is_involutive(g, z):
    assert act(g, act(g, z)) == z


@given(g0_elements, g0_elements, quarter_triples)
def test_action_composes(g, h, z):
    assert act(g, act(h, z)) == act(g + h, z)
    assert act(g + h, z) == act(h + g, z)


@given(g0_elements, quarter_triples)
def test_action_preserves_quarter_torsion(g, z):
    assert all(p.level() in (1, 2, 4) for p in act(g, z))


def test_group_orders():
    assert {n: named_subgroup(n).order for n in ("G0", "G1'", "G1")} == {"G0": 64, "G1'": 32, "G1": 32}
    for name, ambient in FREE_GROUP_AMBIENT.items():
        grp = named_subgroup(name)
        assert grp.order == 8
        assert grp.issubset(named_subgroup(ambient))


@pytest.mark.parametrize("name", ["GrpG3", "GrpG4"])
def test_free_groups_act_freely_on_T(name):
    for g in named_subgroup(name).nontrivial():
        assert fixed_locus_on_T(g).empty


def test_fixed_set_shapes():
    assert isinstance(fixed_locus_on_T(GroupElement.parse("000|000|100")).per_factor[2], FourPoints)
    assert isinstance(fixed_locus_on_T(GroupElement.parse("000|000|100")).per_factor[0], WholeCurve)
    assert fixed_locus_on_T(GroupElement.parse("011|000|000")).empty
    with pytest.raises(ValueError):
        fixed_locus_on_T(GroupElement.identity())


@given(g0_elements.filter(lambda g: not g.is_identity()), quarter_triples)
def test_fixed_locus_description_matches_brute_force(g, z):
    locus = fixed_locus_on_T(g)
    if locus.empty:
        assert act(g, z) != z
        return
    described = all(
        isinstance(f, WholeCurve) or zj in f.points for f, zj in zip(locus.per_factor, z)
    )
    assert described == (act(g, z) == z)


def test_fixing_elements_match_brute_force_count():
    found = {g for g, _ in enumerate_fixing_elements(named_subgroup("G0"))}
    brute = {
        g for g in G0 if not g.is_identity()
        and any(act(g, z) == z for z in itertools.product(*[pts[:4] + pts[4:] for pts in QUARTER]))
    }
    # quarter points carry every fixed point of these maps, since 2z = t with t half-period
    assert found == brute == set(TABLE1)


def test_labels_round_trip():
    for k, g in enumerate(TABLE1, start=1):
        assert label(g) == f"g{k}"
        assert by_label(f"g{k}") == g
    assert label(GroupElement.identity()) == "000|000|000"


def test_parse_formats():
    assert GroupElement.parse("000|100|100") == GroupElement.parse("0,0,0,1,0,0,1,0,0")
    with pytest.raises(ValueError):
        GroupElement.parse("0101")
