from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import family
from gbt_verify.field import parse_specialization
from gbt_verify.hypersurface import (
    Family,
    FamilyError,
    contains_point,
    curve_genus_in_surface,
    fixed_locus_on_X,
    incidence_grid,
    move_point,
    surface_invariants,
)
from gbt_verify.torus import act, by_label, named_subgroup, torsion_points

QUARTER = [torsion_points(j, 4) for j in (1, 2, 3)]
quarter_triples = st.tuples(*[st.sampled_from(pts) for pts in QUARTER])
AMBIENT = {"nu": "G1'", "mu": "G1", "b": "G0"}
CASES = [("nu", None), ("nu", "nu=(b1:1)"), ("mu", None), ("b", None), ("b", "b1*b2*b3=1")]


@pytest.fixture(scope="module")
def grids():
    return {case: incidence_grid(family(*case)) for case in CASES}


@given(st.sampled_from(CASES), quarter_triples)
def test_grid_agrees_with_pointwise_evaluation(grids, case, z):
    assert grids[case][z] == family(*case).evaluate(z)


@given(st.sampled_from(CASES), st.data())
def test_surface_is_invariant_under_its_group(grids, case, data):
    z = data.draw(quarter_triples)
    g = data.draw(st.sampled_from(named_subgroup(AMBIENT[case[0]]).sorted_elements()))
    grid = grids[case]
    assert grid[z].is_zero() == grid[act(g, z)].is_zero()


def test_excluded_and_invalid_specializations():
    with pytest.raises(FamilyError):
        Family.make("nu", spec=parse_specialization("nu=(1:1)"))
    with pytest.raises(FamilyError):
        Family.make("mu", spec=parse_specialization("mu=(1:0)"))
    with pytest.raises(FamilyError):
        Family.make("b", spec=parse_specialization("nu=(b1:1)"))
    with pytest.raises(FamilyError):
        Family.make("xi")


def test_generic_flags():
    assert family("nu").generic
    assert not family("nu", "nu=(b1:1)").generic
    assert not family("b").generic


def test_invariants():
    inv = surface_invariants((2, 2, 2), 8)
    assert (inv.K2, inv.euler, inv.chi) == (48, 48, 8)
    assert (inv.quotient_K2, inv.quotient_chi) == (6, 1)
    assert curve_genus_in_surface(2, 2) == 5
    with pytest.raises(ValueError):
        surface_invariants((2, 2, 2), 5)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_noether_integrality(d1, d2, d3):
    inv = surface_invariants((d1, d2, d3))
    assert 12 * inv.chi == inv.K2 + inv.euler


@pytest.mark.parametrize(
    "kind,spec,lab,summary",
    [
        ("nu", None, "g1", "4 genus 5 curves"),
        ("nu", None, "g4", "32 pt"),
        ("nu", None, "g7", "16 pt, 8 ell. curves"),
        ("nu", None, "g14", "32 pt"),
        ("nu", "nu=(b1:1)", "g14", "32 pt"),
        ("nu", "nu=(b1:1)", "g11", "32 pt, 8 nodes"),
        ("mu", None, "g9", "16 pt, 8 ell. curves"),
        ("b", "b1*b2*b3=1", "g4", "16 pt, 8 nodes"),
    ],
)
def test_selected_fixed_loci(kind, spec, lab, summary):
    assert fixed_locus_on_X(family(kind, spec), by_label(lab)).summary() == summary


def test_fixed_components_lie_on_X_and_are_fixed():
    fam = family("nu")
    g = by_label("g7")
    locus = fixed_locus_on_X(fam, g)
    for comp in locus.components:
        assert comp.same_locus(comp.moved(g))
        if comp.kind == "point":
            z = tuple(comp.pins)
            assert fam.on_surface(z) and contains_point(fam, comp, z)
            assert tuple(move_point(g.code(j + 1), pt) for j, pt in enumerate(z)) == z


def test_genus_five_curves():
    locus = fixed_locus_on_X(family("nu"), by_label("g1"))
    assert [c.genus for c in locus.curves()] == [5, 5, 5, 5]
