from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gbt_verify.field import (
    I,
    INFINITY,
    GaussianRational,
    LaurentPoly,
    MonomialRelation,
    SymValue,
    UnsupportedPointError,
    VARIABLES,
    a,
    b,
    branch_values,
    build_legendre_table,
    legendre_value,
    p1_image,
    parse_monomial,
    parse_specialization,
)
from gbt_verify.torus import TorsionPoint

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)
exps = st.tuples(*[st.integers(-3, 3)] * 3, st.integers(0, 2), st.integers(0, 2))
polys = st.lists(st.tuples(exps, gaussians), max_size=4).map(LaurentPoly)
nonzero_gaussians = gaussians.filter(lambda g: not g.is_zero())


@given(gaussians, gaussians, gaussians)
def test_gaussian_rationals_form_a_commutative_ring(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(nonzero_gaussians)
def test_gaussian_inverse(x):
    assert x * x.inverse() == GaussianRational(1)
    assert x.norm() > 0


def test_i_squared():
    assert I * I == GaussianRational(-1)
    assert I ** 4 == GaussianRational(1)
    assert complex(I) == 1j


@given(polys, polys, polys)
def test_laurent_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys, polys, st.lists(st.complex_numbers(min_magnitude=0.5, max_magnitude=2), min_size=5, max_size=5))
def test_evaluation_is_a_homomorphism(p, q, xs):
    values = dict(zip(VARIABLES, xs))
    assert (p * q).evaluate(values) == pytest.approx(p.evaluate(values) * q.evaluate(values), rel=1e-9, abs=1e-9)
    assert (p + q).evaluate(values) == pytest.approx(p.evaluate(values) + q.evaluate(values), rel=1e-9, abs=1e-9)


def test_monomial_inverse_and_units():
    m = LaurentPoly.monomial(GaussianRational(2, 1), (1, -2, 0, 0, 0))
    assert m * m.inverse() == LaurentPoly.const(1)
    with pytest.raises(ZeroDivisionError):
        (b(1) + b(2)).inverse()
    with pytest.raises(ZeroDivisionError):
        LaurentPoly.var("p1").inverse()


def test_subs_is_a_substitution():
    p = b(1) ** 2 + b(2) * b(3)
    assert p.subs({"b1": b(2)}) == b(2) ** 2 + b(2) * b(3)
    assert p.subs({}) == p


def test_symvalue_is_projective():
    assert SymValue(b(1), LaurentPoly.const(1)) == SymValue(b(1) * b(2), b(2))
    assert INFINITY.is_infinite
    with pytest.raises(ValueError):
        SymValue(LaurentPoly(), LaurentPoly())


def test_parse_monomial():
    assert parse_monomial("-b1^2*b2^-1") == -(b(1) ** 2) * b(2) ** -1
    assert parse_monomial("i*b3") == LaurentPoly.const(I) * b(3)
    assert parse_monomial("1/2") == LaurentPoly.const(Fraction(1, 2))
    with pytest.raises(ValueError):
        parse_monomial("b4")
    with pytest.raises(ValueError):
        parse_monomial("")


def test_parse_specialization_forms():
    nu = parse_specialization("nu=(b1:1)")
    assert nu.mapping == {"p1": b(1), "p2": LaurentPoly.const(1)}
    mu = parse_specialization("mu=b1^2")
    assert mu.mapping["p1"] == b(1) ** 2
    rel = parse_specialization("b1*b2*b3=1")
    assert rel.mapping == {"b3": b(1) ** -1 * b(2) ** -1}
    direct = parse_specialization("b3=b1^-1*b2^-1")
    assert direct.mapping == rel.mapping


@pytest.mark.parametrize(
    "text", ["", "nu", "nu=(b1:", "b1=b1^2", "1=1", "b1=b2, b1=b3", "q=1"]
)
def test_parse_specialization_rejects(text):
    with pytest.raises(ValueError):
        parse_specialization(text)


@given(st.tuples(*[st.integers(-2, 2)] * 3).filter(any), st.sampled_from([1, -1, I, -I]))
def test_monomial_relation_canonical_sign(e, c):
    r1 = MonomialRelation.canonical(e, c)
    r2 = MonomialRelation.canonical(tuple(-x for x in e), GaussianRational.coerce(c).inverse())
    assert r1 == r2


@given(st.tuples(*[st.sampled_from([-1, 1])] * 3), st.sampled_from([1, -1]))
def test_relation_specialization_satisfies_relation(e, c):
    rel = MonomialRelation.canonical(e, c)
    spec = rel.specialization()
    lhs = LaurentPoly.const(1)
    for j, x in enumerate(rel.exponents):
        lhs = lhs * b(j + 1) ** x
    assert spec.apply(lhs) == LaurentPoly.const(rel.coeff)


# Legendre table ------------------------------------------------------------

KEYS = list(itertools.product(range(4), repeat=2))


@pytest.mark.parametrize("conv", [1, -1])
@pytest.mark.parametrize("j", [1, 2, 3])
def test_legendre_seed_values(j, conv):
    t = build_legendre_table(j, conv)
    assert len(t) == 16
    assert t[(0, 0)] == SymValue.of(1)
    assert t[(1, 0)].is_zero_value
    assert t[(0, 1)] == SymValue.of(b(j))
    assert t[(1, 1)] == SymValue.of(LaurentPoly.const(I * conv) * b(j))


@given(st.sampled_from([1, 2, 3]), st.sampled_from([1, -1]), st.sampled_from(KEYS))
def test_legendre_identities_hold_everywhere(j, conv, key):
    t = build_legendre_table(j, conv)
    p, q = key
    v = t[key]
    assert t[((p + 2) % 4, q)] == -v
    assert t[((-p) % 4, (-q) % 4)] == v
    assert t[(p, (q + 2) % 4)] == v.scaled_reciprocal(a(j))


MOVES = {
    "half": (lambda p, q: ((p + 2) % 4, q), lambda v, j: -v),
    "neg": (lambda p, q: ((-p) % 4, (-q) % 4), lambda v, j: v),
    "halftau": (lambda p, q: (p, (q + 2) % 4), lambda v, j: v.scaled_reciprocal(a(j))),
}


@given(
    st.sampled_from([1, 2, 3]),
    st.sampled_from([1, -1]),
    st.sampled_from(list(range(4))),
    st.lists(st.sampled_from(sorted(MOVES)), max_size=12),
)
def test_legendre_route_independence(j, conv, seed, path):
    """Walking any path of identities from a seed value lands on the tabulated value."""
    t = build_legendre_table(j, conv)
    key = [(0, 0), (1, 0), (0, 1), (1, 1)][seed]
    v = t[key]
    for name in path:
        mv_pt, mv_val = MOVES[name]
        key, v = mv_pt(*key), mv_val(v, j)
    assert t[key] == v


@pytest.mark.parametrize("j", [1, 2, 3])
def test_two_torsion_values_are_branch_values(j):
    got = [legendre_value(j, TorsionPoint(j, Fraction(p, 2), Fraction(q, 2))) for p in (0, 1) for q in (0, 1)]
    assert sorted(map(str, got)) == sorted(map(str, branch_values(j)))


def test_legendre_rejects_other_torsion():
    with pytest.raises(UnsupportedPointError):
        legendre_value(1, TorsionPoint(1, Fraction(1, 3), Fraction(0)))


@given(st.sampled_from([1, 2, 3]), st.sampled_from(KEYS), st.integers(0, 1), st.integers(0, 1))
def test_p1_image_matches_translation(j, key, eta, eps):
    """(eta, eps) acts on values as translation by eta*tau/2 + eps/2 acts on points."""
    t = build_legendre_table(j, 1)
    p, q = key
    moved = ((p + 2 * eps) % 4, (q + 2 * eta) % 4)
    assert p1_image(j, eta, eps, t[key]) == t[moved]
