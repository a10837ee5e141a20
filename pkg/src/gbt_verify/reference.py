"""Reference values that the computations are compared against.

Everything here is transcribed data or a closed-form description of it;
nothing is computed from the surface equations.  Entries known to be wrong
are kept verbatim and listed in ``ERRATA`` with the reason they cannot hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import LaurentPoly, SymValue, b
from .hypersurface import Family
from .torus import TorsionPoint

# Bit-vectors of the 17 elements with fixed points on T, in reference order.
TABLE1_BITS = (
    "000|000|100", "000|100|000", "100|000|000",
    "000|100|100", "100|000|100", "100|100|000",
    "000|001|001", "001|000|001", "001|001|000",
    "100|100|100", "100|001|001", "001|100|001", "001|001|100",
    "010|010|010", "010|111|111", "111|010|111", "111|111|010",
)
TABLE1_DIMENSIONS = (2,) * 3 + (1,) * 6 + (0,) * 8

# Elements that fix points on X, and the one whose fixed points lie on X only
# for special moduli.
FIXING_ON_X = {
    "nu": ("g1 g2 g3 g4 g5 g6 g7 g11 g14 g15".split(), ["g10"]),
    "mu": ("g1 g2 g3 g4 g5 g6 g7 g8 g9 g11 g12 g13".split(), ["g10"]),
    "b": (["g%d" % k for k in range(1, 18) if k != 10], ["g10"]),
}

_G5 = "4 genus 5 curves"
_32 = "32 pt"
_16E = "16 pt, 8 ell. curves"
_GAMMA = "2 genus 5 curves, 8 ell. curves"

# Fixed-locus tables: (family, column) -> {element label: summary}.
FIXED_LOCUS_TABLES = {
    ("nu", "smooth"): {
        "g1": _G5, "g2": _G5, "g3": _G5, "g4": _32, "g5": _32, "g6": _32,
        "g7": _16E, "g11": _32, "g14": _32, "g15": _32,
    },
    ("nu", "singular"): {
        "g1": _G5, "g2": _G5, "g3": _GAMMA, "g4": _32, "g5": _32, "g6": _32,
        "g7": "8 nodes, 8 ell. curves", "g11": "32 pt, 8 nodes", "g14": _32, "g15": _32,
    },
    ("mu", "smooth"): {
        "g1": _G5, "g2": _G5, "g3": _G5, "g4": _32, "g5": _32, "g6": _32,
        "g7": _16E, "g8": _16E, "g9": _16E, "g11": _32, "g12": _32, "g13": _32,
    },
    ("b", "smooth"): {
        "g4": _32, "g5": _32, "g6": _32, "g7": _16E, "g8": _16E, "g9": _16E,
    },
    ("b", "singular"): {
        "g4": "16 pt, 8 nodes", "g5": "16 pt, 8 nodes", "g6": "16 pt, 8 nodes",
        "g7": "8 nodes, 8 ell. curves", "g8": "8 nodes, 8 ell. curves",
        "g9": "8 nodes, 8 ell. curves",
    },
}

# Parameter choices standing for each column.
COLUMN_SPECS = {
    ("nu", "smooth"): None,
    ("nu", "singular"): "nu=(b1:1)",
    ("mu", "smooth"): None,
    ("b", "smooth"): None,
    ("b", "singular"): "b1*b2*b3=1",
}


@dataclass(frozen=True)
class Erratum:
    family: str
    column: str
    element: str
    tabulated: str
    expected: str
    reason: str


ERRATA = tuple(
    Erratum(
        "b",
        "singular",
        g,
        "8 nodes, 8 ell. curves",
        _16E,
        f"{g} fixes only quarter points that are not 2-torsion in two factors, "
        "while every node of the singular b-surfaces is 2-torsion in all factors; "
        "the locus is the same as for smooth b-surfaces",
    )
    for g in ("g7", "g8", "g9")
)


def erratum_for(family: str, column: str, element: str):
    for e in ERRATA:
        if (e.family, e.column, e.element) == (family, column, element):
            return e
    return None


# Stated contents of the quotient fixed loci, per scheme and involution.
STATED_QUOTIENT_LOCI = {
    ("G1", "sigma1"): "genus 3 curve, elliptic curve, 8 points",
    ("G1", "sigma2"): "genus 3 curve, elliptic curve, 8 points",
    ("G1", "sigma3"): "genus 2 curve, 8 points",
    ("G2", "sigma4"): "10 points, two genus 2 curves, two elliptic curves",
    ("G3", "sigma6"): "6 points, elliptic curve",
    ("G4", "sigma6"): "6 points, elliptic curve",
}

# Quotient surface invariants.
COVER_INVARIANTS = {"K2": 48, "e": 48, "chi": 8}
QUOTIENT_INVARIANTS = {"K2": 6, "chi": 1}
ADJUNCTION_GENUS_22 = 5

# Counts for the bad parameter sets.
NU_BAD_VALUES = 4
NU_NONFREE_VALUES = 16
MU_NONFREE_VALUES = 16
B_RELATIONS = 8
NODES_PER_SINGULAR_SURFACE = 8


def nu_bad_values() -> list:
    """The parameters ``(+-b1 : 1)`` and ``(1 : +-b1)``."""
    b1 = b(1)
    one = LaurentPoly.const(1)
    return [SymValue(b1, one), SymValue(-b1, one), SymValue(one, b1), SymValue(one, -b1)]


def _quarter(factor: int, p, q) -> TorsionPoint:
    return TorsionPoint(factor, Fraction(p), Fraction(q))


def nu_expected_nodes(family: Family) -> list:
    """The eight nodes for a bad parameter, from the closed-form description.

    With ``nu = p1/p2`` in the affine chart the nodes are
    ``z1 = L1^{-1}(-nu b1)`` with ``z2, z3`` in ``{+-1/4}``, and
    ``z1 = L1^{-1}(-b1/nu)`` with ``z2, z3`` in ``{tau/2 +- 1/4}``.
    """
    nu = family.parameter_value()
    b1 = family.apply(b(1))
    first = SymValue(-nu.num * b1, nu.den)
    second = SymValue(-nu.den * b1, nu.num)
    out = []
    for target, shift in ((first, Fraction(0)), (second, Fraction(1, 2))):
        z1s = [z for z in family.points_with_value(1, target) if isinstance(z, TorsionPoint)]
        for z1 in z1s:
            for p2 in (Fraction(1, 4), Fraction(3, 4)):
                for p3 in (Fraction(1, 4), Fraction(3, 4)):
                    out.append((z1, _quarter(2, p2, shift), _quarter(3, p3, shift)))
    return out
