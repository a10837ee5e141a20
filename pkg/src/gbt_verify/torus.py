"""Torsion points on E1 x E2 x E3 and the affine (Z/2)^9 action on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_LEVEL = 4
HALF = Fraction(1, 2)


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """The point ``p + q*tau_j`` of factor ``j`` (coordinates taken mod 1)."""

    factor: int
    p: Fraction
    q: Fraction

    def __post_init__(self):
        if self.factor not in (1, 2, 3):
            raise ValueError("factor index must be 1, 2 or 3")
        object.__setattr__(self, "p", _mod1(self.p))
        object.__setattr__(self, "q", _mod1(self.q))

    def level(self) -> int:
        """Smallest N with N*z = 0."""
        d1, d2 = self.p.denominator, self.q.denominator
        return d1 * d2 // _gcd(d1, d2)

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        if other.factor != self.factor:
            raise ValueError("points on different factors")
        return TorsionPoint(self.factor, self.p + other.p, self.q + other.q)

    def __neg__(self):
        return TorsionPoint(self.factor, -self.p, -self.q)

    def doubled(self) -> "TorsionPoint":
        return self + self

    def is_two_torsion(self) -> bool:
        return (2 * self.p).denominator == 1 and (2 * self.q).denominator == 1

    def __str__(self):
        parts = []
        if self.p:
            parts.append(str(self.p))
        if self.q:
            parts.append(f"{self.q}t{self.factor}" if self.q != 1 else f"t{self.factor}")
        return "+".join(parts) or "0"

    def to_json(self) -> list:
        return [str(self.p), str(self.q)]


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


def torsion_points(factor: int, level: int = DEFAULT_LEVEL) -> list:
    """All ``level``-torsion points of one factor, canonically ordered."""
    return [
        TorsionPoint(factor, Fraction(i, level), Fraction(k, level))
        for i in range(level)
        for k in range(level)
    ]


def torsion_triples(level: int = DEFAULT_LEVEL) -> Iterable[tuple]:
    return itertools.product(*(torsion_points(j, level) for j in (1, 2, 3)))


def two_torsion(factor: int) -> list:
    return torsion_points(factor, 2)


@dataclass(frozen=True, order=True)
class FactorCode:
    """Per-factor bits ``(zeta, eta, epsilon)``."""

    zeta: int
    eta: int
    epsilon: int

    @property
    def sign(self) -> int:
        return -1 if (self.zeta + self.eta + self.epsilon) % 2 else 1

    @property
    def translation(self) -> tuple:
        """Translation part as ``(p, q)``: ``eta*tau/2 + epsilon/2``."""
        return (HALF * self.epsilon, HALF * self.eta)

    def apply(self, z: TorsionPoint) -> TorsionPoint:
        tp, tq = self.translation
        return TorsionPoint(z.factor, self.sign * z.p + tp, self.sign * z.q + tq)

    def __str__(self):
        return f"{self.zeta}{self.eta}{self.epsilon}"


@dataclass(frozen=True, order=True)
class GroupElement:
    """Element of (Z/2)^9 stored as nine bits ``zeta1 eta1 eps1 | ... | zeta3 eta3 eps3``."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(x) % 2 for x in self.bits)
        if len(bits) != 9:
            raise ValueError("a group element has nine bits")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Accepts ``"000|100|100"``, ``"0,0,0,1,0,0,1,0,0"`` or plain bit strings."""
        digits = [c for c in text if c in "01"]
        return cls(tuple(int(c) for c in digits))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls((0,) * 9)

    @property
    def codes(self) -> tuple:
        return tuple(FactorCode(*self.bits[3 * j : 3 * j + 3]) for j in range(3))

    def code(self, j: int) -> FactorCode:
        return self.codes[j - 1]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(x ^ y for x, y in zip(self.bits, other.bits)))

    def is_identity(self) -> bool:
        return not any(self.bits)

    def __str__(self):
        return "|".join(str(c) for c in self.codes)

    __repr__ = __str__


def act(g: GroupElement, z: Sequence[TorsionPoint]) -> tuple:
    """Apply ``g`` to a triple of torsion points."""
    return tuple(code.apply(zj) for code, zj in zip(g.codes, z))


def act_on_factor(g: GroupElement, z: TorsionPoint) -> TorsionPoint:
    return g.code(z.factor).apply(z)


# ---------------------------------------------------------------------------
# Subgroups


def closure(generators: Iterable[GroupElement]) -> frozenset:
    elems = {GroupElement.identity()}
    for gen in generators:
        elems |= {e + gen for e in elems}
    return frozenset(elems)


def _all_elements() -> list:
    return [GroupElement(bits) for bits in itertools.product((0, 1), repeat=9)]


@dataclass(frozen=True)
class SubgroupSpec:
    name: str
    elements: frozenset

    @classmethod
    def generated(cls, name: str, generators: Iterable[GroupElement]) -> "SubgroupSpec":
        return cls(name, closure(generators))

    @classmethod
    def where(cls, name: str, predicate) -> "SubgroupSpec":
        return cls(name, frozenset(g for g in _all_elements() if predicate(g.bits)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements)

    def nontrivial(self) -> list:
        return [g for g in self.sorted_elements() if not g.is_identity()]

    def __contains__(self, g) -> bool:
        return g in self.elements

    def issubset(self, other: "SubgroupSpec") -> bool:
        return self.elements <= other.elements

    def coset(self, sigma: GroupElement) -> list:
        return sorted(sigma + g for g in self.elements)

    def generators(self) -> list:
        """A minimal generating set, greedily chosen in canonical order."""
        gens, span = [], frozenset({GroupElement.identity()})
        for g in self.sorted_elements():
            if g not in span:
                gens.append(g)
                span = closure(gens)
        return gens


def _g(text: str) -> GroupElement:
    return GroupElement.parse(text)


G0_ELEMENT = _g("100|100|100")


@lru_cache(maxsize=None)
def named_subgroup(name: str) -> SubgroupSpec:
    """The groups used throughout: full, G0, G1', G1 and the four free groups."""
    # bit positions: zeta_j = 3(j-1), eta_j = 3(j-1)+1, eps_j = 3(j-1)+2
    if name == "G_full":
        return SubgroupSpec("G_full", frozenset(_all_elements()))
    if name == "G0":
        return SubgroupSpec.where(
            "G0", lambda x: x[1] == x[4] == x[7] and (x[2] + x[5] + x[8]) % 2 == 0
        )
    if name == "G1'":
        return SubgroupSpec.where(
            "G1'", lambda x: x[2] == 0 and x[1] == x[4] == x[7] and x[5] == x[8]
        )
    if name == "G1":
        return SubgroupSpec.where(
            "G1", lambda x: x[1] == x[4] == x[7] == 0 and (x[2] + x[5] + x[8]) % 2 == 0
        )
    if name in FREE_GROUP_GENERATORS:
        return SubgroupSpec.generated(name, [_g(t) for t in FREE_GROUP_GENERATORS[name]])
    if name == "trivial":
        return SubgroupSpec("trivial", frozenset({GroupElement.identity()}))
    raise KeyError(f"unknown group {name!r}")


FREE_GROUP_GENERATORS = {
    "GrpG1": ("100|100|100", "010|110|110", "000|001|101"),
    "GrpG2": ("100|001|101", "001|000|101", "000|101|001"),
    "GrpG3": ("100|001|101", "010|010|110", "001|101|100"),
    "GrpG4": ("101|001|100", "010|010|110", "000|101|101"),
}

# Which ambient group each free group sits in.
FREE_GROUP_AMBIENT = {"GrpG1": "G1'", "GrpG2": "G1", "GrpG3": "G0", "GrpG4": "G0"}


# ---------------------------------------------------------------------------
# Fixed loci on T


@dataclass(frozen=True)
class FourPoints:
    points: tuple

    kind = "points"


@dataclass(frozen=True)
class WholeCurve:
    kind = "curve"


@dataclass(frozen=True)
class EmptyFactor:
    kind = "empty"


def factor_fixed_set(code: FactorCode, factor: int):
    """Fixed points of ``z -> s*z + t`` on one factor."""
    tp, tq = code.translation
    if code.sign == 1:
        return WholeCurve() if (tp, tq) == (0, 0) else EmptyFactor()
    # 2z = t: one solution is t/2, the others differ by 2-torsion
    base = TorsionPoint(factor, tp / 2, tq / 2)
    return FourPoints(tuple(sorted(base + e for e in two_torsion(factor))))


@dataclass(frozen=True)
class TFixedLocus:
    element: GroupElement
    per_factor: tuple

    @property
    def empty(self) -> bool:
        return any(isinstance(f, EmptyFactor) for f in self.per_factor)

    @property
    def dimension(self):
        if self.empty:
            return None
        return sum(isinstance(f, WholeCurve) for f in self.per_factor)

    def fixed_factors(self) -> list:
        """Indices (1-based) of factors with finitely many fixed points."""
        return [j + 1 for j, f in enumerate(self.per_factor) if isinstance(f, FourPoints)]

    def free_factors(self) -> list:
        return [j + 1 for j, f in enumerate(self.per_factor) if isinstance(f, WholeCurve)]

    def point_choices(self) -> Iterable[dict]:
        """All assignments of fixed points to the non-free factors."""
        fixed = self.fixed_factors()
        lists = [self.per_factor[j - 1].points for j in fixed]
        for combo in itertools.product(*lists):
            yield dict(zip(fixed, combo))

    def contains(self, z: Sequence[TorsionPoint]) -> bool:
        return act(self.element, z) == tuple(z)


def fixed_locus_on_T(g: GroupElement) -> TFixedLocus:
    if g.is_identity():
        raise ValueError("the identity fixes everything")
    return TFixedLocus(g, tuple(factor_fixed_set(c, j + 1) for j, c in enumerate(g.codes)))


def enumerate_fixing_elements(group: SubgroupSpec) -> list:
    """Non-identity elements of ``group`` with fixed points on T.

    Sorted by decreasing fixed dimension, then by the column order of the
    reference table (see ``TABLE1``) and finally lexicographically.
    """
    out = []
    for g in group.nontrivial():
        locus = fixed_locus_on_T(g)
        if not locus.empty:
            out.append((g, locus))
    order = {g: k for k, g in enumerate(TABLE1)}
    out.sort(key=lambda item: (-item[1].dimension, order.get(item[0], len(order)), item[0]))
    return out


def induced_p1_action(g: GroupElement) -> tuple:
    """``(zeta, eta, eps) -> (eta, eps)`` on each factor."""
    return tuple((c.eta, c.epsilon) for c in g.codes)


# Reference labelling g1..g17 of the elements of G0 with fixed points on T.
TABLE1 = tuple(
    _g(t)
    for t in (
        "000|000|100", "000|100|000", "100|000|000",
        "000|100|100", "100|000|100", "100|100|000",
        "000|001|001", "001|000|001", "001|001|000",
        "100|100|100", "100|001|001", "001|100|001", "001|001|100",
        "010|010|010", "010|111|111", "111|010|111", "111|111|010",
    )
)


def label(g: GroupElement) -> str:
    """``g1``..``g17`` for the tabulated elements, else the bit string."""
    try:
        return f"g{TABLE1.index(g) + 1}"
    except ValueError:
        return str(g)


def by_label(name: str) -> GroupElement:
    if name.startswith("g") and name[1:].isdigit():
        return TABLE1[int(name[1:]) - 1]
    return GroupElement.parse(name)
