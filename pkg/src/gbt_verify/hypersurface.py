"""The three trilinear hypersurface families on E1 x E2 x E3 and their fixed loci.

A family is stored as a 2x2x2 coefficient tensor ``c[i, j, k]``; the surface
is ``sum c[i,j,k] x_i y_j w_k = 0`` where ``(x_0 : x_1)`` are homogeneous
coordinates of the Legendre value on the first factor (``x_0/x_1 = L_1``),
and similarly for the other two factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .field import (
    B_PRODUCT,
    ONE,
    P1,
    P2,
    ZERO,
    Condition,
    LaurentPoly,
    MonomialRelation,
    SymValue,
    Specialization,
    a,
    b,
    branch_values,
    join_conditions,
    legendre_value,
    p1_image,
    param_solve_linear,
)
from .torus import (
    FactorCode,
    FourPoints,
    GroupElement,
    SubgroupSpec,
    TorsionPoint,
    fixed_locus_on_T,
    label,
    torsion_points,
)

FAMILY_KINDS = ("nu", "mu", "b")


class FamilyError(ValueError):
    """Raised for inadmissible parameters or a specialization that does not fit."""


# ---------------------------------------------------------------------------
# Points on a single factor


@dataclass(frozen=True)
class FiberPoint:
    """A non-torsion point ``sign*z0 + shift`` of one factor.

    ``z0`` is a chosen point with ``L(z0) = base`` and ``shift`` is 2-torsion,
    so the Legendre value is the image of ``base`` under the shift.  Points
    whose value is not a quarter-torsion value are described this way, which
    keeps the group action exact on them.
    """

    factor: int
    base: SymValue
    shift: TorsionPoint
    sign: int

    def is_two_torsion(self) -> bool:
        return False

    def moved(self, code: FactorCode) -> "FiberPoint":
        tp, tq = code.translation
        shift = TorsionPoint(self.factor, self.shift.p + tp, self.shift.q + tq)
        return FiberPoint(self.factor, self.base, shift, self.sign * code.sign)

    def __str__(self):
        sgn = "+" if self.sign > 0 else "-"
        return f"{sgn}z[L={self.base}]+{self.shift}"

    def to_json(self) -> dict:
        return {"base": str(self.base), "shift": self.shift.to_json(), "sign": self.sign}


LocalPoint = Union[TorsionPoint, FiberPoint]


def move_point(code: FactorCode, pt: LocalPoint) -> LocalPoint:
    if isinstance(pt, FiberPoint):
        return pt.moved(code)
    return code.apply(pt)


def point_json(pt: LocalPoint):
    return pt.to_json()


# ---------------------------------------------------------------------------
# Families


def _tensor(entries: dict) -> tuple:
    return tuple(
        (idx, LaurentPoly.coerce(entries.get(idx, ZERO)))
        for idx in itertools.product((0, 1), repeat=3)
    )


@dataclass(frozen=True)
class Family:
    kind: str
    tensor: tuple  # ((i, j, k), LaurentPoly) for all 8 index triples
    convention: tuple = (1, 1, 1)
    spec: Optional[Specialization] = None

    # construction ----------------------------------------------------------
    @classmethod
    def make(cls, kind: str, convention=(1, 1, 1), spec: Specialization | None = None) -> "Family":
        if kind == "nu":
            entries = {
                (0, 0, 0): P1,
                (1, 1, 1): P1 * B_PRODUCT,
                (0, 1, 1): P2 * b(2) * b(3),
                (1, 0, 0): P2 * b(1),
            }
        elif kind == "mu":
            # L1 L2 L3 = mu with mu = p1/p2, homogenized
            entries = {(0, 0, 0): P2, (1, 1, 1): -P1}
        elif kind == "b":
            entries = {(0, 0, 0): ONE, (1, 1, 1): -B_PRODUCT}
        else:
            raise FamilyError(f"unknown family {kind!r}")
        fam = cls(kind, _tensor(entries), tuple(convention))
        return fam.specialized(spec) if spec is not None else fam

    def specialized(self, spec: Specialization | None) -> "Family":
        if spec is None:
            return replace(self, spec=None)
        names = spec.variables()
        has_param = bool(names & {"p1", "p2"})
        if has_param and self.kind == "b":
            raise FamilyError("the b-family has no parameter to specialize")
        if has_param and not {"p1", "p2"} <= names:
            raise FamilyError("a parameter specialization must fix both p1 and p2")
        fam = replace(self, spec=spec)
        if has_param:
            value = fam.parameter_value()
            for bad in fam.excluded_parameters():
                if value == bad:
                    raise FamilyError(
                        f"parameter {value} is excluded for the {self.kind}-family "
                        "(reducible or degenerate surface)"
                    )
        return fam

    # parameters -------------------------------------------------------------
    @property
    def has_parameter(self) -> bool:
        return self.kind in ("nu", "mu")

    @property
    def generic(self) -> bool:
        """True when the parameter is still a formal symbol."""
        return self.has_parameter and not (self.spec and "p1" in self.spec.variables())

    def parameter_value(self) -> SymValue:
        return SymValue(self.apply(P1), self.apply(P2))

    def excluded_parameters(self) -> tuple:
        if self.kind == "nu":
            return (SymValue.of(1), SymValue.of(-1))
        if self.kind == "mu":
            return (SymValue.of(0), SymValue(ONE, ZERO))
        return ()

    def apply(self, x):
        return self.spec.apply(x) if self.spec is not None else x

    def describe(self) -> str:
        base = {"nu": "nu-family", "mu": "mu-family", "b": "b-family"}[self.kind]
        return f"{base} [{self.spec}]" if self.spec is not None else f"{base} [generic]"

    # values -------------------------------------------------------------------
    def table_value(self, j: int, z: TorsionPoint) -> SymValue:
        return self.apply(legendre_value(j, z, self.convention[j - 1]))

    def value(self, pt: LocalPoint) -> SymValue:
        if isinstance(pt, FiberPoint):
            eta, eps = int(2 * pt.shift.q), int(2 * pt.shift.p)
            return self.apply(p1_image(pt.factor, eta, eps, pt.base))
        return self.table_value(pt.factor, pt)

    def branch_values(self, j: int) -> tuple:
        return tuple(self.apply(v) for v in branch_values(j))

    def points_with_value(self, j: int, v: SymValue) -> list:
        """All points of factor ``j`` where the Legendre value is ``v``."""
        hits = [z for z in torsion_points(j, 4) if self.table_value(j, z) == v]
        if hits:
            return hits
        orbit = []
        for eta, eps in itertools.product((0, 1), repeat=2):
            orbit.append(((eta, eps), self.apply(p1_image(j, eta, eps, v)).canonical()))
        (eta, eps), base = min(orbit, key=lambda item: str(item[1]))
        # the shift carries base to v (the action is an involution)
        shift = TorsionPoint(j, Fraction(eps, 2), Fraction(eta, 2))
        return [FiberPoint(j, base, shift, 1), FiberPoint(j, base, shift, -1)]

    # contraction ------------------------------------------------------------
    def restrict(self, values: dict) -> dict:
        """Contract the tensor with fixed values on some factors.

        ``values`` maps factor index to a SymValue.  The result maps index
        tuples of the remaining factors (in increasing order) to coefficients.
        """
        free = [j for j in (1, 2, 3) if j not in values]
        out = {key: ZERO for key in itertools.product((0, 1), repeat=len(free))}
        for idx, coeff in self.tensor:
            if coeff.is_zero():
                continue
            term = coeff
            for j, v in values.items():
                term = term * (v.num if idx[j - 1] == 0 else v.den)
            key = tuple(idx[j - 1] for j in free)
            out[key] = out[key] + term
        return {k: self.apply(v) for k, v in out.items()}

    def evaluate_values(self, values: Sequence[SymValue]) -> LaurentPoly:
        return self.restrict({1: values[0], 2: values[1], 3: values[2]})[()]

    def evaluate(self, z: Sequence[LocalPoint]) -> LaurentPoly:
        """The incidence polynomial at a point: zero iff the point is on X."""
        return self.evaluate_values([self.value(p) for p in z])

    def incidence(self, z: Sequence[LocalPoint]) -> Condition:
        return param_solve_linear(self.evaluate(z))

    def on_surface(self, z: Sequence[LocalPoint]) -> bool:
        return self.evaluate(z).is_zero()

    def factor_form(self, j: int, values: dict) -> tuple:
        """Coefficients ``(F0, F1)`` of the restriction to factor ``j``.

        ``values`` must hold the Legendre values of the other two factors.
        """
        r = self.restrict({k: v for k, v in values.items() if k != j})
        return r[(0,)], r[(1,)]

    def is_singular_values(self, values: dict, two_torsion: dict) -> bool:
        """Singularity test from Legendre values and 2-torsion flags.

        The derivative along ``z_j`` is ``L_j'`` times the derivative of the
        trilinear form along the P^1 factor; ``L_j'`` vanishes exactly at the
        2-torsion points, and the P^1 derivative vanishes exactly when the
        restricted linear form is identically zero.
        """
        if not self.evaluate_values([values[1], values[2], values[3]]).is_zero():
            return False
        for j in (1, 2, 3):
            if two_torsion[j]:
                continue
            f0, f1 = self.factor_form(j, values)
            if not (f0.is_zero() and f1.is_zero()):
                return False
        return True

    def is_singular(self, z: Sequence[LocalPoint]) -> bool:
        values = {j + 1: self.value(p) for j, p in enumerate(z)}
        flags = {j + 1: p.is_two_torsion() for j, p in enumerate(z)}
        return self.is_singular_values(values, flags)


def nu_family(**kw) -> Family:
    return Family.make("nu", **kw)


def mu_family(**kw) -> Family:
    return Family.make("mu", **kw)


def b_family(**kw) -> Family:
    return Family.make("b", **kw)


# ---------------------------------------------------------------------------
# Components of fixed loci

POINT, ELLIPTIC, BIDEGREE22 = "point", "elliptic", "bidegree22"


@dataclass(frozen=True)
class Component:
    """``X`` intersected with the locus where some coordinates are pinned.

    ``pins[j-1]`` is the pinned point of factor ``j`` or ``None`` if the
    factor is free.  Three pins give a point, two an elliptic curve
    ``E_f x {pt}``, one a bidegree (2,2) curve in the two free factors.
    """

    kind: str
    pins: tuple
    genus: int = 0
    node: bool = False
    matrix: tuple = ()
    shared_branch_points: int = 0

    @property
    def free_factors(self) -> list:
        return [j + 1 for j, p in enumerate(self.pins) if p is None]

    @property
    def is_curve(self) -> bool:
        return self.kind != POINT

    def moved(self, g: GroupElement) -> "Component":
        pins = tuple(
            None if p is None else move_point(g.code(j + 1), p) for j, p in enumerate(self.pins)
        )
        return replace(self, pins=pins)

    def same_locus(self, other: "Component") -> bool:
        return self.pins == other.pins

    def describe(self) -> str:
        pins = ", ".join("*" if p is None else str(p) for p in self.pins)
        if self.kind == POINT:
            return f"{'node' if self.node else 'point'} ({pins})"
        if self.kind == ELLIPTIC:
            return f"elliptic curve ({pins})"
        return f"genus {self.genus} curve ({pins})"

    def to_json(self, family: Family) -> dict:
        out = {
            "type": self.kind,
            "fixed_coords": [None if p is None else point_json(p) for p in self.pins],
            "l_values": [None if p is None else str(family.value(p)) for p in self.pins],
            "genus": self.genus,
            "node": self.node,
        }
        if self.kind == BIDEGREE22:
            out["shared_branch_points"] = self.shared_branch_points
        return out


@dataclass
class XFixedLocus:
    element: GroupElement
    family: Family
    components: list
    special: list = field(default_factory=list)  # (pins, Condition): on X only for special parameters
    anomalies: list = field(default_factory=list)

    def points(self) -> list:
        return [c for c in self.components if c.kind == POINT]

    def smooth_points(self) -> list:
        return [c for c in self.points() if not c.node]

    def nodes(self) -> list:
        return [c for c in self.points() if c.node]

    def curves(self) -> list:
        return [c for c in self.components if c.is_curve]

    def elliptic(self) -> list:
        return [c for c in self.components if c.kind == ELLIPTIC]

    def counts(self) -> dict:
        genera: dict = {}
        for c in self.curves():
            genera[c.genus] = genera.get(c.genus, 0) + 1
        return {
            "points": len(self.smooth_points()),
            "nodes": len(self.nodes()),
            "curves_by_genus": dict(sorted(genera.items())),
        }

    def summary(self) -> str:
        c = self.counts()
        parts = []
        if c["points"]:
            parts.append(f"{c['points']} pt")
        if c["nodes"]:
            parts.append(f"{c['nodes']} nodes")
        for genus, n in sorted(c["curves_by_genus"].items(), reverse=True):
            parts.append(f"{n} ell. curves" if genus == 1 else f"{n} genus {genus} curves")
        return ", ".join(parts) if parts else "empty"

    def is_empty(self) -> bool:
        return not self.components


def _linear_target(alpha: LaurentPoly, beta: LaurentPoly) -> SymValue:
    """Value ``v`` with ``alpha*v0 + beta*v1 = 0``."""
    return SymValue(-beta, alpha)


def _point_component(family: Family, pins) -> Component:
    return Component(POINT, tuple(pins), node=family.is_singular(pins))


def solve_pinned(family: Family, pins: dict) -> list:
    """Components of ``X`` inside ``{z_j = pins[j]}`` for two or three pins.

    Returns point components, or a single elliptic component when the
    equation vanishes identically on the free factor.
    """
    if len(pins) == 3:
        z = (pins[1], pins[2], pins[3])
        return [_point_component(family, z)] if family.on_surface(z) else []
    (free,) = [j for j in (1, 2, 3) if j not in pins]
    r = family.restrict({j: family.value(p) for j, p in pins.items()})
    alpha, beta = r[(0,)], r[(1,)]
    if alpha.is_zero() and beta.is_zero():
        full = tuple(pins.get(j) for j in (1, 2, 3))
        return [Component(ELLIPTIC, full, genus=1)]
    out = []
    for pt in family.points_with_value(free, _linear_target(alpha, beta)):
        full = dict(pins)
        full[free] = pt
        out.append(_point_component(family, (full[1], full[2], full[3])))
    return out


def _shared_branch_count(family: Family, first: int, second: int, matrix: dict) -> int:
    """How many branch values of ``first`` are sent to branch values of ``second``."""
    count = 0
    targets = family.branch_values(second)
    for v in family.branch_values(first):
        w0 = matrix[(0, 0)] * v.num + matrix[(1, 0)] * v.den
        w1 = matrix[(0, 1)] * v.num + matrix[(1, 1)] * v.den
        target = SymValue(-w1, w0)
        if any(target == t for t in targets):
            count += 1
    return count


def solve_one_pin(family: Family, j: int, pin: TorsionPoint) -> tuple:
    """Components of ``X`` inside ``{z_j = pin}``; returns ``(components, anomalies)``."""
    first, second = [k for k in (1, 2, 3) if k != j]
    m = family.restrict({j: family.value(pin)})
    if all(c.is_zero() for c in m.values()):
        return [], [f"X contains the whole surface z{j}={pin}"]
    det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
    pins = [None, None, None]
    pins[j - 1] = pin
    if not det.is_zero():
        shared = _shared_branch_count(family, first, second, m)
        comp = Component(
            BIDEGREE22,
            tuple(pins),
            genus=5 - shared,
            matrix=tuple(sorted(m.items())),
            shared_branch_points=shared,
        )
        anomalies = [f"bidegree (2,2) curve at z{j}={pin} has {shared} nodes"] if shared else []
        return [comp], anomalies
    # rank one: m = u (x) w
    row = next(i for i in (0, 1) if not (m[(i, 0)].is_zero() and m[(i, 1)].is_zero()))
    col = next(k for k in (0, 1) if not (m[(0, k)].is_zero() and m[(1, k)].is_zero()))
    u0, u1 = m[(0, col)], m[(1, col)]
    w0, w1 = m[(row, 0)], m[(row, 1)]
    comps = []
    for pt in family.points_with_value(first, _linear_target(u0, u1)):
        full = list(pins)
        full[first - 1] = pt
        comps.append(Component(ELLIPTIC, tuple(full), genus=1))
    for pt in family.points_with_value(second, _linear_target(w0, w1)):
        full = list(pins)
        full[second - 1] = pt
        comps.append(Component(ELLIPTIC, tuple(full), genus=1))
    return comps, []


def fixed_locus_on_X(family: Family, g: GroupElement) -> XFixedLocus:
    """Fixed locus of ``g`` on the surface, component by component."""
    locus_T = fixed_locus_on_T(g)
    result = XFixedLocus(g, family, [])
    if locus_T.empty:
        return result
    dim = locus_T.dimension
    if dim == 0:
        for choice in locus_T.point_choices():
            pins = (choice[1], choice[2], choice[3])
            cond = zero_condition(family, family.evaluate(pins))
            if cond == "always":
                result.components.append(_point_component(family, pins))
            elif cond != "never":
                result.special.append((pins, cond))
    elif dim == 1:
        for choice in locus_T.point_choices():
            result.components.extend(solve_pinned(family, choice))
    elif dim == 2:
        (j,) = locus_T.fixed_factors()
        for pin in locus_T.per_factor[j - 1].points:
            comps, anomalies = solve_one_pin(family, j, pin)
            result.components.extend(comps)
            result.anomalies.extend(anomalies)
    else:
        raise ValueError("g acts trivially on T")
    return result


# ---------------------------------------------------------------------------
# Intersections


def intersect(family: Family, first: Component, second: Component) -> list:
    """Exact intersection of two components, as a list of components."""
    pins = {}
    for j in (1, 2, 3):
        p, q = first.pins[j - 1], second.pins[j - 1]
        if p is not None and q is not None and p != q:
            return []
        if p is not None or q is not None:
            pins[j] = p if p is not None else q
    if len(pins) == 1:
        # both are the same bidegree (2,2) curve
        return [first]
    return solve_pinned(family, pins)


def component_intersections(family: Family, components: Sequence[Component]) -> list:
    """Pairwise intersections ``((i, k), points)`` with ``i < k`` that are non-empty."""
    out = []
    for i, k in itertools.combinations(range(len(components)), 2):
        meet = intersect(family, components[i], components[k])
        if meet:
            out.append(((i, k), meet))
    return out


def incidence_grid(family: Family, level: int = 4) -> dict:
    """Incidence polynomial at every ``level``-torsion triple, by nested contraction.

    Each Legendre value is computed once and the tensor is contracted one
    factor at a time, which is much cheaper than evaluating point by point.
    """
    tensor = {idx: family.apply(c) for idx, c in family.tensor}
    pts = [[(z, family.table_value(j, z)) for z in torsion_points(j, level)] for j in (1, 2, 3)]
    out = {}
    for z1, v1 in pts[0]:
        t1 = {
            (j, k): tensor[(0, j, k)] * v1.num + tensor[(1, j, k)] * v1.den
            for j in (0, 1)
            for k in (0, 1)
        }
        for z2, v2 in pts[1]:
            t2 = {k: t1[(0, k)] * v2.num + t1[(1, k)] * v2.den for k in (0, 1)}
            for z3, v3 in pts[2]:
                out[(z1, z2, z3)] = family.apply(t2[0] * v3.num + t2[1] * v3.den)
    return out


def contains_point(family: Family, comp: Component, z: Sequence[LocalPoint]) -> bool:
    if not all(p is None or p == q for p, q in zip(comp.pins, z)):
        return False
    return family.on_surface(z)


# ---------------------------------------------------------------------------
# Bad parameter sets


@dataclass
class BadSet:
    family_kind: str
    values: list = field(default_factory=list)  # SymValue (nu, mu) or MonomialRelation (b)
    witnesses: list = field(default_factory=list)  # parallel: list of (element, point) pairs
    curve_type_elements: list = field(default_factory=list)

    def __len__(self):
        return len(self.values)

    def add(self, value, witness) -> None:
        for k, v in enumerate(self.values):
            if v == value:
                self.witnesses[k].append(witness)
                return
        self.values.append(value)
        self.witnesses.append([witness])

    def contains(self, value) -> bool:
        return any(v == value for v in self.values)

    def rendered(self) -> list:
        return [str(v) for v in self.values]


def relation_from_poly(poly: LaurentPoly):
    """Turn a b-only polynomial into a monomial relation (or always / never)."""
    if poly.is_zero():
        return "always"
    if len(poly.terms) == 1:
        return "never"
    if len(poly.terms) != 2 or poly.param_degree() > 0:
        raise ValueError(f"not a binomial in b: {poly}")
    (e1, c1), (e2, c2) = poly.terms
    rel = MonomialRelation.equating(
        LaurentPoly.monomial(c1, e1), LaurentPoly.monomial(-c2, e2)
    )
    return "never" if rel.trivial else rel


def zero_condition(family: Family, poly: LaurentPoly):
    """When does an incidence polynomial vanish?

    Returns ``"always"``, ``"never"``, a parameter value (SymValue) when the
    parameter is formal, a MonomialRelation among the ``b_j``, or the
    polynomial itself when its vanishing is not a monomial condition.
    """
    if family.generic:
        cond = param_solve_linear(poly)
        if cond.always:
            return "always"
        if cond.never:
            return "never"
        return cond.value
    try:
        return relation_from_poly(poly)
    except ValueError:
        return poly


def bad_parameter_set(family: Family, group: SubgroupSpec) -> BadSet:
    """Parameter values (or b-relations) where some element of ``group`` has a fixed point."""
    out = BadSet(family.kind)
    for g in group.nontrivial():
        locus = fixed_locus_on_T(g)
        if locus.empty:
            continue
        if locus.dimension > 0:
            out.curve_type_elements.append(g)
            continue
        for choice in locus.point_choices():
            pins = (choice[1], choice[2], choice[3])
            cond = zero_condition(family, family.evaluate(pins))
            if cond != "never":
                out.add(cond, (g, pins))
    return out


def mu_values_as_relations(values: Sequence[SymValue]) -> list:
    """Read parameter values ``mu`` as relations ``b1*b2*b3 = mu`` and collapse them."""
    rels: list = []
    for v in values:
        rel = MonomialRelation.equating(B_PRODUCT, v.canonical().num)
        if rel not in rels:
            rels.append(rel)
    return rels


# ---------------------------------------------------------------------------
# Numerical invariants


@dataclass(frozen=True)
class SurfaceInvariants:
    K2: int
    euler: int
    chi: int
    quotient_K2: int
    quotient_euler: int
    quotient_chi: int


def surface_invariants(multidegree=(2, 2, 2), group_order: int = 1) -> SurfaceInvariants:
    """Invariants of a smooth divisor of the given multidegree in an abelian threefold.

    For a divisor ``D`` in an abelian threefold ``K_D = D|_D`` so
    ``K^2 = D^3 = 6*d1*d2*d3``; ``c_2 = K^2`` as well and Noether gives chi.
    """
    d1, d2, d3 = multidegree
    if min(multidegree) < 1 or group_order < 1:
        raise ValueError("multidegree and group order must be positive")
    k2 = 6 * d1 * d2 * d3
    euler = k2
    if (k2 + euler) % 12:
        raise ValueError("non-integral holomorphic Euler characteristic")
    chi = (k2 + euler) // 12
    for x in (k2, euler, chi):
        if x % group_order:
            raise ValueError(f"invariant {x} is not divisible by the group order {group_order}")
    return SurfaceInvariants(k2, euler, chi, k2 // group_order, euler // group_order, chi // group_order)


def curve_genus_in_surface(d1: int, d2: int) -> int:
    """Genus of a smooth curve of bidegree (d1, d2) on a product of two elliptic curves.

    Adjunction with trivial canonical class: ``2g - 2 = C^2 = 2*d1*d2``.
    """
    return d1 * d2 + 1
