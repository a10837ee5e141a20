"""Singular points of the hypersurfaces and freeness of the group actions.

A point of X is singular iff the equation vanishes there and, for every
factor ``j``, either ``z_j`` is 2-torsion (where ``L_j'`` vanishes) or the
equation restricted to factor ``j`` vanishes identically.  Sorting the
candidates by the set ``J`` of factors that are *not* 2-torsion gives four
exhaustive chart types:

* ``J`` empty: the 64 points of ``E[2]^3``;
* ``|J| = 1``: a whole curve of singular points, needs two linear forms to vanish;
* ``|J| = 2``: the bilinear form on the two factors in ``J`` is degenerate;
* ``|J| = 3``: the trilinear form has vanishing hyperdeterminant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .field import (
    INFINITY,
    LaurentPoly,
    SymValue,
    binary_form,
    divide_linear,
    form_roots,
    join_conditions,
    param_solve_linear,
    parameter_specialization,
)
from .hypersurface import (
    BadSet,
    Family,
    _linear_target,
    bad_parameter_set,
    fixed_locus_on_X,
    incidence_grid,
    zero_condition,
)
from .torus import (
    GroupElement,
    SubgroupSpec,
    enumerate_fixing_elements,
    fixed_locus_on_T,
    torsion_points,
    two_torsion,
)


def _two_torsion_triples():
    return itertools.product(two_torsion(1), two_torsion(2), two_torsion(3))


def hyperdeterminant(family: Family) -> LaurentPoly:
    """Cayley hyperdeterminant of the 2x2x2 coefficient tensor."""
    c = {idx: family.apply(v) for idx, v in family.tensor}

    def t(*keys):
        out = LaurentPoly.const(1)
        for k in keys:
            out = out * c[tuple(int(ch) for ch in k)]
        return out

    squares = (
        t("000", "000", "111", "111")
        + t("001", "001", "110", "110")
        + t("010", "010", "101", "101")
        + t("100", "100", "011", "011")
    )
    mixed = (
        t("000", "001", "110", "111")
        + t("000", "010", "101", "111")
        + t("000", "100", "011", "111")
        + t("001", "010", "101", "110")
        + t("001", "100", "011", "110")
        + t("010", "100", "011", "101")
    )
    quartic = t("000", "011", "101", "110") + t("001", "010", "100", "111")
    return squares - mixed * 2 + quartic * 4


def _kernels(matrix: dict):
    """Left and right kernel directions of a rank-one 2x2 matrix, as P^1 values."""
    row = next(i for i in (0, 1) if not (matrix[(i, 0)].is_zero() and matrix[(i, 1)].is_zero()))
    col = next(k for k in (0, 1) if not (matrix[(0, k)].is_zero() and matrix[(1, k)].is_zero()))
    left = _linear_target(matrix[(0, col)], matrix[(1, col)])
    right = _linear_target(matrix[(row, 0)], matrix[(row, 1)])
    return left, right


def _det(m: dict) -> LaurentPoly:
    return m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]


# ---------------------------------------------------------------------------
# Parameter-free surfaces: locate every singular point


@dataclass
class SingularPoints:
    family: Family
    points: list
    by_type: dict
    anomalies: list = field(default_factory=list)

    def all_in_two_torsion(self) -> bool:
        return all(all(p.is_two_torsion() for p in z) for z in self.points)


def singular_points(family: Family) -> SingularPoints:
    """All singular points of a surface whose parameter is not formal."""
    if family.generic:
        raise ValueError("the parameter is formal; use singular_parameters instead")
    found: list = []
    by_type = {0: [], 1: [], 2: [], 3: []}
    anomalies = []

    def record(z, kind):
        if not family.is_singular(z):
            anomalies.append(f"candidate {tuple(map(str, z))} failed the singularity test")
            return
        by_type[kind].append(z)
        if z not in found:
            found.append(z)

    for z in _two_torsion_triples():
        if family.on_surface(z):
            record(z, 0)
    for j in (1, 2, 3):
        others = [k for k in (1, 2, 3) if k != j]
        for pa, pb in itertools.product(two_torsion(others[0]), two_torsion(others[1])):
            f0, f1 = family.factor_form(
                j, {others[0]: family.value(pa), others[1]: family.value(pb)}
            )
            if f0.is_zero() and f1.is_zero():
                anomalies.append(f"singular along the curve z{others[0]}={pa}, z{others[1]}={pb}")
    for ell in (1, 2, 3):
        first, second = [k for k in (1, 2, 3) if k != ell]
        for pin in two_torsion(ell):
            m = family.restrict({ell: family.value(pin)})
            if not _det(m).is_zero():
                continue
            if all(v.is_zero() for v in m.values()):
                anomalies.append(f"X contains the surface z{ell}={pin}")
                continue
            left, right = _kernels(m)
            for p, q in itertools.product(
                family.points_with_value(first, left), family.points_with_value(second, right)
            ):
                z = [None, None, None]
                z[ell - 1], z[first - 1], z[second - 1] = pin, p, q
                record(tuple(z), 2)
    if hyperdeterminant(family).is_zero():
        anomalies.append("hyperdeterminant vanishes: singular point with no 2-torsion coordinate")
    found.sort(key=lambda z: tuple(str(p) for p in z))
    return SingularPoints(family, found, by_type, anomalies)


def sweep_torsion_singularities(family: Family, level: int = 4) -> list:
    """Brute-force check of every ``level``-torsion triple (only quarter-torsion is exact)."""
    grid = incidence_grid(family, level)
    return [z for z, f in grid.items() if f.is_zero() and family.is_singular(z)]


# ---------------------------------------------------------------------------
# Formal parameter: where can the surface be singular?


@dataclass(frozen=True)
class SingularParameter:
    value: SymValue
    chart: int  # number of factors that are not 2-torsion
    where: str


def _divide_out(form: list, roots: Sequence[SymValue]) -> tuple:
    """Strip every linear factor vanishing at one of ``roots``; returns (rest, stripped)."""
    stripped = []
    changed = True
    while changed and len(form) > 1:
        changed = False
        for r in roots:
            q = divide_linear(form, r)
            if q is not None:
                form = q
                stripped.append(r)
                changed = True
                break
    return form, stripped


def singular_parameters(family: Family) -> tuple:
    """Parameter values where some chart type produces a singular point.

    Returns ``(entries, anomalies)``; entries are SingularParameter records.
    """
    if not family.generic:
        raise ValueError("needs a formal parameter")
    entries: list = []
    anomalies: list = []

    def add(value, chart, where):
        entries.append(SingularParameter(value.canonical(), chart, where))

    for z in _two_torsion_triples():
        cond = param_solve_linear(family.evaluate(z))
        if cond.always:
            anomalies.append(f"{tuple(map(str, z))} is singular for every parameter")
        elif not cond.never:
            add(cond.value, 0, ", ".join(map(str, z)))
    for j in (1, 2, 3):
        others = [k for k in (1, 2, 3) if k != j]
        for pa, pb in itertools.product(two_torsion(others[0]), two_torsion(others[1])):
            f0, f1 = family.factor_form(
                j, {others[0]: family.value(pa), others[1]: family.value(pb)}
            )
            cond = join_conditions([param_solve_linear(f0), param_solve_linear(f1)])
            if cond.always:
                anomalies.append(f"singular curve along z{others[0]}={pa}, z{others[1]}={pb}")
            elif not cond.never:
                add(cond.value, 1, f"z{others[0]}={pa}, z{others[1]}={pb}")
    for ell in (1, 2, 3):
        for pin in two_torsion(ell):
            det = _det(family.restrict({ell: family.value(pin)}))
            roots = form_roots(binary_form(det))
            if roots is None:
                anomalies.append(f"degenerate bilinear form at z{ell}={pin} for every parameter")
                continue
            for r in roots:
                add(r, 2, f"z{ell}={pin}")
    hyper = binary_form(hyperdeterminant(family))
    rest, stripped = _divide_out(hyper, family.excluded_parameters())
    if len(rest) > 1:
        try:
            roots = form_roots(rest)
        except ValueError:
            roots = None
        if roots is None:
            anomalies.append(f"hyperdeterminant factor {rest} not resolved")
        else:
            for r in roots:
                add(r, 3, "hyperdeterminant")
    for r in stripped:
        add(r, 3, "hyperdeterminant")
    return entries, anomalies


# ---------------------------------------------------------------------------
# Reports


@dataclass
class SmoothnessReport:
    family: Family
    generic_smooth: bool
    bad_values: list  # singular parameters not excluded and not from E[2]^3
    nonfree_values: list  # parameters putting a 2-torsion triple on X
    excluded_hits: list
    nodes_per_bad_value: list  # (label, [points])
    relations: list = field(default_factory=list)  # b-family: (relation, [points])
    anomalies: list = field(default_factory=list)


def _dedupe(values) -> list:
    out: list = []
    for v in values:
        if not any(v == w for w in out):
            out.append(v)
    return out


def singular_locus(family: Family) -> SmoothnessReport:
    """Classify the singularities of a family.

    * formal parameter (nu, mu): the exceptional parameter values, sorted into
      excluded values, values where ``g0`` has fixed points on X (``E[2]^3``
      meets X; the group then does not act freely), and the rest, each of
      which is then specialized and its singular points listed;
    * b-family: the monomial relations putting points of ``E[2]^3`` on X,
      with the singular points under each relation;
    * any specialized family: its singular points.
    """
    if family.generic:
        entries, anomalies = singular_parameters(family)
        excluded = family.excluded_parameters()
        excluded_hits = _dedupe(e.value for e in entries if any(e.value == x for x in excluded))
        nonfree = _dedupe(e.value for e in entries if e.chart == 0)
        bad = _dedupe(
            e.value
            for e in entries
            if e.chart > 0 and not any(e.value == x for x in excluded)
        )
        nodes = []
        for v in bad:
            try:
                spec = parameter_specialization(v, label=f"{'nu' if family.kind == 'nu' else 'mu'}={v}")
            except ValueError:
                anomalies.append(f"bad value {v} is not a monomial ratio; nodes not listed")
                continue
            sp = singular_points(family.specialized(spec))
            anomalies.extend(sp.anomalies)
            nodes.append((str(spec), sp.points))
        return SmoothnessReport(
            family, not bad and not nonfree, bad, nonfree, excluded_hits, nodes, anomalies=anomalies
        )
    sp = singular_points(family)
    report = SmoothnessReport(
        family, not sp.points, [], [], [], [("as given", sp.points)], anomalies=list(sp.anomalies)
    )
    if family.kind == "b" and family.spec is None:
        bad = bad_parameter_set(family, SubgroupSpec("g0", frozenset({GroupElement.identity(), G0})))
        for rel in bad.values:
            spec = rel.specialization()
            pts = singular_points(family.specialized(spec))
            report.anomalies.extend(pts.anomalies)
            report.relations.append((rel, pts.points))
    return report


G0 = GroupElement.parse("100|100|100")


# ---------------------------------------------------------------------------
# Freeness


@dataclass
class ElementEvidence:
    element: GroupElement
    kind: str  # "empty-on-T", "curve-on-T", "points"
    conditions: list = field(default_factory=list)  # (point, condition) for conditional points
    fixed: list = field(default_factory=list)  # points on X for every parameter


@dataclass
class FreenessCertificate:
    group: SubgroupSpec
    family: Family
    verdict: str  # "free", "free-iff-avoids", "not-free"
    bad: BadSet
    evidence: list
    witness: tuple | None = None

    @property
    def free(self) -> bool:
        return self.verdict != "not-free"


def certify_free_action(family: Family, group: SubgroupSpec) -> FreenessCertificate:
    bad = BadSet(family.kind)
    evidence = []
    witness = None
    for g in group.nontrivial():
        locus = fixed_locus_on_T(g)
        if locus.empty:
            evidence.append(ElementEvidence(g, "empty-on-T"))
            continue
        if locus.dimension > 0:
            # a positive-dimensional fixed locus meets the ample divisor X
            evidence.append(ElementEvidence(g, "curve-on-T"))
            witness = witness or (g, None)
            continue
        ev = ElementEvidence(g, "points")
        for choice in locus.point_choices():
            z = (choice[1], choice[2], choice[3])
            cond = zero_condition(family, family.evaluate(z))
            if isinstance(cond, str) and cond == "never":
                continue
            if isinstance(cond, str) and cond == "always":
                ev.fixed.append(z)
                witness = witness or (g, z)
            else:
                ev.conditions.append((z, cond))
                bad.add(cond, (g, z))
        evidence.append(ev)
    if witness is not None:
        verdict = "not-free"
    elif len(bad):
        verdict = "free-iff-avoids"
    else:
        verdict = "free"
    return FreenessCertificate(group, family, verdict, bad, evidence, witness)


def which_elements_fix_on_X(family: Family, ambient: SubgroupSpec) -> tuple:
    """Elements with fixed points on X: ``(always, only_for_special_parameters)``."""
    always, special = [], []
    for g, _ in enumerate_fixing_elements(ambient):
        locus = fixed_locus_on_X(family, g)
        if locus.components:
            always.append(g)
        elif locus.special:
            special.append(g)
    return always, special
