"""Exact coefficient arithmetic over Q(i)[b1^±1, b2^±1, b3^±1][p1, p2].

``b1, b2, b3`` are the values of the Legendre functions at the quarter
periods ``tau_j/4`` and are treated as algebraically independent.  The
branch value ``a_j`` is never a symbol of its own: it is always ``b_j**2``.
``p1, p2`` are the homogeneous coordinates of the family parameter
(``nu = (p1:p2)``, or ``mu = p1/p2``); they only ever occur with
non-negative exponents.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

VARIABLES = ("b1", "b2", "b3", "p1", "p2")
NVARS = len(VARIABLES)
B_VARS = VARIABLES[:3]
PARAM_VARS = VARIABLES[3:]

Exps = tuple  # tuple[int, int, int, int, int]
ZERO_EXPS: Exps = (0,) * NVARS

RationalLike = Union[int, Fraction]


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.coerce(other)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        im = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re}{sign}{im})"


I = GaussianRational(0, 1)
ONE_Q = GaussianRational(1)


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse Laurent polynomial with Gaussian-rational coefficients.

    Stored canonically: exponent tuples sorted, no zero coefficients.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exps, GaussianRational] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != NVARS:
                raise ValueError(f"exponent tuple must have length {NVARS}")
            c = GaussianRational.coerce(c)
            acc[e] = acc.get(e, GaussianRational(0)) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({ZERO_EXPS: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        e = [0] * NVARS
        e[VARIABLES.index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, coeff, exps: Exps) -> "LaurentPoly":
        return cls({tuple(exps): coeff})

    # inspection ----------------------------------------------------------
    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self._terms) == 1 and self._terms[0][0] == ZERO_EXPS)

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GaussianRational(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms[0][1]

    def param_degree(self) -> int:
        """Largest total degree in ``p1, p2`` over all terms (-1 for zero)."""
        return max((e[3] + e[4] for e, _ in self._terms), default=-1)

    def param_parts(self) -> dict:
        """Split into ``{(deg_p1, deg_p2): coefficient}`` with b-only coefficients."""
        parts: dict = {}
        for e, c in self._terms:
            key = (e[3], e[4])
            parts.setdefault(key, []).append((e[:3] + (0, 0), c))
        return {k: LaurentPoly(v) for k, v in parts.items()}

    def variables(self) -> set:
        return {VARIABLES[i] for e, _ in self._terms for i in range(NVARS) if e[i]}

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    def __add__(self, other):
        o = LaurentPoly.coerce(other)
        return LaurentPoly(list(self._terms) + list(o._terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([(e, -c) for e, c in self._terms])

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        o = LaurentPoly.coerce(other)
        out = []
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                out.append((_add_exps(e1, e2), c1 * c2))
        return LaurentPoly(out)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; other elements are not units."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        (e, c), = self._terms
        if e[3] or e[4]:
            raise ZeroDivisionError("parameter symbols are not invertible")
        return LaurentPoly({tuple(-x for x in e): c.inverse()})

    def inverse_any(self) -> "LaurentPoly":
        """Inverse of a monomial, allowing negative parameter exponents (internal use)."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a monomial")
        (e, c), = self._terms
        return LaurentPoly({tuple(-x for x in e): c.inverse()})

    def __truediv__(self, other):
        return self * LaurentPoly.coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return self._terms == LaurentPoly.const(other)._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # substitution and evaluation ------------------------------------------
    def subs(self, substitution: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Ring homomorphism sending each named variable to the given value.

        Variables not in ``substitution`` are left alone.
        """
        if not substitution:
            return self
        targets = [substitution.get(v) for v in VARIABLES]
        out = LaurentPoly()
        for e, c in self._terms:
            keep = [0] * NVARS
            term = LaurentPoly.const(c)
            for idx, (k, target) in enumerate(zip(e, targets)):
                if k == 0:
                    continue
                if target is None:
                    keep[idx] = k
                else:
                    term = term * (target ** k)
            out = out + term * LaurentPoly.monomial(1, tuple(keep))
        return out

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for e, c in self._terms:
            t = complex(c)
            for name, k in zip(VARIABLES, e):
                if k:
                    t *= values[name] ** k
            total += t
        return total

    # rendering -------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(VARIABLES, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def b(j: int) -> LaurentPoly:
    return LaurentPoly.var(f"b{j}")


def a(j: int) -> LaurentPoly:
    """Branch value ``a_j = b_j^2``."""
    return LaurentPoly.var(f"b{j}", 2)


B_PRODUCT = b(1) * b(2) * b(3)
P1 = LaurentPoly.var("p1")
P2 = LaurentPoly.var("p2")
ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


@dataclass(frozen=True)
class SymValue:
    """Projective value ``(num : den)``; ``(1:0)`` is infinity."""

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if self.num.is_zero() and self.den.is_zero():
            raise ValueError("(0:0) is not a point of P^1")

    @classmethod
    def of(cls, value) -> "SymValue":
        return cls(LaurentPoly.coerce(value), ONE)

    @property
    def is_infinite(self) -> bool:
        return self.den.is_zero()

    @property
    def is_zero_value(self) -> bool:
        return self.num.is_zero()

    def difference(self, other: "SymValue") -> LaurentPoly:
        """Cross-multiplied difference; vanishes iff the two values agree."""
        return self.num * other.den - other.num * self.den

    def __eq__(self, other):
        if not isinstance(other, SymValue):
            return NotImplemented
        return self.difference(other).is_zero()

    def __hash__(self):
        return hash((self.num.is_zero(), self.den.is_zero()))

    def __neg__(self):
        return SymValue(-self.num, self.den)

    def scaled_reciprocal(self, scale: LaurentPoly) -> "SymValue":
        """``scale / self``."""
        return SymValue(scale * self.den, self.num)

    def normalized(self) -> "SymValue":
        if self.den.is_zero():
            return SymValue(ONE, ZERO)
        if self.den.is_monomial() and not (self.den.param_degree() > 0):
            return SymValue(self.num / self.den, ONE)
        if self.num.is_monomial() and not (self.num.param_degree() > 0):
            return SymValue(ONE, self.den / self.num)
        return self

    def canonical(self) -> "SymValue":
        """Representative with monomial content removed and a monic denominator.

        Equal values with proportional representatives get the same canonical
        form whenever the proportionality factor is a monomial or the whole
        of one side.
        """
        if self.den.is_zero():
            return INFINITY
        if self.num.is_zero():
            return ZERO_VALUE
        num, den = self.num, self.den
        # proportional up to a monomial?  then (ratio : 1) or (1 : ratio)
        (e_n, c_n), (e_d, c_d) = num.terms[0], den.terms[0]
        ratio_exps = tuple(x - y for x, y in zip(e_n, e_d))
        if min(ratio_exps[3:]) >= 0:
            ratio = LaurentPoly.monomial(c_n / c_d, ratio_exps)
            if ratio * den == num:
                return SymValue(ratio, ONE)
        inv_exps = tuple(-x for x in ratio_exps)
        if min(inv_exps[3:]) >= 0:
            ratio = LaurentPoly.monomial(c_d / c_n, inv_exps)
            if ratio * num == den:
                return SymValue(ONE, ratio)
        content = [min(e[k] for e, _ in num.terms + den.terms) for k in range(NVARS)]
        shift = LaurentPoly.monomial(den.terms[0][1].inverse(), tuple(-x for x in content))
        return SymValue(_shift(num, shift), _shift(den, shift))

    def subs(self, substitution) -> "SymValue":
        return SymValue(self.num.subs(substitution), self.den.subs(substitution))

    def affine(self) -> LaurentPoly | None:
        n = self.normalized()
        return n.num if n.den == ONE else None

    def __str__(self):
        n = self.canonical()
        if n.den.is_zero():
            return "oo"
        if n.den == ONE:
            return str(n.num)
        return f"({n.num} : {n.den})"

    __repr__ = __str__


def _shift(poly: LaurentPoly, mono: LaurentPoly) -> LaurentPoly:
    """Multiply by a monomial that may carry negative parameter exponents."""
    (em, cm), = mono.terms
    return LaurentPoly([(tuple(x + y for x, y in zip(e, em)), c * cm) for e, c in poly.terms])


INFINITY = SymValue(ONE, ZERO)
ZERO_VALUE = SymValue(ZERO, ONE)


# ---------------------------------------------------------------------------
# Parameter conditions


@dataclass(frozen=True)
class Condition:
    """Zero locus of a polynomial that is linear in the parameter.

    ``kind`` is ``"identically_zero"``, ``"never_zero"`` or ``"zero_iff"``;
    for ``zero_iff`` the parameter value is ``value = (p1 : p2)``.
    """

    kind: str
    value: SymValue | None = None

    @property
    def always(self) -> bool:
        return self.kind == "identically_zero"

    @property
    def never(self) -> bool:
        return self.kind == "never_zero"


IDENTICALLY_ZERO = Condition("identically_zero")
NEVER_ZERO = Condition("never_zero")


def param_solve_linear(poly: LaurentPoly) -> Condition:
    """Solve ``p1*A + p2*B + C = 0`` for the parameter ``(p1 : p2)``.

    The input must be homogeneous of degree one in ``(p1, p2)`` or free of
    them.  A parameter-free input is either identically zero or never zero.
    """
    deg = poly.param_degree()
    if deg <= 0:
        return IDENTICALLY_ZERO if poly.is_zero() else NEVER_ZERO
    parts = poly.param_parts()
    if deg > 1 or (0, 0) in parts:
        raise ValueError(f"not homogeneous linear in the parameter: {poly}")
    coef1 = parts.get((1, 0), ZERO)
    coef2 = parts.get((0, 1), ZERO)
    # p1*coef1 + p2*coef2 = 0  <=>  (p1 : p2) = (coef2 : -coef1)
    return Condition("zero_iff", SymValue(coef2, -coef1))


def join_conditions(conditions: Iterable[Condition]) -> Condition:
    """Parameter values at which every condition holds simultaneously."""
    value = None
    for cond in conditions:
        if cond.never:
            return NEVER_ZERO
        if cond.always:
            continue
        if value is None:
            value = cond.value
        elif value != cond.value:
            return NEVER_ZERO
    return IDENTICALLY_ZERO if value is None else Condition("zero_iff", value)


# ---------------------------------------------------------------------------
# Specializations


@dataclass(frozen=True)
class Specialization:
    """Substitution of variables by monomials (parameters may also go to 0)."""

    substitutions: tuple  # tuple[tuple[str, LaurentPoly], ...]
    label: str = ""

    def __post_init__(self):
        for name, target in self.substitutions:
            if name not in VARIABLES:
                raise ValueError(f"unknown variable {name!r}")
            if name in B_VARS:
                if not target.is_monomial() or target.param_degree() > 0:
                    raise ValueError(f"{name} must map to an invertible monomial, got {target}")
            elif not (target.is_zero() or target.is_monomial()):
                raise ValueError(f"{name} must map to a monomial or 0, got {target}")

    @classmethod
    def from_dict(cls, mapping: Mapping[str, object], label: str = "") -> "Specialization":
        return cls(tuple(sorted((k, LaurentPoly.coerce(v)) for k, v in mapping.items())), label)

    @property
    def mapping(self) -> dict:
        return dict(self.substitutions)

    def apply(self, x):
        if isinstance(x, SymValue):
            return x.subs(self.mapping)
        return LaurentPoly.coerce(x).subs(self.mapping)

    def variables(self) -> set:
        return {k for k, _ in self.substitutions}

    def __str__(self):
        if self.label:
            return self.label
        return ", ".join(f"{k}={v}" for k, v in self.substitutions)


def parameter_specialization(value: SymValue, label: str = "") -> Specialization:
    """Realize the parameter value ``(p1 : p2) = value`` by monomials."""
    n = value.normalized()
    if n.den.is_zero():
        return Specialization.from_dict({"p1": 1, "p2": 0}, label)
    if n.num.is_zero():
        return Specialization.from_dict({"p1": 0, "p2": 1}, label)
    if n.den == ONE and n.num.is_monomial():
        return Specialization.from_dict({"p1": n.num, "p2": 1}, label)
    if n.num == ONE and n.den.is_monomial():
        return Specialization.from_dict({"p1": 1, "p2": n.den}, label)
    raise ValueError(f"parameter value {value} is not a monomial ratio")


# ---------------------------------------------------------------------------
# Monomial relations among b1, b2, b3


@dataclass(frozen=True)
class MonomialRelation:
    """The relation ``b^exponents = coeff`` with a canonical sign of exponents."""

    exponents: tuple  # tuple[int, int, int]
    coeff: GaussianRational

    @classmethod
    def canonical(cls, exponents, coeff) -> "MonomialRelation":
        exponents = tuple(int(x) for x in exponents)
        coeff = GaussianRational.coerce(coeff)
        first = next((x for x in exponents if x), 0)
        if first < 0:
            exponents = tuple(-x for x in exponents)
            coeff = coeff.inverse()
        return cls(exponents, coeff)

    @classmethod
    def equating(cls, lhs: LaurentPoly, rhs: LaurentPoly) -> "MonomialRelation":
        """Relation ``lhs = rhs`` between two b-monomials."""
        if not (lhs.is_monomial() and rhs.is_monomial()):
            raise ValueError("relations are only defined between monomials")
        (el, cl), = lhs.terms
        (er, cr), = rhs.terms
        exps = tuple(x - y for x, y in zip(el[:3], er[:3]))
        return cls.canonical(exps, cr / cl)

    @property
    def trivial(self) -> bool:
        return not any(self.exponents)

    def specialization(self) -> Specialization:
        """Solve for the last variable with exponent +-1."""
        for k in reversed(range(3)):
            if abs(self.exponents[k]) == 1:
                break
        else:
            raise ValueError(f"cannot solve {self} for a single b_j")
        e = self.exponents
        # b_k^{e_k} = coeff * prod_{j != k} b_j^{-e_j}
        rest = [0] * NVARS
        for j in range(3):
            if j != k:
                rest[j] = -e[j]
        target = LaurentPoly.monomial(self.coeff, tuple(rest))
        if e[k] == -1:
            target = target.inverse()
        return Specialization.from_dict({f"b{k + 1}": target}, str(self))

    def __str__(self):
        lhs = "*".join(
            f"b{j + 1}" if x == 1 else f"b{j + 1}^{x}" for j, x in enumerate(self.exponents) if x
        )
        return f"{lhs or '1'}={self.coeff}"


# ---------------------------------------------------------------------------
# Parsing the specialization mini-language

def parse_monomial(text: str) -> LaurentPoly:
    """Parse ``-b1^2*b2^-1``, ``i*b3``, ``1/2`` and friends into a monomial."""
    text = text.strip()
    if not text:
        raise ValueError("empty monomial")
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    out = LaurentPoly.const(sign)
    for factor in text.split("*"):
        m = re.fullmatch(r"\s*(b[123]|i|\d+(?:/\d+)?)(?:\^\(?(-?\d+)\)?)?\s*", factor)
        if not m:
            raise ValueError(f"cannot parse factor {factor!r}")
        base, power = m.group(1), int(m.group(2) or 1)
        if base == "i":
            out = out * LaurentPoly.const(I ** power)
        elif base.startswith("b"):
            out = out * LaurentPoly.var(base, power)
        else:
            out = out * LaurentPoly.const(Fraction(base) ** power)
    return out


@lru_cache(maxsize=None)
def _legendre_table(j: int, convention: int) -> dict:
    return build_legendre_table(j, convention)


def build_legendre_table(j: int, convention: int = 1) -> dict:
    """Values of the Legendre function of factor ``j`` at the 16 quarter-periods.

    Keys are ``(P, Q)`` meaning the point ``P/4 + Q*tau/4``.  The table is
    the closure of four seed values under the three functional identities;
    every value reached along two different routes is checked for equality.
    """
    if convention not in (1, -1):
        raise ValueError("convention must be +1 or -1")
    seeds = {
        (0, 0): SymValue.of(1),
        (1, 0): ZERO_VALUE,
        (0, 1): SymValue.of(b(j)),
        (1, 1): SymValue.of(LaurentPoly.const(I * convention) * b(j)),
    }
    moves = (
        (lambda p, q: ((p + 2) % 4, q), lambda v: -v),  # z + 1/2
        (lambda p, q: ((-p) % 4, (-q) % 4), lambda v: v),  # -z
        (lambda p, q: (p, (q + 2) % 4), lambda v: v.scaled_reciprocal(a(j))),  # z + tau/2
    )
    table = dict(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for key in frontier:
            for move_pt, move_val in moves:
                tgt = move_pt(*key)
                val = move_val(table[key])
                if tgt in table:
                    if table[tgt] != val:
                        raise ArithmeticError(f"inconsistent Legendre value at {tgt}")
                else:
                    table[tgt] = val.normalized()
                    nxt.append(tgt)
        frontier = nxt
    return table


class UnsupportedPointError(ValueError):
    pass


def legendre_value(j: int, z, convention: int = 1) -> SymValue:
    """Symbolic value of the Legendre function of factor ``j`` at torsion point ``z``.

    ``z`` is anything with rational ``p`` and ``q`` attributes; only points
    of order dividing 4 are supported.
    """
    p4, q4 = Fraction(z.p) * 4, Fraction(z.q) * 4
    if p4.denominator != 1 or q4.denominator != 1:
        raise UnsupportedPointError(f"{z} is not a quarter-torsion point")
    return _legendre_table(j, convention)[(int(p4) % 4, int(q4) % 4)]


def branch_values(j: int) -> tuple:
    """Branch values ``1, -1, a_j, -a_j`` of the Legendre double cover."""
    return (SymValue.of(1), SymValue.of(-1), SymValue.of(a(j)), SymValue.of(-a(j)))


def p1_image(j: int, eta: int, eps: int, value: SymValue) -> SymValue:
    """How ``(eta, eps)`` moves a Legendre value: ``L -> (-1)^eps * (a_j/L)^eta``."""
    if eta:
        value = value.scaled_reciprocal(a(j))
    if eps:
        value = -value
    return value


def parse_specialization(text: str) -> Specialization:
    """Parse the specialization mini-language.

    Accepted clauses, separated by ``,`` or ``;``:

    * ``nu=(b1:1)`` -- projective parameter value;
    * ``mu=b1^2`` -- affine parameter value;
    * ``b3=b1^-1*b2^-1`` -- direct substitution of one ``b_j``;
    * ``b1*b2*b3=1``, ``b2*b3=-b1`` -- a monomial relation, solved for one ``b_j``.
    """
    mapping: dict = {}
    labels = []
    for clause in re.split(r"[;,](?![^(]*\))", text):
        clause = clause.strip()
        if not clause:
            continue
        if "=" not in clause:
            raise ValueError(f"clause {clause!r} has no '='")
        lhs, rhs = (s.strip() for s in clause.split("=", 1))
        if lhs in ("nu", "mu"):
            m = re.fullmatch(r"\(\s*(.+?)\s*:\s*(.+?)\s*\)", rhs)
            if m:
                num, den = parse_monomial(m.group(1)), parse_monomial(m.group(2))
            else:
                num, den = parse_monomial(rhs), ONE
            new = {"p1": num, "p2": den}
        elif re.fullmatch(r"b[123]", lhs) and "b" + lhs[1] not in rhs:
            new = {lhs: parse_monomial(rhs)}
        else:
            rel = MonomialRelation.equating(parse_monomial(lhs), parse_monomial(rhs))
            if rel.trivial:
                raise ValueError(f"relation {clause!r} does not involve any b_j")
            new = rel.specialization().mapping
        for k in new:
            if k in mapping:
                raise ValueError(f"variable {k} specialized twice")
        mapping.update(new)
        labels.append(clause.replace(" ", ""))
    if not mapping:
        raise ValueError("empty specialization")
    for k, v in mapping.items():
        if k in v.variables():
            raise ValueError(f"substitution for {k} refers to {k} itself")
    bound = set(mapping)
    for k, v in mapping.items():
        if k in B_VARS and v.is_constant():
            # a numeric modulus is outside the symbolic setting, and b_j^4 = 1
            # would make the branch points collide
            raise ValueError(f"{k}={v} fixes the modulus of curve {k[1]} to a number")
        if v.variables() & bound:
            raise ValueError("substitution targets must not contain substituted variables")
    return Specialization.from_dict(mapping, ", ".join(labels))


# ---------------------------------------------------------------------------
# Binary forms in the parameter (p1, p2)


def binary_form(poly: LaurentPoly) -> list:
    """Coefficients ``[c0, ..., cm]`` with ``poly = sum c_k p1^(m-k) p2^k``.

    The input must be homogeneous in ``(p1, p2)``.
    """
    parts = poly.param_parts()
    if not parts:
        return [ZERO]
    degrees = {i + j for i, j in parts}
    if len(degrees) != 1:
        raise ValueError(f"not homogeneous in the parameter: {poly}")
    (m,) = degrees
    return [parts.get((m - k, k), ZERO) for k in range(m + 1)]


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(c: GaussianRational) -> GaussianRational | None:
    """Exact square root in Q(i), or ``None``."""
    if c.is_zero():
        return GaussianRational(0)
    modulus = _rational_sqrt(c.norm())
    if modulus is None:
        return None
    x = _rational_sqrt((c.re + modulus) / 2)
    if x is not None and x != 0:
        root = GaussianRational(x, c.im / (2 * x))
    else:
        y = _rational_sqrt((modulus - c.re) / 2)
        if y is None or y == 0:
            return None
        root = GaussianRational(c.im / (2 * y), y)
    return root if root * root == c else None


def laurent_sqrt(poly: LaurentPoly) -> LaurentPoly | None:
    """Exact square root of a Laurent polynomial, or ``None`` if it is not a square."""
    if poly.is_zero():
        return ZERO
    terms = sorted(poly.terms, reverse=True)
    e0, c0 = terms[0]
    if any(x % 2 for x in e0):
        return None
    lead_c = gaussian_sqrt(c0)
    if lead_c is None:
        return None
    lead = LaurentPoly.monomial(lead_c, tuple(x // 2 for x in e0))
    root = lead
    twice_lead = lead * 2
    for _ in range(4 * len(terms) + 4):
        rest = poly - root * root
        if rest.is_zero():
            return root
        e, c = max(rest.terms)
        if e > e0:
            return None
        root = root + _shift(LaurentPoly.monomial(c, e), twice_lead.inverse_any())
    return root if root * root == poly else None


def divide_linear(form: list, root: SymValue) -> list | None:
    """Divide a binary form by the linear factor vanishing at ``root = (n : d)``.

    ``n`` and ``d`` must be monomials or zero.  Returns the quotient form or
    ``None`` when the factor does not divide.
    """
    n, d = root.num, root.den
    # factor: d*p1 - n*p2
    if d.is_zero():
        # factor is p2: last coefficient must vanish
        return form[:-1] if form[-1].is_zero() and len(form) > 1 else None
    if not d.is_monomial():
        raise ValueError("root denominator must be a monomial")
    dinv = d.inverse_any()
    quotient = []
    carry = ZERO
    for k, c in enumerate(form[:-1]):
        q = _shift(c + n * carry, dinv) if k else _shift(c, dinv)
        quotient.append(q)
        carry = q
    if not (form[-1] + n * carry).is_zero() and len(form) > 1:
        return None
    if len(form) == 1:
        return None
    return quotient


def form_roots(form: list) -> list:
    """Roots of a binary form of degree <= 2 as projective values.

    Returns ``None`` for the identically zero form.  Double roots appear twice.
    Quadratics whose discriminant is not a square in the coefficient ring
    raise ``ValueError``.
    """
    if all(c.is_zero() for c in form):
        return None
    m = len(form) - 1
    if m == 0:
        return []
    if m == 1:
        return [SymValue(form[1], -form[0])]
    if m != 2:
        raise ValueError("only forms of degree <= 2 are solved directly")
    A, B, C = form
    if A.is_zero():
        return [INFINITY] + form_roots([B, C])
    disc = B * B - A * C * 4
    root = laurent_sqrt(disc)
    if root is None:
        raise ValueError(f"discriminant {disc} is not a square")
    # A p1^2 + B p1 p2 + C p2^2 = 0  =>  p1/p2 = (-B +- root) / (2A)
    return [SymValue(-B + root, A * 2).canonical(), SymValue(-B - root, A * 2).canonical()]
