"""
Laurent polynomials over Q or F_{p^k} and the hypersurface tests built on them.

Coefficients are fractions.Fraction in characteristic 0 and FieldElement over
a FiniteField in characteristic p. Evaluations at torsion points produce
CyclotomicNumber (characteristic 0) or elements of a constructed extension
field (characteristic p).
"""

from __future__ import annotations

import logging
import math
import re
from collections import defaultdict
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly, ZZ
from sympy.polys import galoistools as gt

from tori.cyclotomic import CyclotomicNumber, cyclotomic_polynomial, euler_phi
from tori.errors import DomainError, InputError
from tori.ffield import DEFAULT_MAX_FIELD_BITS, FieldElement, FiniteField, make_field, minimal_field_degree
from tori.intlat import IntegerLattice, IntMatrix, integer_rank, primitive_part
from tori.torsion import TorsionCoset, TorsionPoint

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Coefficient = Any

_VARIABLE = re.compile(r"x(\d+)(?:\^(-?\d+))?")
_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")
_VECTOR = re.compile(r"\[(-?\d+(?:,-?\d+)*)?\]")


def _coerce_coefficient(value, field: Optional[FiniteField]) -> Coefficient:
    if isinstance(value, (FieldElement, CyclotomicNumber)):
        return value
    if field is not None:
        return field.element(value)
    if isinstance(value, (list, tuple)):
        raise InputError("coefficient vectors need a finite coefficient field")
    return Fraction(value)


@dataclass(frozen=True)
class LaurentPolynomial:
    """
    Finitely supported map Z^n -> coefficients.

    Terms are kept sorted by exponent (lexicographically) with no zero
    coefficients, so equal polynomials have equal term tuples.

    Attributes:
        nvars: Number of variables n
        terms: (exponent, coefficient) pairs
        field: Coefficient field in characteristic p, None for Q
    """
    nvars: int
    terms: Tuple[Tuple[Vector, Coefficient], ...]
    field: Optional[FiniteField] = dataclass_field(default=None, compare=False)

    def __post_init__(self):
        merged: Dict[Vector, Coefficient] = {}
        for exponent, c in self.terms:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.nvars:
                raise InputError(f"exponent {exponent} does not have {self.nvars} entries")
            c = _coerce_coefficient(c, self.field)
            merged[exponent] = merged[exponent] + c if exponent in merged else c
        terms = tuple(sorted((e, c) for e, c in merged.items() if not c == 0))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, nvars: int, mapping: Dict[Sequence[int], Any], field: Optional[FiniteField] = None) -> LaurentPolynomial:
        return cls(nvars, tuple((tuple(e), c) for e, c in mapping.items()), field)

    @classmethod
    def zero(cls, nvars: int, field: Optional[FiniteField] = None) -> LaurentPolynomial:
        return cls(nvars, (), field)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1, field: Optional[FiniteField] = None) -> LaurentPolynomial:
        return cls(len(exponent), ((tuple(exponent), coefficient),), field)

    @classmethod
    def constant(cls, nvars: int, coefficient, field: Optional[FiniteField] = None) -> LaurentPolynomial:
        return cls(nvars, (((0,) * nvars, coefficient),), field)

    @property
    def characteristic(self) -> int:
        return self.field.p if self.field is not None else 0

    @property
    def support(self) -> List[Vector]:
        return [e for e, _ in self.terms]

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return dict(self.terms).get(tuple(exponent), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the nonzero monomials."""
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def _lift(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise InputError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            if self.field is not None and other.field is not None and self.field.p != other.field.p:
                raise InputError("cannot combine polynomials of different characteristic")
            return other
        return LaurentPolynomial.constant(self.nvars, other, self.field)

    def _field_with(self, other: LaurentPolynomial) -> Optional[FiniteField]:
        if self.field is None:
            return other.field
        if other.field is None or other.field.l <= self.field.l:
            return self.field
        return other.field

    def __add__(self, other):
        other = self._lift(other)
        return LaurentPolynomial(self.nvars, self.terms + other.terms, self._field_with(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, tuple((e, -c) for e, c in self.terms), self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        terms = tuple(
            (tuple(a + b for a, b in zip(e, f)), c * d)
            for e, c in self.terms
            for f, d in other.terms
        )
        return LaurentPolynomial(self.nvars, terms, self._field_with(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are only defined for monomials")
        result = LaurentPolynomial.constant(self.nvars, 1, self.field)
        for _ in range(k):
            result = result * self
        return result

    def apply_exponent_map(self, M: IntMatrix) -> LaurentPolynomial:
        """
        Substitute monomials X^i -> Y^(M i) for an m x n integer matrix M.

        For unimodular M this is the monoidal change of coordinates.
        """
        if M.ncols != self.nvars:
            raise InputError(f"a {M.nrows}x{M.ncols} exponent map cannot act on {self.nvars} variables")
        return LaurentPolynomial(M.nrows, tuple((M.apply(e), c) for e, c in self.terms), self.field)

    def evaluate(self, point: Sequence) -> Coefficient:
        """Evaluate at a point with nonzero coordinates in the coefficient domain."""
        if len(point) != self.nvars:
            raise InputError(f"point of dimension {len(point)} for a polynomial in {self.nvars} variables")
        values = [v if isinstance(v, (FieldElement, CyclotomicNumber)) else _coerce_coefficient(v, self.field) for v in point]
        total = 0
        for exponent, c in self.terms:
            term = c
            for v, e in zip(values, exponent):
                if e:
                    term = (v ** e) * term
            total = term + total
        return total

    def __str__(self) -> str:
        return format_polynomial(self)


def _split_terms(text: str) -> List[str]:
    """Split on top-level + and - (not after ^ and not inside brackets)."""
    terms, current, depth = [], "", 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and text[i - 1] not in "^*":
            terms.append(current)
            current = "-" if ch == "-" else ""
            continue
        current += ch
    terms.append(current)
    return [t for t in terms if t]


def parse_polynomial(text: str, nvars: Optional[int] = None, field: Optional[FiniteField] = None) -> LaurentPolynomial:
    """
    Parse the text format "c*x1^a1*x2^a2 + ... ".

    Coefficients are integers, "num/den" fractions or, over F_{p^k}, the
    coefficient vector "[c0,c1,...]". A missing coefficient means 1 and a
    leading "-" negates the term.

    Args:
        text: Polynomial text
        nvars: Number of variables; defaults to the largest index used
        field: Coefficient field in characteristic p, None for Q

    Raises:
        InputError: On malformed input
    """
    compact = "".join(text.split())
    if not compact:
        raise InputError("empty polynomial text")
    parsed: List[Tuple[Dict[int, int], Coefficient]] = []
    largest = 0
    for term in _split_terms(compact):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        coefficient: Coefficient = 1
        powers: Dict[int, int] = defaultdict(int)
        for factor in term.split("*"):
            variable = _VARIABLE.fullmatch(factor)
            if variable:
                index = int(variable.group(1))
                if index < 1:
                    raise InputError(f"variables are numbered from x1, got {factor!r}")
                powers[index] += int(variable.group(2) or 1)
                largest = max(largest, index)
            elif _RATIONAL.fullmatch(factor):
                coefficient = coefficient * Fraction(factor)
            elif _VECTOR.fullmatch(factor):
                if field is None:
                    raise InputError(f"coefficient vector {factor!r} needs a coefficient field (--k)")
                digits = [int(c) for c in factor[1:-1].split(",")] if factor != "[]" else []
                coefficient = field.element(digits) * coefficient
            else:
                raise InputError(f"cannot parse factor {factor!r} in {text!r}")
        if sign < 0:
            coefficient = -coefficient
        parsed.append((powers, coefficient))
    n = nvars if nvars is not None else max(largest, 1)
    if largest > n:
        raise InputError(f"variable x{largest} used in a polynomial in {n} variables")
    terms = tuple((tuple(powers.get(i + 1, 0) for i in range(n)), c) for powers, c in parsed)
    return LaurentPolynomial(n, terms, field)


def _coefficient_text(c: Coefficient) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return c.to_text()


def format_polynomial(P: LaurentPolynomial) -> str:
    """Print P in the canonical text format (terms in lexicographic exponent order)."""
    if P.is_zero():
        return "0"
    out = []
    for exponent, c in P.terms:
        factors = [_coefficient_text(c)]
        for i, e in enumerate(exponent):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e:
                factors.append(f"x{i + 1}^{e}")
        out.append("*".join(factors))
    return " + ".join(out)


def laurent_degree(P: LaurentPolynomial) -> int:
    """
    Return Ldeg(P), the degree of the polynomial Q coprime to X_1...X_n with P = X^v Q.

    Raises:
        DomainError: If P is zero
    """
    if P.is_zero():
        raise DomainError("the zero polynomial has no Laurent degree")
    low = [min(e[i] for e in P.support) for i in range(P.nvars)]
    return max(sum(a - b for a, b in zip(e, low)) for e in P.support)


def _torsion_field(P: LaurentPolynomial, point: TorsionPoint, max_field_bits: Optional[int]) -> FiniteField:
    """Smallest F_{p^l} holding both the coefficients of P and the point."""
    p = point.characteristic
    if P.field is not None and P.field.p != p:
        raise InputError(f"point in characteristic {p} for a polynomial over {P.field.label}")
    k = P.field.l if P.field is not None else 1
    l = math.lcm(minimal_field_degree(point.order, p), k)
    return make_field(p, l, max_field_bits)


def _torsion_values(P: LaurentPolynomial, point: TorsionPoint, max_field_bits: Optional[int]):
    """Return (monomial value function, coefficient map) for evaluating P at a torsion point."""
    if point.ambient_dim != P.nvars:
        raise InputError(f"point of dimension {point.ambient_dim} for a polynomial in {P.nvars} variables")
    if point.characteristic == 0:
        if P.field is not None:
            raise InputError(f"characteristic 0 point for a polynomial over {P.field.label}")
        return (lambda exponent: CyclotomicNumber.root_of_unity(point.character(exponent))), (lambda c: c), None
    F = _torsion_field(P, point, max_field_bits)
    coerce = (lambda c: F.embed(c)) if P.field is not None else (lambda c: F.element(c))
    return (lambda exponent: F.root_of_unity(point.character(exponent))), coerce, F


def evaluate_at_torsion_point(
    P: LaurentPolynomial,
    point: TorsionPoint,
    max_field_bits: Optional[int] = DEFAULT_MAX_FIELD_BITS,
) -> Coefficient:
    """
    Evaluate P exactly at a torsion point.

    In characteristic 0 the result is a CyclotomicNumber; in characteristic p
    an element of F_{p^l} with l = lcm(e(N), k), e(N) the order of p mod N.
    """
    monomial, coerce, _ = _torsion_values(P, point, max_field_bits)
    total = 0
    for exponent, c in P.terms:
        total = monomial(exponent) * coerce(c) + total
    return total


def substitute_monomial_curve(
    P: LaurentPolynomial,
    y: Union[TorsionPoint, Sequence],
    u: Sequence[int],
    max_field_bits: Optional[int] = DEFAULT_MAX_FIELD_BITS,
) -> LaurentPolynomial:
    """
    Return the univariate Q(Y) = P(y_1 Y^u_1, ..., y_n Y^u_n).

    Args:
        P: Laurent polynomial in n variables
        y: Torsion point, or a point given by coefficient-domain values
        u: Integer direction

    Raises:
        InputError: If y, u and P do not share a dimension and domain
    """
    if len(u) != P.nvars:
        raise InputError(f"direction of length {len(u)} for a polynomial in {P.nvars} variables")
    field = P.field
    if isinstance(y, TorsionPoint):
        monomial, coerce, F = _torsion_values(P, y, max_field_bits)
        field = F or field

        def scale(exponent, c):
            return monomial(exponent) * coerce(c)
    else:
        if len(y) != P.nvars:
            raise InputError(f"point of dimension {len(y)} for a polynomial in {P.nvars} variables")
        values = [v if isinstance(v, (FieldElement, CyclotomicNumber)) else _coerce_coefficient(v, P.field) for v in y]

        def scale(exponent, c):
            for v, e in zip(values, exponent):
                if e:
                    c = (v ** e) * c
            return c

    terms = tuple(((sum(a * b for a, b in zip(u, e)),), scale(e, c)) for e, c in P.terms)
    return LaurentPolynomial(1, terms, field)


def candidate_torus_directions(P: LaurentPolynomial) -> List[Vector]:
    """
    Return the primitive directions of support differences, sign-normalised.

    Every u with X^u - ζ dividing P is among them.
    """
    support = P.support
    directions = set()
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            v = primitive_part(tuple(x - y for x, y in zip(support[a], support[b])))
            if next(x for x in v if x) < 0:
                v = tuple(-x for x in v)
            directions.add(v)
    return sorted(directions)


def _direction_frame(u: Vector) -> Tuple[IntMatrix, IntMatrix]:
    """Unimodular M with M u = e_1 for a primitive u, and its inverse."""
    lattice = IntegerLattice.from_generators(len(u), [u])
    M, M_inv = lattice.frame_inv, lattice.frame
    if M.apply(u)[0] < 0:
        M = IntMatrix.from_rows([[-a for a in M.row(0)]] + M.rows()[1:], M.ncols)
        M_inv = IntMatrix.from_rows([[-row[0]] + row[1:] for row in M_inv.rows()], M_inv.ncols)
    return M, M_inv


def _slices(P: LaurentPolynomial, M: IntMatrix) -> Dict[Vector, Tuple[int, List[Coefficient]]]:
    """
    Group the terms of P(Y^M) by the exponents of Y_2..Y_n.

    Each slice is (shift, dense coefficients in Y_1 from Y_1^shift upward).
    """
    grouped: Dict[Vector, Dict[int, Coefficient]] = defaultdict(dict)
    for exponent, c in P.apply_exponent_map(M).terms:
        grouped[exponent[1:]][exponent[0]] = c
    slices = {}
    for rest, column in grouped.items():
        low, high = min(column), max(column)
        slices[rest] = (low, [column.get(k, 0) for k in range(low, high + 1)])
    return slices


def divide_by_binomial(P: LaurentPolynomial, u: Sequence[int], c) -> Optional[LaurentPolynomial]:
    """
    Return Q with P = (X^u - c) Q, or None when X^u - c does not divide P.

    The primitive part of u is sent to e_1 by a unimodular change of
    coordinates; each slice in the remaining variables is then divided by
    Y_1^g - c with g the gcd of u.

    Raises:
        DomainError: If u is zero or c is zero
    """
    u = tuple(int(a) for a in u)
    if len(u) != P.nvars:
        raise InputError(f"direction of length {len(u)} for a polynomial in {P.nvars} variables")
    if not any(u):
        raise DomainError("the binomial direction must be nonzero")
    c = _coerce_coefficient(c, P.field)
    if c == 0:
        raise DomainError("the binomial constant must be nonzero")
    g = reduce(math.gcd, u, 0)
    M, M_inv = _direction_frame(tuple(a // g for a in u))
    quotient_terms = []
    for rest, (shift, a) in _slices(P, M).items():
        a = list(a)
        q: List[Coefficient] = [0] * max(len(a) - g, 0)
        for k in range(len(a) - 1, g - 1, -1):
            top = a[k]
            if top == 0:
                continue
            q[k - g] = top
            a[k - g] = c * top + a[k - g]
            a[k] = 0
        if any(not x == 0 for x in a[:g]):
            return None
        quotient_terms.extend(((k + shift,) + rest, x) for k, x in enumerate(q) if not x == 0)
    field = c.field if isinstance(c, FieldElement) else P.field
    return LaurentPolynomial(P.nvars, tuple(quotient_terms), field).apply_exponent_map(M_inv)


@dataclass(frozen=True)
class AdmissibilityResult:
    """
    Outcome of the admissibility test for a hypersurface.

    Attributes:
        admissible: True when no X^u - ζ divides P
        direction: Primitive u of a binomial divisor, if one exists
        root: Description of ζ for that divisor
        directions_checked: Number of candidate directions examined
    """
    admissible: bool
    direction: Optional[Vector] = None
    root: Optional[Dict[str, Any]] = None
    directions_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "witness": None if self.admissible else {"u": list(self.direction), "zeta": self.root},
            "directions_checked": self.directions_checked,
        }


def _rational_root_of_unity(slices: List[List[Coefficient]]) -> Optional[Dict[str, Any]]:
    """Find the least m with Φ_m dividing the gcd of the slices over Q."""
    Y = sympy.Symbol("Y")
    polys = []
    for coefficients in slices:
        if not all(isinstance(c, Fraction) for c in coefficients if not c == 0):
            raise InputError("admissibility over Q needs rational coefficients")
        polys.append(Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(coefficients)], Y, domain=QQ))
    common = reduce(lambda f, h: f.gcd(h), polys)
    degree = common.degree()
    if degree < 1:
        return None
    for m in range(1, 2 * degree * degree + 2):
        if euler_phi(m) > degree:
            continue
        phi = Poly(list(reversed(cyclotomic_polynomial(m))), Y, domain=QQ)
        if common.rem(phi).is_zero:
            return {"order": m, "exponent": f"1/{m}"}
    return None


def _poly_trim(a: List[Coefficient]) -> List[Coefficient]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_rem(a: List[Coefficient], b: List[Coefficient]) -> List[Coefficient]:
    a = list(a)
    lead = b[-1].inverse()
    for k in range(len(a) - 1, len(b) - 2, -1):
        factor = a[k] * lead
        if factor == 0:
            continue
        for i, bi in enumerate(b):
            a[k - len(b) + 1 + i] = a[k - len(b) + 1 + i] - factor * bi
    return _poly_trim(a[:len(b) - 1])


def _field_gcd(polys: List[List[Coefficient]]) -> List[Coefficient]:
    common: List[Coefficient] = []
    for b in polys:
        x, y = common, _poly_trim(list(b))
        while y:
            x, y = y, _poly_rem(x, y)
        common = x
    return common


def _prime_field_gcd(polys: List[List[Coefficient]], p: int) -> List[int]:
    """Monic gcd over F_p via galoistools; coefficients constant term first."""
    dense = [gt.gf_strip([int(c.code) for c in reversed(s)]) for s in polys]
    common = reduce(lambda f, h: gt.gf_gcd(f, h, p, ZZ), dense, [])
    return [int(c) for c in reversed(common)]


def _finite_field_root(slices: List[List[Coefficient]], field: FiniteField) -> Optional[Dict[str, Any]]:
    """Every nonzero root in the algebraic closure is a root of unity, so any gcd of degree >= 1 qualifies."""
    polys = [[field.element(c) if not isinstance(c, FieldElement) else c for c in s] for s in slices]
    if field.l == 1:
        monic = [field.from_code(c) for c in _prime_field_gcd(polys, field.p)]
    else:
        common = _field_gcd(polys)
        monic = [c / common[-1] for c in common] if common else []
    degree = len(monic) - 1
    if degree < 1:
        return None
    return {"gcd_degree": degree, "gcd": [c.to_text() for c in monic]}



def is_admissible_hypersurface(P: LaurentPolynomial) -> AdmissibilityResult:
    """
    Decide whether the hypersurface Z(P) contains no torsion coset of dimension n - 1.

    That fails exactly when X^u - ζ divides P for a primitive u and a root of
    unity ζ. For each candidate direction the coordinates are changed so that
    u becomes e_1; ζ is then a common root of all slices in Y_1.

    Raises:
        DomainError: If P is zero or a unit
    """
    if P.is_zero() or P.is_unit():
        raise DomainError("admissibility is defined for nonzero nonunit polynomials")
    if P.nvars == 1:
        # a finite zero set is admissible
        return AdmissibilityResult(True)
    directions = candidate_torus_directions(P)
    for checked, u in enumerate(directions, start=1):
        M, _ = _direction_frame(u)
        slices = [coefficients for _, coefficients in _slices(P, M).values()]
        if P.field is None:
            root = _rational_root_of_unity(slices)
        else:
            root = _finite_field_root(slices, P.field)
        if root is not None:
            logger.debug(f"binomial divisor in direction {u}: {root}")
            return AdmissibilityResult(False, u, root, checked)
    return AdmissibilityResult(True, directions_checked=len(directions))


@dataclass(frozen=True)
class StabilizerReport:
    """
    Lattice spanned by support differences and the stabilizer dimension it gives.

    Attributes:
        lattice: Λ = <i - j : i, j in Supp(P)>
        dimension: n - rank(Λ)
        caveat: When the bound is exact
    """
    lattice: IntegerLattice
    dimension: int
    caveat: str = dataclass_field(
        default="dim Stab(Z(P)) >= n - rank; equality holds when P generates the ideal of Z(P)"
    )

    def to_dict(self) -> dict:
        return {"lattice": self.lattice.basis.to_list(), "rank": self.lattice.rank, "dimension": self.dimension, "caveat": self.caveat}


def stabilizer_lattice(P: LaurentPolynomial) -> StabilizerReport:
    """Return the support-difference lattice of P and n - rank."""
    if P.is_zero():
        raise DomainError("the zero polynomial has no stabilizer lattice")
    base = P.support[0]
    differences = [tuple(a - b for a, b in zip(e, base)) for e in P.support[1:]]
    differences = [v for v in differences if any(v)]
    lattice = IntegerLattice.from_generators(P.nvars, differences) if differences else IntegerLattice.zero(P.nvars)
    return StabilizerReport(lattice, P.nvars - lattice.rank)


def coset_in_variety(
    coset: TorsionCoset,
    P: LaurentPolynomial,
    max_field_bits: Optional[int] = DEFAULT_MAX_FIELD_BITS,
) -> bool:
    """
    Test whether the torsion coset ζ·H_Λ lies in Z(P).

    Monomials X^i and X^j restrict to the same character of H_Λ exactly when
    i - j lies in Λ. By independence of characters P vanishes on the coset
    iff every class sum of p_i ζ^i vanishes.

    Raises:
        ResourceLimitError: If the field needed for ζ exceeds the cap
    """
    if coset.ambient_dim != P.nvars:
        raise InputError(f"coset in G_m^{coset.ambient_dim} for a polynomial in {P.nvars} variables")
    monomial, coerce, _ = _torsion_values(P, coset.rep, max_field_bits)
    lattice = coset.group.lattice
    sums: Dict[Vector, Coefficient] = {}
    for exponent, c in P.terms:
        key = lattice.coset_key(exponent)
        sums[key] = monomial(exponent) * coerce(c) + sums.get(key, 0)
    return all(value == 0 for value in sums.values())


def relation_fiber_bound(P: LaurentPolynomial, relations: Sequence[Sequence[int]]) -> int:
    """
    Return 2 (n-1)! Ldeg(P) prod |a_i| for n - 1 independent relation vectors a_i.

    This bounds the number of points of Z(P) in a fibre cut out by the relations.

    Raises:
        DomainError: If the relations are not n - 1 independent vectors
    """
    n = P.nvars
    if len(relations) != n - 1 or (relations and integer_rank(relations) != n - 1):
        raise DomainError(f"need {n - 1} independent relation vectors, got {len(relations)}")
    return 2 * math.factorial(n - 1) * laurent_degree(P) * math.prod(max(abs(a) for a in v) for v in relations)
