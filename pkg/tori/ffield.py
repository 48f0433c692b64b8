"""
Finite field arithmetic F_{p^l} for ToriCount.

Elements are stored as integer codes: the base-p digits of a code are the
coefficients (constant term first) of a polynomial of degree < l reduced by
the field modulus. In characteristic 2 a code is a bitmask and products use
carry-less shift-and-xor with reduction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, ZZ, factorint, n_order
from sympy.abc import x as _x
from sympy.polys import galoistools as gt

from tori.errors import DomainError, InputError, ResourceLimitError

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD_BITS = 24


def _digits(code: int, p: int, length: int) -> List[int]:
    digits = []
    for _ in range(length):
        code, r = divmod(code, p)
        digits.append(r)
    return digits


def _undigits(digits: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


@dataclass(frozen=True)
class FiniteField:
    """
    The field F_{p^l} = F_p[x] / (modulus).

    Attributes:
        p: Characteristic
        l: Degree over F_p
        modulus: Coefficients of the monic irreducible modulus, constant term first
        group_order_factorization: Prime factorization of p^l - 1 as (prime, exponent) pairs
    """
    p: int
    l: int
    modulus: Tuple[int, ...]
    group_order_factorization: Tuple[Tuple[int, int], ...]
    _mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.modulus) != self.l + 1 or self.modulus[-1] != 1:
            raise InputError(f"modulus {self.modulus} is not monic of degree {self.l}")
        if math.prod(q ** e for q, e in self.group_order_factorization) != self.order - 1:
            raise InputError(f"factorization does not multiply back to {self.order - 1}")
        object.__setattr__(self, "_mask", _undigits(self.modulus, 2) if self.p == 2 else 0)

    @property
    def order(self) -> int:
        """Return q = p^l."""
        return self.p ** self.l

    @property
    def label(self) -> str:
        return f"F_{self.p}^{self.l}"

    def __hash__(self) -> int:
        return hash((self.p, self.l, self.modulus))

    # raw code arithmetic

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, self.l), _digits(b, p, self.l))], p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return _undigits([(-x) % p for x in _digits(a, p, self.l)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.p == 2:
            l, mask = self.l, self._mask
            result = 0
            while b:
                if b & 1:
                    result ^= a
                b >>= 1
                a <<= 1
                if (a >> l) & 1:
                    a ^= mask
            return result
        p, l = self.p, self.l
        x, y = _digits(a, p, l), _digits(b, p, l)
        prod = [0] * (2 * l - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        for top in range(2 * l - 2, l - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(l + 1):
                    prod[top - l + i] -= c * self.modulus[i]
        return _undigits([c % p for c in prod[:l]], p)

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inverse(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inverse(self, a: int) -> int:
        if a == 0:
            raise DomainError(f"0 has no inverse in {self.label}")
        return self.power(a, self.order - 2)

    def scalar(self, c: int) -> int:
        """Return the code of the prime-field element c mod p."""
        return c % self.p

    # elements

    def element(self, value) -> FieldElement:
        """Build an element from a code or a coefficient list (constant term first)."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InputError(f"element of {value.field.label} used in {self.label}")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.l:
                raise InputError(f"{len(value)} coefficients do not fit {self.label}")
            return FieldElement(self, _undigits([int(c) % self.p for c in value], self.p))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no value in characteristic {self.p}")
            return FieldElement(self, self.mul(self.scalar(value.numerator), self.inverse(self.scalar(value.denominator))))
        return FieldElement(self, self.scalar(int(value)))

    def from_code(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise InputError(f"code {code} out of range for {self.label}")
        return FieldElement(self, code)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self):
        """Iterate over all elements in code order."""
        return (FieldElement(self, code) for code in range(self.order))

    def mult_order_code(self, a: int) -> int:
        if a == 0:
            raise DomainError("0 has no multiplicative order")
        order = self.order - 1
        for prime, exponent in self.group_order_factorization:
            for _ in range(exponent):
                if self.power(a, order // prime) == 1:
                    order //= prime
                else:
                    break
        return order

    def primitive_element(self) -> FieldElement:
        """Return the generator of the multiplicative group with the smallest code."""
        return FieldElement(self, _primitive_code(self))

    def root_of_unity(self, q: Fraction) -> FieldElement:
        """
        Realise the exponent q in Q/Z as gamma^(q * (p^l - 1)) for the primitive element gamma.

        Raises:
            DomainError: If the denominator of q does not divide p^l - 1
        """
        q = Fraction(q) % 1
        if (self.order - 1) % q.denominator:
            raise DomainError(f"{self.label} contains no root of unity of order {q.denominator}")
        return FieldElement(self, self.power(_primitive_code(self), q.numerator * ((self.order - 1) // q.denominator)))

    def contains_subfield(self, sub: FiniteField) -> bool:
        return sub.p == self.p and self.l % sub.l == 0

    def embed(self, element: FieldElement) -> FieldElement:
        """
        Map an element of a subfield F_{p^k} (k | l) into this field.

        The generator of the subfield is sent to the smallest-code root of its
        modulus among the elements of the subfield's image.
        """
        sub = element.field
        if sub == self:
            return element
        if not self.contains_subfield(sub):
            raise InputError(f"{sub.label} is not a subfield of {self.label}")
        image = _subfield_generator_image(self, sub)
        result, power = 0, 1
        for c in _digits(element.code, sub.p, sub.l):
            if c:
                result = self.add(result, self.mul(self.scalar(c), power))
            power = self.mul(power, image)
        return FieldElement(self, result)


@lru_cache(maxsize=64)
def _primitive_code(F: FiniteField) -> int:
    if F.order == 2:
        return 1
    for code in range(2, F.order):
        if F.mult_order_code(code) == F.order - 1:
            return code
    raise DomainError(f"no primitive element found in {F.label}")


@lru_cache(maxsize=64)
def _subfield_generator_image(F: FiniteField, sub: FiniteField) -> int:
    if sub.l == 1:
        return 0
    step = (F.order - 1) // (sub.order - 1)
    gamma = _primitive_code(F)
    for j in range(1, sub.order - 1 + 1):
        candidate = F.power(gamma, j * step)
        value, power = 0, 1
        for c in sub.modulus:
            if c:
                value = F.add(value, F.mul(F.scalar(c), power))
            power = F.mul(power, candidate)
        if value == 0:
            return candidate
    raise DomainError(f"{sub.label} does not embed into {F.label}")


@dataclass(frozen=True)
class FieldElement:
    """
    Element of a finite field.

    Attributes:
        field: The field the element belongs to
        code: Integer code of the coefficient vector
    """
    field: FiniteField
    code: int

    @property
    def coefficients(self) -> List[int]:
        return _digits(self.code, self.field.p, self.field.l)

    def is_zero(self) -> bool:
        return self.code == 0

    def _coerce(self, other) -> Optional[FieldElement]:
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other
            if self.field.contains_subfield(other.field):
                return self.field.embed(other)
            raise InputError(f"cannot combine elements of {self.field.label} and {other.field.label}")
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(other.code, self.code))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, self.field.inverse(other.code)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inverse(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field == self.field and self.code == other.code
        if isinstance(other, (int, Fraction)):
            try:
                return self.code == self.field.element(other).code
            except InputError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __repr__(self) -> str:
        return f"FieldElement({self.field.label}, {self.coefficients})"

    def to_text(self) -> str:
        """Prime-field elements print as integers, others as [c0,c1,...]."""
        if self.code < self.field.p:
            return str(self.code)
        return "[" + ",".join(str(c) for c in self.coefficients) + "]"


def _is_irreducible(coefficients: Sequence[int], p: int) -> bool:
    return Poly(list(reversed(coefficients)), _x, modulus=p).is_irreducible


@lru_cache(maxsize=128)
def _make_field(p: int, l: int) -> FiniteField:
    if l == 1:
        modulus: Tuple[int, ...] = (0, 1)
    else:
        modulus = ()
        for low in product(range(p), repeat=l):
            if low[0] == 0:
                continue
            candidate = tuple(low) + (1,)
            if _is_irreducible(candidate, p):
                modulus = candidate
                break
    factorization = tuple(sorted(factorint(p ** l - 1).items()))
    F = FiniteField(p, l, modulus, factorization)
    logger.debug(f"Constructed {F.label} with modulus {modulus}")
    return F


def make_field(p: int, l: int, max_field_bits: Optional[int] = DEFAULT_MAX_FIELD_BITS) -> FiniteField:
    """
    Return the deterministic field F_{p^l}.

    The modulus is the lexicographically smallest monic irreducible of degree
    l, comparing coefficient vectors constant term first. For l = 1 the
    modulus is x.

    Raises:
        DomainError: If p is not prime or l < 1
        ResourceLimitError: If p^l exceeds 2^max_field_bits
    """
    if not sympy.isprime(p):
        raise DomainError(f"field characteristic must be prime, got {p}")
    if l < 1:
        raise DomainError(f"field degree must be >= 1, got {l}")
    if max_field_bits is not None and p ** l > 2 ** max_field_bits:
        raise ResourceLimitError(f"field F_{p}^{l} is too large", cap="max_field_bits", limit=max_field_bits)
    return _make_field(p, l)


def mult_order(x: FieldElement) -> int:
    """
    Return the multiplicative order of a nonzero field element.

    Raises:
        DomainError: If x is zero
    """
    return x.field.mult_order_code(x.code)


def point_order_charp(coords: Sequence[FieldElement]) -> int:
    """
    Return the order of a point of the torus over a finite field (lcm of coordinate orders).

    Raises:
        DomainError: If a coordinate is zero
        InputError: If coordinates lie in different fields
    """
    if not coords:
        return 1
    F = coords[0].field
    if any(c.field != F for c in coords):
        raise InputError("point coordinates lie in different fields")
    if any(c.is_zero() for c in coords):
        raise DomainError("a point with a zero coordinate is not in the torus")
    return math.lcm(*(mult_order(c) for c in coords))


def minimal_field_degree(N: int, p: int) -> int:
    """
    Return the least l with N | p^l - 1 (the order of p modulo N).

    Raises:
        DomainError: If p divides N or N < 1
    """
    if N < 1:
        raise DomainError(f"order must be positive, got {N}")
    if N % p == 0:
        raise DomainError(f"no root of unity of order {N} exists in characteristic {p}")
    if N == 1:
        return 1
    return int(n_order(p, N))


class FieldOrderTable:
    """
    Orders of all nonzero elements of a field, indexed by code.

    Built by walking the powers of the primitive element once; the order of
    gamma^e is (q - 1) / gcd(e, q - 1).
    """

    def __init__(self, F: FiniteField):
        self.field = F
        q1 = F.order - 1
        gamma = _primitive_code(F)
        orders = [0] * F.order
        exponent_of = [0] * F.order
        value = 1
        for e in range(q1):
            orders[value] = q1 // math.gcd(e, q1)
            exponent_of[value] = e
            value = F.mul(value, gamma)
        self.orders = orders
        self.exponent_of = exponent_of

    def order_of(self, code: int) -> int:
        if code == 0:
            raise DomainError("0 has no multiplicative order")
        return self.orders[code]


# Polynomials over F_p, used by the divisor-count method.

def gf2_divisor_count(M: int, f_mask: int) -> int:
    """
    Return deg gcd(X^M - 1, f(X)^M - 1) over F_2 for odd M.

    Polynomials are bitmasks (bit i is the coefficient of X^i). f^M is built
    from the binary expansion of M using f(X)^(2^j) = f(X^(2^j)) and reduced
    cyclically modulo X^M - 1.
    """
    if M % 2 == 0:
        raise DomainError(f"M={M} must be odd in characteristic 2")
    if M == 1:
        return bin(f_mask).count("1") % 2
    full = (1 << M) - 1

    def cyclic(poly: int) -> int:
        while poly >> M:
            poly = (poly & full) ^ (poly >> M)
        return poly

    def frobenius(poly: int, shift: int) -> int:
        # f(X^(2^shift)) mod X^M - 1
        out, i = 0, 0
        while poly:
            if poly & 1:
                out ^= 1 << ((i << shift) % M)
            poly >>= 1
            i += 1
        return out

    def multiply(a: int, b: int) -> int:
        out = 0
        i = 0
        while b:
            if b & 1:
                out ^= cyclic(a << i) if i else a
            b >>= 1
            i += 1
        return cyclic(out)

    power, j, m = 1, 0, M
    while m:
        if m & 1:
            factor = frobenius(f_mask, j)
            if factor & 1 and bin(factor).count("1") == 2:
                # (1 + X^s) * power is a shift-xor
                power = cyclic(power ^ (power << (factor.bit_length() - 1)))
            else:
                power = multiply(power, factor)
        m >>= 1
        j += 1
    a, b = (1 << M) | 1, power ^ 1
    while b:
        db = b.bit_length()
        while a and a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        a, b = b, a
    return a.bit_length() - 1


def graph_curve_divisor_count(f: Sequence[int], M: int, p: int) -> int:
    """
    Return #{x in F̄_p : x^M = 1 and f(x)^M = 1} for p not dividing M.

    This is the degree of gcd(X^M - 1, f(X)^M - 1) over F_p because X^M - 1
    is separable. f is given by integer coefficients, constant term first.
    """
    if M % p == 0:
        raise DomainError(f"M={M} is divisible by the characteristic {p}")
    coefficients = [c % p for c in f]
    if p == 2:
        return gf2_divisor_count(M, _undigits(coefficients, 2))
    modulus = [1] + [0] * (M - 1) + [p - 1]
    f_dense = gt.gf_strip(list(reversed(coefficients)))
    power = gt.gf_pow_mod(f_dense, M, modulus, p, ZZ)
    power = gt.gf_sub_ground(power, 1, p, ZZ)
    if not power:
        return M
    return gt.gf_degree(gt.gf_gcd(modulus, power, p, ZZ))
