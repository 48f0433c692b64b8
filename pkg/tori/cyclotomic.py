"""
Cyclotomic polynomials and exact arithmetic in cyclotomic fields Q(ζ_N).

A CyclotomicNumber is a rational polynomial in ζ_N reduced modulo Φ_N.
Numbers of different conductors are lifted to the lcm before combining.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from sympy import divisors

from tori.errors import DomainError

Rational = Union[int, Fraction]


def _exact_divide(numerator: List[int], denominator: Sequence[int]) -> List[int]:
    """Divide integer polynomials (constant term first) by a monic divisor, exactly."""
    numerator = list(numerator)
    degree = len(denominator) - 1
    quotient = [0] * (len(numerator) - degree)
    for top in range(len(numerator) - 1, degree - 1, -1):
        c = numerator[top]
        if c:
            quotient[top - degree] = c
            for i, d in enumerate(denominator):
                numerator[top - degree + i] -= c * d
    if any(numerator[:degree]):
        raise DomainError("cyclotomic division left a remainder")
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """
    Return the coefficients of Φ_m, constant term first.

    Φ_m is X^m - 1 divided by every Φ_d for d | m, d < m.
    """
    if m < 1:
        raise DomainError(f"cyclotomic index must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(coefficients: List[Fraction], conductor: int) -> Tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(conductor)
    degree = len(phi) - 1
    coefficients = list(coefficients) + [Fraction(0)] * max(0, degree - len(coefficients))
    for top in range(len(coefficients) - 1, degree - 1, -1):
        c = coefficients[top]
        if c:
            for i, d in enumerate(phi):
                coefficients[top - degree + i] -= c * d
    return tuple(coefficients[:degree])


@dataclass(frozen=True)
class CyclotomicNumber:
    """
    Element of Q(ζ_N) as sum c_k ζ_N^k, k < φ(N), reduced modulo Φ_N.

    Attributes:
        conductor: N
        coefficients: φ(N) rationals
    """
    conductor: int
    coefficients: Tuple[Fraction, ...]

    @classmethod
    def from_powers(cls, conductor: int, powers: Sequence[Tuple[int, Rational]]) -> CyclotomicNumber:
        """Build sum c * ζ_N^k from (k, c) pairs."""
        dense = [Fraction(0)] * conductor
        for k, c in powers:
            dense[k % conductor] += Fraction(c)
        return cls(conductor, _reduce(dense, conductor))

    @classmethod
    def rational(cls, value: Rational) -> CyclotomicNumber:
        return cls(1, (Fraction(value),))

    @classmethod
    def root_of_unity(cls, exponent: Fraction) -> CyclotomicNumber:
        """Return exp(2πi * exponent) for a rational exponent."""
        exponent = Fraction(exponent) % 1
        return cls.from_powers(exponent.denominator, [(exponent.numerator, 1)])

    def lift(self, conductor: int) -> CyclotomicNumber:
        """Rewrite in Q(ζ_M) for a multiple M of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise DomainError(f"cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        return CyclotomicNumber.from_powers(conductor, [(k * step, c) for k, c in enumerate(self.coefficients) if c])

    def _align(self, other) -> Tuple[CyclotomicNumber, CyclotomicNumber]:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(other)
        if not isinstance(other, CyclotomicNumber):
            raise TypeError(f"cannot combine a cyclotomic number with {type(other).__name__}")
        conductor = math.lcm(self.conductor, other.conductor)
        return self.lift(conductor), other.lift(conductor)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, CyclotomicNumber)):
            return NotImplemented
        a, b = self._align(other)
        return CyclotomicNumber(a.conductor, tuple(x + y for x, y in zip(a.coefficients, b.coefficients)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, CyclotomicNumber)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, CyclotomicNumber)):
            return NotImplemented
        a, b = self._align(other)
        powers = [
            (i + j, x * y)
            for i, x in enumerate(a.coefficients) if x
            for j, y in enumerate(b.coefficients) if y
        ]
        return CyclotomicNumber.from_powers(a.conductor, powers)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (int, Fraction, CyclotomicNumber)):
            return NotImplemented
        a, b = self._align(other)
        return a.coefficients == b.coefficients

    def __hash__(self) -> int:
        # rationals have a single nonzero coefficient in every conductor
        if not any(self.coefficients[1:]):
            return hash(self.coefficients[0])
        return hash("cyclotomic")

    def to_text(self) -> str:
        terms = [
            (str(c) if k == 0 else f"{c}*z{self.conductor}^{k}")
            for k, c in enumerate(self.coefficients) if c
        ]
        return " + ".join(terms) if terms else "0"
