"""
Exact arithmetic functions for ToriCount.

Provides the Möbius function, Jordan totients, Dirichlet convolution of
tabulated functions, progression sums with their asymptotic main terms,
zeta values with a certified tail bracket and Abel summation.

All integer work is done with Python integers; rational values use
fractions.Fraction. Floats only appear where a main term involves ζ.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

import sympy
from sympy import factorint, primerange

from tori.errors import DomainError, InputError

logger = logging.getLogger(__name__)

DEFAULT_ZETA_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ArithmeticFunctionValues:
    """
    Tabulated values f(1), ..., f(N) of an arithmetic function.

    The table is called like the function itself: ``table(n)`` returns f(n).

    Attributes:
        values: f(1)..f(N) in order (index 0 of the tuple holds f(1))
        name: Optional label used in reports
    """
    values: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) < 1:
            raise InputError("an arithmetic function table needs at least one value")

    @property
    def size(self) -> int:
        """Return N, the largest tabulated argument."""
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise InputError(f"{self.name or 'table'}({n}) is outside the tabulated range 1..{len(self.values)}")
        return self.values[n - 1]

    def __iter__(self):
        return iter(self.values)

    def truncate(self, N: int) -> ArithmeticFunctionValues:
        """Return the table restricted to 1..N."""
        if N > len(self.values):
            raise InputError(f"cannot truncate a table of size {len(self.values)} to {N}")
        return ArithmeticFunctionValues(self.values[:N], self.name)


@dataclass(frozen=True)
class MainTermParams:
    """
    Parameters of a progression or coset main term.

    Attributes:
        d: Totient index
        m: Modulus of the progression
        a: Residue of the progression
        x: Summation cutoff (x or T)
        p: Characteristic, 0 or a prime
        g: gcd(a, m); computed when omitted
    """
    d: int
    m: int = 1
    a: int = 0
    x: int = 1
    p: int = 0
    g: Optional[int] = None

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"totient index d must be >= 1, got {self.d}")
        if self.m < 1:
            raise DomainError(f"modulus m must be >= 1, got {self.m}")
        if self.x < 0:
            raise DomainError(f"cutoff must be >= 0, got {self.x}")
        _check_characteristic(self.p)
        g = math.gcd(self.a, self.m)
        if self.g is None:
            object.__setattr__(self, "g", g)
        elif self.g != g:
            raise InputError(f"g={self.g} does not equal gcd(a, m)={g}")


@dataclass(frozen=True)
class MainTerm:
    """
    Exact audit form of a main term ``coefficient * x**exponent / zeta(zeta_arg)``.

    Attributes:
        coefficient: Exact rational prefactor
        exponent: Power of the cutoff
        zeta_arg: Argument of the zeta value in the denominator
    """
    coefficient: Fraction
    exponent: int
    zeta_arg: int

    def value(self, x: Union[int, Fraction]) -> float:
        """Evaluate the main term at cutoff x as a float."""
        return float(self.coefficient * Fraction(x) ** self.exponent) / zeta_value(self.zeta_arg)

    def as_sympy(self, symbol: str = "T") -> sympy.Expr:
        """Return the main term as a symbolic expression in the cutoff."""
        cutoff = sympy.Symbol(symbol, positive=True)
        coefficient = sympy.Rational(self.coefficient.numerator, self.coefficient.denominator)
        return coefficient * cutoff ** self.exponent / sympy.zeta(self.zeta_arg)

    def scaled(self, factor: Fraction) -> MainTerm:
        return MainTerm(self.coefficient * factor, self.exponent, self.zeta_arg)

    def to_dict(self) -> dict:
        return {
            "coefficient": _fraction_text(self.coefficient),
            "exponent": self.exponent,
            "zeta": self.zeta_arg,
            "expression": str(self.as_sympy()),
        }


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _check_characteristic(p: int) -> None:
    if p < 0 or (p > 0 and not sympy.isprime(p)):
        raise DomainError(f"characteristic must be 0 or a prime, got {p}")


def _check_positive(name: str, value: int) -> None:
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")


def mobius(n: int) -> int:
    """
    Return the Möbius function μ(n).

    Args:
        n: Positive integer

    Returns:
        0 if n is not squarefree, otherwise (-1)**r for r distinct prime factors

    Raises:
        DomainError: If n < 1
    """
    _check_positive("n", n)
    exponents = factorint(n)
    if any(e > 1 for e in exponents.values()):
        return 0
    return -1 if len(exponents) % 2 else 1


def jordan_totient(d: int, n: int) -> int:
    """
    Return the Jordan totient J_d(n) = n^d * prod_{p | n} (1 - p^-d).

    J_d(n) is the number of points of exact order n in the d-dimensional torus
    in characteristic 0. J_0 is the unit of Dirichlet convolution.

    Raises:
        DomainError: If d < 0 or n < 1
    """
    if d < 0:
        raise DomainError(f"totient index d must be >= 0, got {d}")
    _check_positive("n", n)
    if d == 0:
        return 1 if n == 1 else 0
    result = n ** d
    for prime in factorint(n):
        prime_power = prime ** d
        result = result // prime_power * (prime_power - 1)
    return result


@lru_cache(maxsize=16)
def _jordan_values(d: int, N: int) -> Tuple[int, ...]:
    if d == 0:
        return (1,) + (0,) * (N - 1)
    values = [k ** d for k in range(N + 1)]
    for prime in primerange(2, N + 1):
        prime_power = prime ** d
        for k in range(prime, N + 1, prime):
            values[k] = values[k] // prime_power * (prime_power - 1)
    return tuple(values[1:])


def jordan_table(d: int, N: int) -> ArithmeticFunctionValues:
    """Tabulate J_d(1..N) with a prime sieve."""
    if d < 0:
        raise DomainError(f"totient index d must be >= 0, got {d}")
    _check_positive("N", N)
    logger.debug(f"Tabulating J_{d} up to {N}")
    return ArithmeticFunctionValues(_jordan_values(d, N), f"J_{d}")


@lru_cache(maxsize=8)
def _mobius_values(N: int) -> Tuple[int, ...]:
    values = [1] * (N + 1)
    for prime in primerange(2, N + 1):
        for k in range(prime, N + 1, prime):
            values[k] = -values[k]
        square = prime * prime
        for k in range(square, N + 1, square):
            values[k] = 0
    return tuple(values[1:])


def mobius_table(N: int) -> ArithmeticFunctionValues:
    """Tabulate μ(1..N)."""
    _check_positive("N", N)
    return ArithmeticFunctionValues(_mobius_values(N), "mu")


def identity_power_table(d: int, N: int) -> ArithmeticFunctionValues:
    """Tabulate I_d(n) = n^d."""
    _check_positive("N", N)
    return ArithmeticFunctionValues(tuple(n ** d for n in range(1, N + 1)), f"I_{d}")


def epsilon_table(N: int) -> ArithmeticFunctionValues:
    """Tabulate the constant function ε(n) = 1."""
    _check_positive("N", N)
    return ArithmeticFunctionValues((1,) * N, "epsilon")


def unit_table(N: int) -> ArithmeticFunctionValues:
    """Tabulate η, the unit of Dirichlet convolution (η(1) = 1, else 0)."""
    _check_positive("N", N)
    return ArithmeticFunctionValues((1,) + (0,) * (N - 1), "eta")


def dirichlet_convolve(f: ArithmeticFunctionValues, g: ArithmeticFunctionValues, N: int) -> ArithmeticFunctionValues:
    """
    Return the table of (f ⋆ g)(n) = sum_{d | n} f(d) g(n/d) for n <= N.

    Raises:
        InputError: If either table does not cover 1..N
    """
    _check_positive("N", N)
    if len(f) < N or len(g) < N:
        raise InputError(f"tables of sizes {len(f)} and {len(g)} do not cover 1..{N}")
    result = [0] * (N + 1)
    f_values, g_values = f.values, g.values
    for d in range(1, N + 1):
        fd = f_values[d - 1]
        if fd == 0:
            continue
        for k in range(1, N // d + 1):
            result[d * k] += fd * g_values[k - 1]
    name = f"({f.name}*{g.name})" if f.name and g.name else ""
    return ArithmeticFunctionValues(tuple(result[1:]), name)


def _progression_start(m: int, a: int) -> int:
    residue = a % m
    return residue if residue else m


def jordan_sum_progression(d: int, m: int, a: int, x: int) -> int:
    """
    Return the exact sum of J_d(n) over n <= x with n ≡ a (mod m).

    Args:
        d: Totient index (>= 1)
        m: Modulus
        a: Residue
        x: Cutoff
    """
    if d < 1:
        raise DomainError(f"totient index d must be >= 1, got {d}")
    _check_positive("m", m)
    if x < 1:
        return 0
    values = _jordan_values(d, x)
    return sum(values[_progression_start(m, a) - 1::m])


def jordan_progression_main_term_exact(params: MainTermParams) -> MainTerm:
    """Return the main term of the Jordan progression sum in exact audit form."""
    d, m, g = params.d, params.m, params.g
    coefficient = Fraction(m ** d * jordan_totient(d, g), (d + 1) * g ** d * jordan_totient(d + 1, m))
    return MainTerm(coefficient, d + 1, d + 1)


def jordan_progression_main_term(params: MainTermParams) -> float:
    """
    Return m^d J_d(g) x^{d+1} / ((d+1) ζ(d+1) g^d J_{d+1}(m)) as a float.

    The relative precision is that of zeta_value (about 1e-12).
    """
    return jordan_progression_main_term_exact(params).value(params.x)


def power_sum_progression(d: int, m: int, a: int, x: int) -> int:
    """Return the sum of n^d over 1 <= n <= x with n ≡ a (mod m)."""
    if d < 0:
        raise DomainError(f"exponent d must be >= 0, got {d}")
    _check_positive("m", m)
    return sum(n ** d for n in range(_progression_start(m, a), x + 1, m))


def power_sum_main_term(d: int, m: int, x: Union[int, Fraction]) -> Fraction:
    """Return the main term x^{d+1} / ((d+1) m) of power_sum_progression."""
    if d < 0:
        raise DomainError(f"exponent d must be >= 0, got {d}")
    _check_positive("m", m)
    return Fraction(x) ** (d + 1) / ((d + 1) * m)


def coprime_mobius_sum(d: int, m: int, x: int) -> Fraction:
    """Return the exact partial sum of μ(n)/n^{d+1} over n <= x coprime to m."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    _check_positive("m", m)
    if x < 1:
        return Fraction(0)
    mu = _mobius_values(x)
    total = Fraction(0)
    for n in range(1, x + 1):
        if mu[n - 1] and math.gcd(n, m) == 1:
            total += Fraction(mu[n - 1], n ** (d + 1))
    return total


def coprime_mobius_limit(d: int, m: int) -> float:
    """Return the limit m^{d+1} / (ζ(d+1) J_{d+1}(m)) of coprime_mobius_sum."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    _check_positive("m", m)
    return float(Fraction(m ** (d + 1), jordan_totient(d + 1, m))) / zeta_value(d + 1)


def _tail_cutoff(s: int, tolerance: float) -> int:
    # bracket width ((n0-1)^(1-s) - n0^(1-s)) / (s-1)
    n0 = 2
    while (float(Fraction(1, (n0 - 1) ** (s - 1)) - Fraction(1, n0 ** (s - 1)))) / (s - 1) >= tolerance:
        n0 *= 2
    return n0


@lru_cache(maxsize=64)
def zeta_bracket(s: int, tolerance: float = DEFAULT_ZETA_TOLERANCE) -> Tuple[float, float]:
    """
    Return a bracket [lower, upper] containing ζ(s).

    The partial sum runs to n0 - 1; the tail sum_{n >= n0} n^-s lies between
    the integrals of t^-s from n0 and from n0 - 1 to infinity. n0 is the first
    power of two making the bracket narrower than ``tolerance``.

    Raises:
        DomainError: If s < 2
    """
    if s < 2:
        raise DomainError(f"zeta_value needs an integer s >= 2, got {s}")
    n0 = _tail_cutoff(s, tolerance)
    partial = math.fsum(n ** -s for n in range(1, n0))
    lower_tail = 1.0 / ((s - 1) * float(n0) ** (s - 1))
    upper_tail = 1.0 / ((s - 1) * float(n0 - 1) ** (s - 1))
    logger.debug(f"zeta({s}): partial sum to {n0 - 1}, tail in [{lower_tail}, {upper_tail}]")
    return partial + lower_tail, partial + upper_tail


def zeta_value(s: int, tolerance: float = DEFAULT_ZETA_TOLERANCE) -> float:
    """Return ζ(s) for integer s >= 2 as the midpoint of zeta_bracket."""
    lower, upper = zeta_bracket(s, tolerance)
    return (lower + upper) / 2


def coset_main_term_exact(p: int, d: int, g: int) -> MainTerm:
    """
    Return the coset main term in exact audit form.

    For p = 0 this is T^{d+1} / ((d+1) ζ(d+1) g); for p > 0 the extra factor
    (p-1)/(p-p^{-d}) = (p-1) p^d / (p^{d+1} - 1) accounts for the missing
    orders divisible by p.

    Raises:
        DomainError: If p is not 0 or prime, d < 1, g < 1 or p divides g
    """
    _check_characteristic(p)
    if d < 1:
        raise DomainError(f"coset dimension d must be >= 1 for a main term, got {d}")
    _check_positive("g", g)
    if p > 0 and g % p == 0:
        raise DomainError(f"coset order {g} is divisible by the characteristic {p}")
    coefficient = Fraction(1, (d + 1) * g)
    if p > 0:
        coefficient *= Fraction((p - 1) * p ** d, p ** (d + 1) - 1)
    return MainTerm(coefficient, d + 1, d + 1)


def coset_main_term(p: int, d: int, g: int, T: Union[int, Fraction]) -> float:
    """Return the main term of the count of points of order <= T on a coset of order g."""
    return coset_main_term_exact(p, d, g).value(T)


def conv_identity_check(d: int, n: int) -> bool:
    """
    Check sum_{a=1}^{n} gcd(a,n) J_d(gcd(a,n)) == J_{d+1}(n) exactly.

    The left side is grouped by e = gcd(a, n); exactly φ(n/e) residues share e.
    """
    _check_positive("d", d)
    _check_positive("n", n)
    left = sum(
        jordan_totient(1, n // e) * e * jordan_totient(d, e)
        for e in sympy.divisors(n)
    )
    return left == jordan_totient(d + 1, n)


def abel_reciprocal_sum(
    prefix: Union[ArithmeticFunctionValues, Sequence[Union[int, Fraction]]],
    T: int,
    nonnegative: bool = True,
) -> Fraction:
    """
    Return sum_{n<=T} a_n / n from the partial sums A(k) = a_1 + ... + a_k.

    Uses 1/n = 1/T + sum_{k=n}^{T-1} 1/(k(k+1)), which rearranges the sum to
    A(T)/T + sum_{k<T} A(k)/(k(k+1)).

    Args:
        prefix: A(1), A(2), ..., at least T values
        T: Cutoff
        nonnegative: Whether the a_n are declared nonnegative

    Raises:
        InputError: If the prefix is too short, or decreases while nonnegative
    """
    _check_positive("T", T)
    values = list(prefix.values if isinstance(prefix, ArithmeticFunctionValues) else prefix)
    if len(values) < T:
        raise InputError(f"prefix covers {len(values)} values, need {T}")
    values = [Fraction(v) for v in values[:T]]
    if nonnegative:
        previous = Fraction(0)
        for k, value in enumerate(values, start=1):
            if value < previous:
                raise InputError(f"prefix decreases at k={k} although a_n is declared nonnegative")
            previous = value
    total = values[T - 1] / T
    for k in range(1, T):
        total += values[k - 1] / (k * (k + 1))
    return total


def prefix_sums(values: Iterable[int]) -> Tuple[int, ...]:
    """Return the running totals of ``values``."""
    total = 0
    out = []
    for value in values:
        total += value
        out.append(total)
    return tuple(out)
