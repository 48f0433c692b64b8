import cmath
import random
from fractions import Fraction

import pytest
import sympy

from tori.arith import mobius
from tori.cyclotomic import CyclotomicNumber, cyclotomic_polynomial, euler_phi
from tori.errors import DomainError


def _numeric(number):
    zeta = cmath.exp(2j * cmath.pi / number.conductor)
    return sum(float(c) * zeta ** k for k, c in enumerate(number.coefficients))


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    with pytest.raises(DomainError):
        cyclotomic_polynomial(0)


def test_cyclotomic_polynomials_match_sympy():
    x = sympy.Symbol("x")
    for m in range(1, 61):
        coefficients = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()
        assert cyclotomic_polynomial(m) == tuple(int(c) for c in reversed(coefficients))
        assert euler_phi(m) == sympy.totient(m)


def test_roots_of_unity_identities():
    one = CyclotomicNumber.rational(1)
    third = CyclotomicNumber.root_of_unity(Fraction(1, 3))
    assert third + CyclotomicNumber.root_of_unity(Fraction(2, 3)) + one == 0
    i = CyclotomicNumber.root_of_unity(Fraction(1, 4))
    assert i * i == -1
    assert CyclotomicNumber.root_of_unity(Fraction(1, 2)) == -1
    assert CyclotomicNumber.root_of_unity(Fraction(1, 6)) == -CyclotomicNumber.root_of_unity(Fraction(2, 3))
    assert CyclotomicNumber.root_of_unity(Fraction(5, 4)) == i


@pytest.mark.parametrize("N", [2, 3, 4, 6, 12, 15])
def test_sum_of_roots_of_unity(N):
    roots = [CyclotomicNumber.root_of_unity(Fraction(k, N)) for k in range(N)]
    assert sum(roots, CyclotomicNumber.rational(0)).is_zero()
    primitive = [r for k, r in enumerate(roots) if sympy.gcd(k, N) == 1]
    assert sum(primitive, CyclotomicNumber.rational(0)) == mobius(N)


def test_rationals_hash_across_conductors():
    three = CyclotomicNumber.rational(3)
    lifted = CyclotomicNumber.root_of_unity(Fraction(1, 2)) * -3
    assert lifted == three
    assert hash(lifted) == hash(three)
    assert len({three, lifted, 3}) == 1


def test_reduction_preserves_numeric_value():
    rng = random.Random(5)
    for N in (5, 8, 9, 12):
        powers = [(rng.randint(0, 3 * N), Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(6)]
        number = CyclotomicNumber.from_powers(N, powers)
        zeta = cmath.exp(2j * cmath.pi / N)
        expected = sum(float(c) * zeta ** k for k, c in powers)
        assert abs(_numeric(number) - expected) < 1e-9
        assert len(number.coefficients) == euler_phi(N)


def test_lift_and_mixed_conductors():
    a = CyclotomicNumber.root_of_unity(Fraction(1, 4))
    b = CyclotomicNumber.root_of_unity(Fraction(1, 6))
    total = a + b
    assert total.conductor == 12
    assert abs(_numeric(total) - (1j + cmath.exp(1j * cmath.pi / 3))) < 1e-9
    assert a.lift(12) == a
    with pytest.raises(DomainError):
        a.lift(6)
    assert CyclotomicNumber.rational(0).to_text() == "0"
    assert "z4" in a.to_text()
