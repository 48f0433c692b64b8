"""
Torsion points, algebraic subgroups and torsion cosets of the torus G_m^n.

Torsion points are exponent vectors in (Q/Z)^n: the coordinate k/N stands
for the N-th root of unity raised to k. Subgroups are H_Λ = {x : x^v = 1 for
v in Λ} for a p-full lattice Λ. Everything here is exact and field-free.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from tori.arith import jordan_table, jordan_totient
from tori.errors import DomainError, InputError, ResourceLimitError
from tori.intlat import (
    IntegerLattice,
    IntMatrix,
    basis_extension,
    kernel_basis,
    p_saturation,
    saturation,
    smith_normal_form,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_COMPONENTS = 100_000


def _parse_exponent(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"invalid torsion exponent {text!r}: {e}") from e


@dataclass(frozen=True)
class TorsionPoint:
    """
    A torsion point of G_m^n as an exponent vector in [0, 1)^n.

    Attributes:
        coords: Rationals reduced modulo 1
        characteristic: 0 or a prime p; denominators must be coprime to p
    """
    coords: Tuple[Fraction, ...]
    characteristic: int = 0

    def __post_init__(self):
        coords = tuple(Fraction(c) % 1 for c in self.coords)
        object.__setattr__(self, "coords", coords)
        p = self.characteristic
        if p:
            bad = [c for c in coords if c.denominator % p == 0]
            if bad:
                raise DomainError(f"exponent {bad[0]} has denominator divisible by the characteristic {p}")

    @classmethod
    def from_strings(cls, texts: Sequence, characteristic: int = 0) -> TorsionPoint:
        """Build a point from "num/den" strings (or ints and Fractions)."""
        return cls(tuple(_parse_exponent(t) for t in texts), characteristic)

    @classmethod
    def identity(cls, n: int, characteristic: int = 0) -> TorsionPoint:
        return cls((Fraction(0),) * n, characteristic)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def character(self, v: Sequence[int]) -> Fraction:
        """Return the exponent of ζ^v, i.e. sum v_i ζ_i modulo 1."""
        if len(v) != self.ambient_dim:
            raise InputError(f"character of length {len(v)} on a point of dimension {self.ambient_dim}")
        return sum((a * c for a, c in zip(v, self.coords)), Fraction(0)) % 1

    def __mul__(self, other: TorsionPoint) -> TorsionPoint:
        return TorsionPoint(tuple(a + b for a, b in zip(self.coords, other.coords)), self.characteristic)

    def inverse(self) -> TorsionPoint:
        return TorsionPoint(tuple(-c for c in self.coords), self.characteristic)

    def to_json(self) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coords]


def point_order(point: TorsionPoint) -> int:
    """Return ord(ζ), the lcm of the coordinate denominators."""
    return point.order


def monomial_map(point: TorsionPoint, A: IntMatrix) -> TorsionPoint:
    """
    Apply x -> x^A to a torsion point.

    Coordinate j of the image is sum_i A[i, j] * ζ_i modulo 1, so
    monomial_map(monomial_map(ζ, A), B) == monomial_map(ζ, A @ B).

    Raises:
        InputError: If A does not have ambient_dim rows
    """
    if A.nrows != point.ambient_dim:
        raise InputError(f"a {A.nrows}x{A.ncols} matrix cannot act on a point of dimension {point.ambient_dim}")
    return TorsionPoint(tuple(point.character(col) for col in A.columns()), point.characteristic)


def relation_lattice(point: TorsionPoint) -> IntegerLattice:
    """
    Return Λ_ζ = {a in Z^n : ζ^a = 1}.

    With N = ord(ζ) and c_i = N ζ_i, Λ_ζ is the projection of the kernel of
    (c_1, ..., c_n, N) to the first n coordinates. Its index in Z^n is N.
    """
    n = point.ambient_dim
    N = point.order
    row = [int(c * N) for c in point.coords] + [N]
    kernel = kernel_basis(IntMatrix.from_rows([row]))
    return IntegerLattice.from_generators(n, [v[:n] for v in kernel.basis_vectors()])


@dataclass(frozen=True)
class TorusSubgroup:
    """
    Algebraic subgroup H_Λ of G_m^n.

    The lattice is replaced by its p-saturation on construction, so two
    subgroups are equal exactly when their lattices are.

    Attributes:
        lattice: p-full lattice Λ
        characteristic: 0 or a prime
    """
    lattice: IntegerLattice
    characteristic: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lattice", p_saturation(self.lattice, self.characteristic))

    @classmethod
    def full_torus(cls, n: int, characteristic: int = 0) -> TorusSubgroup:
        return cls(IntegerLattice.zero(n), characteristic)

    @classmethod
    def from_relations(cls, n: int, relations: Sequence[Sequence[int]], characteristic: int = 0) -> TorusSubgroup:
        if not relations:
            return cls.full_torus(n, characteristic)
        return cls(IntegerLattice.from_generators(n, relations), characteristic)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def dimension(self) -> int:
        return self.ambient_dim - self.lattice.rank

    @property
    def components(self) -> int:
        """[Λ~ : Λ], the number of connected components."""
        return math.prod(self.lattice.divisors)

    @property
    def is_connected(self) -> bool:
        return self.components == 1

    def identity_component(self) -> TorusSubgroup:
        return TorusSubgroup(saturation(self.lattice), self.characteristic)

    def contains(self, point: TorsionPoint) -> bool:
        return all(point.character(v) == 0 for v in self.lattice.basis_vectors())

    def to_dict(self) -> dict:
        return {"lattice": self.lattice.basis.to_list(), "dimension": self.dimension, "components": self.components}


def subgroup_components(group: TorusSubgroup) -> int:
    """Return the number of connected components of H_Λ."""
    return group.components


@dataclass(frozen=True, eq=False)
class TorsionCoset:
    """
    Torsion coset ζ·H_Λ.

    Attributes:
        rep: Representative torsion point
        group: Subgroup the representative translates
    """
    rep: TorsionPoint
    group: TorusSubgroup

    def __post_init__(self):
        if self.rep.characteristic != self.group.characteristic:
            raise InputError(
                f"representative in characteristic {self.rep.characteristic} "
                f"does not match subgroup in characteristic {self.group.characteristic}"
            )
        if self.rep.ambient_dim != self.group.ambient_dim:
            raise InputError(f"representative of dimension {self.rep.ambient_dim} for a subgroup of G_m^{self.group.ambient_dim}")

    @property
    def ambient_dim(self) -> int:
        return self.rep.ambient_dim

    @property
    def dimension(self) -> int:
        return self.group.dimension

    @property
    def characteristic(self) -> int:
        return self.rep.characteristic

    def contains(self, point: TorsionPoint) -> bool:
        return self.group.contains(point * self.rep.inverse())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorsionCoset):
            return NotImplemented
        return self.group == other.group and self.contains(other.rep)

    def __hash__(self) -> int:
        return hash((self.group.lattice, self.characteristic))

    def reduced_components(self, max_components: int = DEFAULT_MAX_COMPONENTS) -> List[Tuple[TorsionPoint, int]]:
        """
        Return the components as (η, ord(η)) after the monoidal transform.

        Under y = x^B, with B the elementary-divisor frame of Λ, each
        component becomes {η} x G_m^d with η in the first r coordinates.

        Raises:
            ResourceLimitError: If the subgroup has more than max_components components
        """
        components = self.group.components
        if components > max_components:
            raise ResourceLimitError(
                f"subgroup has {components} components", cap="max_components", limit=max_components
            )
        frame, divisors = basis_extension(self.group.lattice)
        image = monomial_map(self.rep, frame).coords[:len(divisors)]
        p = self.characteristic
        result = []
        for shift in itertools.product(*(range(alpha) for alpha in divisors)):
            eta = tuple(c + Fraction(k, alpha) for c, k, alpha in zip(image, shift, divisors))
            point = TorsionPoint(eta, p)
            result.append((point, point.order))
        return result

    def components(self, max_components: int = DEFAULT_MAX_COMPONENTS) -> List[TorsionCoset]:
        """Split the coset into connected torsion cosets with canonical representatives."""
        frame = self.group.lattice.frame_inv
        connected = self.group.identity_component()
        d = self.dimension
        result = []
        for eta, _ in self.reduced_components(max_components):
            lifted = TorsionPoint(eta.coords + (Fraction(0),) * d, self.characteristic)
            result.append(TorsionCoset(monomial_map(lifted, frame), connected))
        return result

    def order_histogram(self, max_components: int = DEFAULT_MAX_COMPONENTS) -> Dict[int, int]:
        """Return {g: number of components of order g}."""
        return dict(Counter(order for _, order in self.reduced_components(max_components)))

    def to_dict(self) -> dict:
        return {"rep": self.rep.to_json(), "lattice": self.group.lattice.basis.to_list(), "dimension": self.dimension}


def coset_order(coset: TorsionCoset, max_components: int = DEFAULT_MAX_COMPONENTS) -> int:
    """Return ord(C), the least order of a torsion point in C."""
    return min(order for _, order in coset.reduced_components(max_components))


def count_coset_exact(coset: TorsionCoset, T: int, max_components: int = DEFAULT_MAX_COMPONENTS) -> int:
    """
    Count torsion points of order <= T in a torsion coset.

    A point (η, ξ) of the reduced component {η} x G_m^d has order
    lcm(ord(η), ord(ξ)), so the component contributes the sum of J_d(n)
    over n <= T with lcm(g, n) <= T and p not dividing n.

    Args:
        coset: Torsion coset
        T: Order cutoff
        max_components: Cap on the number of components enumerated

    Returns:
        #C_T
    """
    if T < 1:
        return 0
    d = coset.dimension
    p = coset.characteristic
    histogram = coset.order_histogram(max_components)
    if d == 0:
        return sum(count for g, count in histogram.items() if g <= T)
    J = jordan_table(d, T).values
    total = 0
    for g, count in histogram.items():
        if g > T:
            continue
        total += count * sum(
            J[n - 1]
            for n in range(1, T + 1)
            if (p == 0 or n % p) and g * n // math.gcd(g, n) <= T
        )
    logger.debug(f"coset of dimension {d} with {len(histogram)} component orders: {total} points up to {T}")
    return total


def coset_upper_bound(coset: TorsionCoset, T: int, max_components: int = DEFAULT_MAX_COMPONENTS) -> Fraction:
    """Return [G:G^0] * T^(d+1) / ord(C), an upper bound for #C_T."""
    return Fraction(coset.group.components * T ** (coset.dimension + 1), coset_order(coset, max_components))


def _divide_exponent(value: Fraction, b: int, p: int) -> List[Fraction]:
    """Return all y in (Q/Z) with order coprime to p and b*y = value."""
    roots = [(value + k) / b for k in range(b)]
    return [y for y in roots if p == 0 or y.denominator % p]


def solve_monomial_equations(U: IntMatrix, target: TorsionPoint) -> List[TorsionCoset]:
    """
    Solve x^U = ζ for x in G_m^n.

    With U = P D Q in Smith form, y = x^P must satisfy y_j^(b_j) = (ζ^(Q^-1))_j
    for j < r, and the remaining coordinates of ζ^(Q^-1) must vanish. The
    solutions are translates of the connected group H_Λ~ for Λ~ the
    saturation of the column span of U; their union is x_0 H_Λp.

    Args:
        U: n x m integer matrix
        target: Torsion point of dimension m

    Returns:
        Connected torsion cosets, sorted by representative; empty if no solution
    """
    if U.ncols != target.ambient_dim:
        raise InputError(f"target of dimension {target.ambient_dim} for a matrix with {U.ncols} columns")
    p = target.characteristic
    n = U.nrows
    snf = smith_normal_form(U)
    r = snf.rank
    reduced = monomial_map(target, snf.V_inv).coords
    if any(reduced[j] for j in range(r, U.ncols)):
        logger.debug("monomial system is inconsistent")
        return []
    choices = [_divide_exponent(reduced[j], snf.invariant_factors[j], p) for j in range(r)]
    group = TorusSubgroup.from_relations(n, [snf.U.column(j) for j in range(r)], p)
    cosets = []
    for y in itertools.product(*choices):
        point = TorsionPoint(tuple(y) + (Fraction(0),) * (n - r), p)
        cosets.append(TorsionCoset(monomial_map(point, snf.U_inv), group))
    cosets.sort(key=lambda c: c.rep.coords)
    logger.debug(f"monomial system of rank {r} has {len(cosets)} solution cosets")
    return cosets


def count_points_of_exact_order(d: int, N: int, characteristic: int = 0) -> int:
    """Return the number of torsion points of G_m^d of order exactly N: J_d(N), or 0 if p | N."""
    if N < 1:
        raise DomainError(f"order must be positive, got {N}")
    if characteristic and N % characteristic == 0:
        return 0
    return jordan_totient(d, N)


def points_of_exact_order(n: int, N: int, characteristic: int = 0) -> Iterator[TorsionPoint]:
    """Yield all torsion points of G_m^n of order exactly N, lexicographically."""
    if N < 1:
        raise DomainError(f"order must be positive, got {N}")
    if characteristic and N % characteristic == 0:
        return
    for numerators in itertools.product(range(N), repeat=n):
        if math.gcd(N, *numerators) == 1:
            yield TorsionPoint(tuple(Fraction(k, N) for k in numerators), characteristic)


def enumerate_points_of_order_dividing(n: int, M: int, characteristic: int = 0) -> Iterator[TorsionPoint]:
    """Yield all torsion points whose order divides M (the prime-to-p part of M in char p)."""
    if M < 1:
        raise DomainError(f"order must be positive, got {M}")
    if characteristic:
        while M % characteristic == 0:
            M //= characteristic
    for numerators in itertools.product(range(M), repeat=n):
        yield TorsionPoint(tuple(Fraction(k, M) for k in numerators), characteristic)
