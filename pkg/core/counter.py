"""
Counting service for ToriCount.

Exact counts of torsion points of bounded order on hypersurfaces over F̄_p,
the Fink-curve experiment, Lang–Weil tables and the exponent calculators
that the counts are compared against.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter, defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from core.config import ToriCountConfig, get_config
from core.types import (
    Char0MainTerm,
    CosetDecomposition,
    CountMethod,
    CountReport,
    LangWeilReport,
    LangWeilRow,
)
from tori.arith import MainTerm, abel_reciprocal_sum, jordan_table, mobius_table, prefix_sums
from tori.errors import DomainError, InputError, ResourceLimitError
from tori.ffield import (
    FieldElement,
    FieldOrderTable,
    FiniteField,
    graph_curve_divisor_count,
    make_field,
    minimal_field_degree,
)
from tori.intlat import SuccessiveMinima, successive_minima
from tori.torsion import TorsionPoint, coset_order, count_coset_exact, relation_lattice
from tori.variety import LaurentPolynomial, format_polynomial, parse_polynomial

logger = logging.getLogger(__name__)

FINK_CURVE = "x1 + x2 - 1"
# X2 = 1 - X1, constant term first
FINK_GRAPH = (1, -1)


def _coefficient_code(c, F: FiniteField) -> int:
    if isinstance(c, FieldElement):
        return F.embed(c).code
    return F.element(c).code


class _LastCoordinateSolver:
    """
    Solve P(x', x_n) = 0 for x_n once the first n - 1 coordinates are fixed.

    P is grouped by the exponent of x_n. When only two groups survive at a
    prefix and their exponents differ by one, the root is read off directly;
    otherwise the candidates are scanned.
    """

    def __init__(self, P: LaurentPolynomial, F: FiniteField):
        self.field = F
        groups: Dict[int, List[Tuple[Tuple[int, ...], int]]] = defaultdict(list)
        for exponent, c in P.terms:
            groups[exponent[-1]].append((exponent[:-1], _coefficient_code(c, F)))
        self.groups = sorted(groups.items())
        exponents = [e for e, _ in self.groups]
        self.linear = len(exponents) <= 1 or (len(exponents) == 2 and exponents[1] - exponents[0] == 1)

    def _group_values(self, prefix: Sequence[int]) -> List[Tuple[int, int]]:
        F = self.field
        values = []
        for e, terms in self.groups:
            total = 0
            for exponent, code in terms:
                term = code
                for x, a in zip(prefix, exponent):
                    if a:
                        term = F.mul(term, F.power(x, a))
                total = F.add(total, term)
            if total:
                values.append((e, total))
        return values

    def solve(self, prefix: Sequence[int], candidates: Sequence[int], accept: Callable[[int], bool]) -> List[int]:
        """Return the candidate codes x with P(prefix, x) = 0, in code order."""
        F = self.field
        values = self._group_values(prefix)
        if not values:
            return list(candidates)
        if len(values) == 1:
            return []
        if len(values) == 2 and values[1][0] - values[0][0] == 1:
            root = F.mul(F.neg(values[0][1]), F.inverse(values[1][1]))
            return [root] if accept(root) else []
        return [
            x for x in candidates
            if _sum_codes(F, (F.mul(v, F.power(x, e)) for e, v in values)) == 0
        ]


def _sum_codes(F: FiniteField, codes: Iterable[int]) -> int:
    total = 0
    for code in codes:
        total = F.add(total, code)
    return total


def _needed_degrees(p: int, k: int, T: int) -> Dict[int, int]:
    """Map each order N <= T coprime to p to the degree of the field holding μ_N and F_{p^k}."""
    return {N: math.lcm(minimal_field_degree(N, p), k) for N in range(1, T + 1) if N % p}


def _field_offenders(p: int, degrees: Dict[int, int], max_field_bits: int) -> List[int]:
    return [N for N, l in sorted(degrees.items()) if p ** l > 2 ** max_field_bits]


def bound_exponent(d: int, delta: int) -> Fraction:
    """
    Return d + 1 - 1/(d - δ + 1), the counting exponent for a d-dimensional
    admissible variety whose stabilizer has dimension δ.

    Raises:
        DomainError: Unless 0 <= δ <= d
    """
    if d < 0 or delta < 0 or delta > d:
        raise DomainError(f"need 0 <= delta <= d, got d={d}, delta={delta}")
    return Fraction(d + 1) - Fraction(1, d - delta + 1)


def general_bound_exponent(d: int) -> int:
    """Return d + 1, the exponent valid for every d-dimensional variety."""
    if d < 0:
        raise DomainError(f"dimension must be nonnegative, got {d}")
    return d + 1


def hypersurface_exponent(n: int) -> Fraction:
    """Return n - 1/n, the exponent for admissible hypersurfaces of G_m^n."""
    if n < 1:
        raise DomainError(f"ambient dimension must be positive, got {n}")
    return Fraction(n) - Fraction(1, n)


def fink_minkowski_bound(T: int) -> int:
    """Return 16 * sum_{k <= sqrt(T)} k^2, which is at most 16 T^(3/2)."""
    if T < 1:
        raise DomainError(f"T must be positive, got {T}")
    s = math.isqrt(T)
    return 16 * s * (s + 1) * (2 * s + 1) // 6


def cylinder_bound(T: int) -> float:
    """Return 48 T^(5/2), the bound for X1 + X2 - 1 viewed in three variables."""
    if T < 1:
        raise DomainError(f"T must be positive, got {T}")
    return 48.0 * T ** 2.5


def empirical_exponent(series: Iterable[Tuple[int, int]]) -> float:
    """
    Fit log(count) = slope * log(T) + c by least squares and return the slope.

    Points with a nonpositive count are dropped.

    Raises:
        InputError: If fewer than three points remain
    """
    points = [(T, count) for T, count in series if count > 0 and T > 0]
    if len(points) < 3:
        raise InputError(f"need at least 3 points with positive counts, got {len(points)}")
    xs = np.log(np.array([T for T, _ in points], dtype=float))
    ys = np.log(np.array([count for _, count in points], dtype=float))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def _is_mersenne(T: int) -> bool:
    return T >= 1 and (T + 1) & T == 0


class TorsionCounter:
    """
    Service for exact torsion-point counts and their comparison with bounds.

    All resource caps come from the configuration passed in (or the global
    one), so the CLI and the tests share one code path.
    """

    def __init__(self, config: Optional[ToriCountConfig] = None):
        self.config = config or get_config()
        logger.debug(f"TorsionCounter initialized with limits {self.config.limits}")

    @property
    def max_field_bits(self) -> int:
        return self.config.limits.max_field_bits

    def _charge(self, used: int, extra: int) -> int:
        budget = self.config.limits.max_points
        if used + extra > budget:
            raise ResourceLimitError(
                f"enumeration would visit more than {budget} torus points",
                cap="max_points",
                limit=budget,
            )
        return used + extra

    def count_variety_charp(self, P: LaurentPolynomial, T: int) -> CountReport:
        """
        Count the torsion points of order <= T on Z(P) over F̄_p by enumeration.

        For each order N <= T (p not dividing N) the points of order N live in
        F_{p^l(N)} with l(N) = lcm(ord_N(p), k). Fields are visited in
        ascending l, and a point found in F_{p^l} is counted only when
        l(ord) == l, so every torsion point is counted exactly once.

        Args:
            P: Nonzero Laurent polynomial over F_{p^k}
            T: Order cutoff

        Returns:
            CountReport with the per-order histogram

        Raises:
            ResourceLimitError: If a needed field exceeds max_field_bits (the
                message names the smallest offending order) or the enumeration
                exceeds max_points
        """
        if P.is_zero():
            raise DomainError("the zero polynomial defines the whole torus")
        if P.field is None:
            raise InputError("counting over F̄_p needs a polynomial over a finite field")
        if T < 1:
            raise DomainError(f"T must be positive, got {T}")
        p, k = P.field.p, P.field.l
        text = format_polynomial(P)
        logger.info(f"Counting torsion points of order <= {T} on {text} over F_{p}^{k}")

        degrees = _needed_degrees(p, k, T)
        offenders = _field_offenders(p, degrees, self.max_field_bits)
        if offenders:
            N = offenders[0]
            raise ResourceLimitError(
                f"order {N} needs F_{p}^{degrees[N]}; offending orders {offenders[:10]}",
                cap="max_field_bits",
                limit=self.max_field_bits,
            )

        histogram: Counter = Counter()
        used = 0
        free = P.nvars - 1
        for l in sorted(set(degrees.values())):
            F = make_field(p, l, self.max_field_bits)
            table = FieldOrderTable(F)
            orders = table.orders
            candidates = [code for code in range(1, F.order) if orders[code] <= T]
            candidate_set = set(candidates)
            solver = _LastCoordinateSolver(P, F)
            used = self._charge(used, len(candidates) ** free * (1 if solver.linear else len(candidates)))
            found = 0
            for prefix in itertools.product(candidates, repeat=free):
                prefix_order = math.lcm(*(orders[x] for x in prefix)) if prefix else 1
                if prefix_order > T:
                    continue
                for x in solver.solve(prefix, candidates, candidate_set.__contains__):
                    N = math.lcm(prefix_order, orders[x])
                    if N <= T and degrees[N] == l:
                        histogram[N] += 1
                        found += 1
            logger.debug(f"{F.label}: {len(candidates)} candidate coordinates, {found} new points")

        report = CountReport(
            label="count-charp",
            params={"p": p, "k": k, "T": T, "polynomial": text, "max_field_bits": self.max_field_bits},
            exact=sum(histogram.values()),
            histogram=dict(histogram),
            method=CountMethod.ENUMERATION,
        )
        logger.info(f"Found {report.exact} torsion points of order <= {T}")
        return report

    def count_divisor_orders(self, f: Sequence[int], p: int, T: int) -> CountReport:
        """
        Count the torsion points of order <= T on the graph curve X2 = f(X1).

        c(M), the number of points whose order divides M, is the degree of
        gcd(X^M - 1, f(X)^M - 1); Möbius inversion turns it into the number of
        points of exact order N.

        Args:
            f: Integer coefficients of f, constant term first
            p: Characteristic
            T: Order cutoff
        """
        if T < 1:
            raise DomainError(f"T must be positive, got {T}")
        if not sympy.isprime(p):
            raise DomainError(f"characteristic must be prime, got {p}")
        logger.info(f"Counting graph-curve torsion points of order <= {T} in characteristic {p} by divisor counts")
        mu = mobius_table(T).values
        exact_orders = [0] * (T + 1)
        for M in range(1, T + 1):
            if M % p == 0:
                continue
            c = graph_curve_divisor_count(f, M, p)
            if not c:
                continue
            # a(N) = sum over M | N of μ(N/M) c(M)
            for m in range(1, T // M + 1):
                if mu[m - 1] and m % p:
                    exact_orders[M * m] += mu[m - 1] * c
        histogram = {N: a for N, a in enumerate(exact_orders) if a}
        return CountReport(
            label="divisor-count",
            params={"p": p, "T": T, "f": list(f)},
            exact=sum(histogram.values()),
            histogram=histogram,
            method=CountMethod.DIVISOR_COUNT,
        )

    def _fink_histogram(self, p: int, T: int, method: str) -> Tuple[Dict[int, int], CountMethod]:
        if method not in ("auto", "enumeration", "divisor-count"):
            raise InputError(f"unknown counting method {method!r}")
        if method == "auto":
            fits = not _field_offenders(p, _needed_degrees(p, 1, T), self.max_field_bits)
            method = "enumeration" if fits else "divisor-count"
            logger.debug(f"Fink curve at T={T}: using {method}")
        if method == "enumeration":
            P = parse_polynomial(FINK_CURVE, 2, make_field(p, 1, self.max_field_bits))
            return self.count_variety_charp(P, T).histogram, CountMethod.ENUMERATION
        return self.count_divisor_orders(FINK_GRAPH, p, T).histogram, CountMethod.DIVISOR_COUNT

    def verify_fink(self, p: int, T_list: Sequence[int], method: str = "auto") -> List[CountReport]:
        """
        Count torsion points on X1 + X2 = 1 over F̄_p and check the known bounds.

        Every T gets the upper bound 16 T^(3/2) and its sharper sum form. For
        p = 2 the lower bound T/2 - 2 is checked too, and at T = 2^k - 1 the
        count must reach T - 1, with at least T - 1 points of order dividing T.

        Args:
            p: Characteristic
            T_list: Cutoffs; one report each, in the given order
            method: "auto", "enumeration" or "divisor-count"
        """
        if not T_list:
            raise InputError("need at least one cutoff T")
        if any(T < 1 for T in T_list):
            raise DomainError(f"cutoffs must be positive, got {list(T_list)}")
        T_max = max(T_list)
        logger.info(f"Verifying the Fink curve bounds in characteristic {p} up to T={T_max}")
        histogram, used_method = self._fink_histogram(p, T_max, method)

        reports = []
        for T in T_list:
            local = {N: count for N, count in histogram.items() if N <= T}
            exact = sum(local.values())
            checks = {
                "upper": exact * exact <= 256 * T ** 3,
                "minkowski": exact <= fink_minkowski_bound(T),
            }
            lower = None
            if p == 2:
                lower = T / 2 - 2
                checks["lower"] = 2 * exact >= T - 4
                if _is_mersenne(T):
                    checks["mersenne"] = exact >= T - 1
                    checks["mersenne_divisors"] = sum(c for N, c in local.items() if T % N == 0) >= T - 1
            report = CountReport(
                label="fink",
                params={"p": p, "T": T, "polynomial": FINK_CURVE},
                exact=exact,
                upper_bound=16 * T ** 1.5,
                lower_bound=lower,
                histogram=local,
                checks=checks,
                method=used_method,
            )
            if not report.passed:
                logger.warning(f"Fink curve check failed at T={T}: {report.checks}")
            reports.append(report)
        return reports

    def count_cylinder(self, p: int, T: int, method: str = "auto") -> CountReport:
        """
        Count torsion points of order <= T on X1 + X2 = 1 inside G_m^3.

        A point (ξ, t) has order lcm(ord ξ, ord t), so with a_n points of
        order n on the curve the count is sum_n a_n * sum φ(m) over m <= T
        coprime to p with lcm(n, m) <= T. The histogram buckets a_n * φ(m) by
        lcm(n, m); the report checks the total against T^2 sum a_n/n and
        48 T^(5/2).
        """
        if T < 1:
            raise DomainError(f"T must be positive, got {T}")
        histogram, used_method = self._fink_histogram(p, T, method)
        phi = jordan_table(1, T).values
        orders: Counter = Counter()
        for n, a in histogram.items():
            for m in range(1, T + 1):
                N = math.lcm(n, m)
                if m % p and N <= T:
                    orders[N] += a * phi[m - 1]
        exact = sum(orders.values())
        prefix = prefix_sums(histogram.get(n, 0) for n in range(1, T + 1))
        reciprocal = abel_reciprocal_sum(prefix, T)
        checks = {
            "abel": exact <= T * T * reciprocal,
            "upper": exact * exact <= 2304 * T ** 5,
        }
        return CountReport(
            label="cylinder",
            params={"p": p, "T": T, "polynomial": FINK_CURVE, "nvars": 3},
            exact=exact,
            upper_bound=cylinder_bound(T),
            histogram=dict(orders),
            checks=checks,
            method=used_method,
        )

    def lang_weil_check(self, P: LaurentPolynomial, l_list: Sequence[int], dimension: int) -> LangWeilReport:
        """
        Count points of Z(P) in the torus over F_{p^l} for each l and compare with q^r.

        Args:
            P: Laurent polynomial over F_{p^k}
            l_list: Field degrees, each a multiple of k
            dimension: r, the dimension of Z(P)

        Raises:
            InputError: If some l is not a multiple of k
            ResourceLimitError: If a field or the enumeration exceeds its cap
        """
        if P.field is None:
            raise InputError("Lang–Weil tables need a polynomial over a finite field")
        if P.is_zero():
            raise DomainError("the zero polynomial defines the whole torus")
        if not l_list:
            raise InputError("need at least one field degree")
        p, k = P.field.p, P.field.l
        bad = [l for l in l_list if l < 1 or l % k]
        if bad:
            raise InputError(f"field degrees {bad} are not positive multiples of k={k}")
        slack = self.config.numerics.lang_weil_slack
        text = format_polynomial(P)
        logger.info(f"Lang–Weil table for {text} over F_{p}^l, l in {sorted(set(l_list))}")

        rows = []
        used = 0
        free = P.nvars - 1
        for l in sorted(set(l_list)):
            F = make_field(p, l, self.max_field_bits)
            solver = _LastCoordinateSolver(P, F)
            candidates = range(1, F.order)
            used = self._charge(used, len(candidates) ** free * (1 if solver.linear else len(candidates)))
            count = sum(
                len(solver.solve(prefix, candidates, bool))
                for prefix in itertools.product(candidates, repeat=free)
            )
            q = F.order
            deviation = abs(count - q ** dimension) / q ** (dimension - 0.5)
            rows.append(LangWeilRow(l, q, count, deviation))
            logger.debug(f"{F.label}: {count} points, normalised deviation {deviation:.4f}")

        bounded = True
        if len(rows) > 1:
            bounded = rows[-1].deviation <= slack * max(row.deviation for row in rows[:-1])
        return LangWeilReport(text, dimension, rows, bounded, slack)

    def char0_main_term(self, decomposition: CosetDecomposition, T: int) -> Char0MainTerm:
        """
        Return the main term b T^(a+1) for the torsion closure C_1 ∪ ... ∪ C_m.

        b sums 1/((a+1) ζ(a+1) ord(C_i)) over the cosets of top dimension a.
        When a = 0 the torsion points are finite and main is their number
        up to order T.
        """
        if T < 1:
            raise DomainError(f"T must be positive, got {T}")
        cap = self.config.limits.max_components
        a = decomposition.dimension
        union_bound = sum(count_coset_exact(c, T, cap) for c in decomposition.cosets)
        if a == 0:
            points = {
                component.rep
                for coset in decomposition.cosets
                for component in coset.components(cap)
                if component.rep.order <= T
            }
            return Char0MainTerm(0, None, T, float(len(points)), union_bound, finite=True)
        reciprocal = sum(
            (Fraction(1, coset_order(c, cap)) for c in decomposition.top_dimensional()),
            Fraction(0),
        )
        b = MainTerm(reciprocal / (a + 1), a + 1, a + 1)
        return Char0MainTerm(a, b, T, b.value(T), union_bound)

    def minkowski_relations(self, point: TorsionPoint) -> SuccessiveMinima:
        """
        Return n independent relations ζ^(a_i) = 1 with |a_1| <= ... <= |a_n|.

        They realise the successive minima of the relation lattice, so the
        product of their norms is at most ord(ζ).
        """
        limits = self.config.limits
        minima = successive_minima(relation_lattice(point), limits.minima_dim_cap, limits.minima_vector_budget)
        logger.debug(f"relations of {point.to_json()}: norms {minima.minima}, product {minima.product} <= {point.order}")
        return minima
