"""
Type definitions for ToriCount experiment results.

This module provides the report structures produced by the counting service
and consumed by the exporter and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from tori.arith import MainTerm
from tori.errors import DomainError, InputError
from tori.torsion import TorsionCoset


class CountMethod(Enum):
    """How an exact count was obtained."""
    ENUMERATION = "enumeration"
    DIVISOR_COUNT = "divisor-count"
    COSET_FORMULA = "coset-formula"

    def __str__(self) -> str:
        return self.value


def _float_or_none(value) -> Optional[float]:
    return None if value is None else float(value)


@dataclass
class CountReport:
    """
    Exact count of torsion points of bounded order with its comparison data.

    Attributes:
        label: Short description of the experiment
        params: Inputs (p, T, polynomial text, caps)
        exact: Exact #X_T
        main_term: Asymptotic main term at T, if known
        upper_bound: Proven upper bound at T, if any
        lower_bound: Proven lower bound at T, if any
        ratio: exact / main_term, when a main term is present
        histogram: Number of points of each exact order
        checks: Named pass/fail results of bound checks
        method: How the count was obtained
    """
    label: str
    params: Dict[str, Any] = field(default_factory=dict)
    exact: int = 0
    main_term: Optional[float] = None
    upper_bound: Optional[float] = None
    lower_bound: Optional[float] = None
    ratio: Optional[float] = None
    histogram: Dict[int, int] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    method: CountMethod = CountMethod.ENUMERATION

    def __post_init__(self):
        """Ensure method is a CountMethod and the ratio is filled in."""
        if isinstance(self.method, str):
            self.method = CountMethod(self.method)
        if self.ratio is None and self.main_term:
            self.ratio = self.exact / self.main_term

    @property
    def histogram_total(self) -> int:
        return sum(self.histogram.values())

    @property
    def passed(self) -> bool:
        """Return True when every recorded check passed."""
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "params": self.params,
            "exact": self.exact,
            "main_term": _float_or_none(self.main_term),
            "upper_bound": _float_or_none(self.upper_bound),
            "lower_bound": _float_or_none(self.lower_bound),
            "ratio": _float_or_none(self.ratio),
            "histogram": {str(order): count for order, count in sorted(self.histogram.items())},
            "checks": dict(self.checks),
            "method": str(self.method),
        }


@dataclass
class CosetDecomposition:
    """
    Torsion cosets whose union is the closure of the torsion points of X (characteristic 0).

    Attributes:
        cosets: The cosets C_1, ..., C_m
    """
    cosets: List[TorsionCoset] = field(default_factory=list)

    def __post_init__(self):
        if not self.cosets:
            raise DomainError("a coset decomposition needs at least one coset")
        dims = {c.ambient_dim for c in self.cosets}
        if len(dims) != 1:
            raise InputError(f"cosets live in tori of different dimensions {sorted(dims)}")
        if any(c.characteristic for c in self.cosets):
            raise InputError("coset decompositions are taken in characteristic 0")

    @property
    def ambient_dim(self) -> int:
        return self.cosets[0].ambient_dim

    @property
    def dimension(self) -> int:
        """a(X), the largest coset dimension."""
        return max(c.dimension for c in self.cosets)

    def top_dimensional(self) -> List[TorsionCoset]:
        return [c for c in self.cosets if c.dimension == self.dimension]


@dataclass
class Char0MainTerm:
    """
    Main term b T^(a+1) of #X_T in characteristic 0.

    Attributes:
        a: Largest coset dimension
        b: Exact audit form of b T^(a+1); None when a = 0
        T: Cutoff
        main: b T^(a+1), or the number of points of order <= T when a = 0
        union_bound: Sum of the exact coset counts, an upper bound for #X_T
        finite: True when X has finitely many torsion points
    """
    a: int
    b: Optional[MainTerm]
    T: int
    main: float
    union_bound: int
    finite: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "b": None if self.b is None else self.b.to_dict(),
            "b_value": None if self.b is None else self.b.value(1),
            "T": self.T,
            "main": self.main,
            "union_bound": self.union_bound,
            "finite": self.finite,
        }


@dataclass
class LangWeilRow:
    """
    One field in a Lang–Weil table.

    Attributes:
        l: Degree of F_q over F_p
        q: Field size p^l
        count: Points of Z(P) in the torus over F_q
        deviation: |count - q^r| / q^(r - 1/2)
    """
    l: int
    q: int
    count: int
    deviation: float


@dataclass
class LangWeilReport:
    """
    Lang–Weil comparison across a list of fields.

    Attributes:
        polynomial: Text of P
        dimension: r, the dimension of Z(P) supplied by the caller
        rows: One row per field, ascending in l
        bounded: Whether the normalised deviation stayed bounded
        slack: Allowed growth factor used for the bounded flag
    """
    polynomial: str
    dimension: int
    rows: List[LangWeilRow] = field(default_factory=list)
    bounded: bool = True
    slack: float = 1.5

    def to_dict(self) -> Dict[str, Any]:
        return {
            "polynomial": self.polynomial,
            "dimension": self.dimension,
            "rows": [
                {"l": row.l, "q": row.q, "count": row.count, "deviation": row.deviation}
                for row in self.rows
            ],
            "bounded": self.bounded,
            "slack": self.slack,
        }


def fraction_text(value: Fraction) -> str:
    """Render a Fraction as "n" or "n/d"."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
