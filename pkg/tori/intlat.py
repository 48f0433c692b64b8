"""
Exact integer linear algebra for ToriCount.

Integer matrices, Smith normal form with tracked unimodular inverses, minor
gcds, lattices in Z^n (saturation, p-saturation, index, membership, kernel)
and exact successive minima in the sup norm.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from tori.errors import DomainError, InputError, ResourceLimitError

logger = logging.getLogger(__name__)

DEFAULT_MINIMA_DIM_CAP = 6
DEFAULT_MINIMA_VECTOR_BUDGET = 5_000_000

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    Integer matrix stored row-major.

    Attributes:
        nrows: Number of rows
        ncols: Number of columns (may be 0)
        entries: nrows * ncols integers, row-major
    """
    nrows: int
    ncols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0 or len(self.entries) != self.nrows * self.ncols:
            raise InputError(f"{len(self.entries)} entries do not fit a {self.nrows}x{self.ncols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
        rows = [tuple(int(a) for a in row) for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise InputError("matrix rows have different lengths")
        return cls(len(rows), ncols, tuple(a for row in rows for a in row))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Sequence[int]]) -> IntMatrix:
        columns = [tuple(int(a) for a in col) for col in columns]
        if any(len(col) != nrows for col in columns):
            raise InputError(f"columns must have length {nrows}")
        return cls(nrows, len(columns), tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.ncols + j] for i in range(self.nrows))

    def rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns(self.ncols, self.rows()) if self.nrows else IntMatrix(self.ncols, 0, ())

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        cols = other.columns()
        entries = tuple(
            sum(a * b for a, b in zip(self.row(i), col))
            for i in range(self.nrows)
            for col in cols
        )
        return IntMatrix(self.nrows, other.ncols, entries)

    def apply(self, v: Sequence[int]) -> Vector:
        """Return the matrix-vector product self * v."""
        if len(v) != self.ncols:
            raise InputError(f"vector of length {len(v)} does not match {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.nrows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def determinant(self) -> int:
        """Return the determinant of a square matrix."""
        if self.nrows != self.ncols:
            raise DomainError(f"determinant of a non-square {self.nrows}x{self.ncols} matrix")
        return _det(self.rows())

    def rank(self) -> int:
        return sum(1 for alpha in smith_normal_form(self).invariant_factors if alpha)

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.determinant()) == 1

    def to_list(self) -> List[List[int]]:
        return self.rows()


def _det(rows: List[List[int]]) -> int:
    if not rows:
        return 1
    if len(rows) == 1:
        return rows[0][0]
    return int(DomainMatrix.from_list(rows, ZZ).det())


@dataclass(frozen=True)
class SmithDecomposition:
    """
    Smith normal form A = U * D * V.

    Attributes:
        U: n x n unimodular left factor
        D: n x m diagonal matrix with nonnegative entries
        V: m x m unimodular right factor
        U_inv: Exact inverse of U
        V_inv: Exact inverse of V
        invariant_factors: Diagonal of D, each dividing the next
    """
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    invariant_factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for alpha in self.invariant_factors if alpha)


class _Reducer:
    """Mutable working state for the Smith reduction L * A * R = D."""

    def __init__(self, A: IntMatrix):
        self.n, self.m = A.nrows, A.ncols
        self.a = A.rows()
        self.left = IntMatrix.identity(self.n).rows()       # L
        self.left_inv = IntMatrix.identity(self.n).rows()   # U = L^-1
        self.right = IntMatrix.identity(self.m).rows()      # R
        self.right_inv = IntMatrix.identity(self.m).rows()  # V = R^-1

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.left):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.left_inv:
            row[i], row[j] = row[j], row[i]

    def add_row(self, i: int, j: int, c: int) -> None:
        """row_i += c * row_j."""
        for mat in (self.a, self.left):
            mat[i] = [x + c * y for x, y in zip(mat[i], mat[j])]
        for row in self.left_inv:
            row[j] -= c * row[i]

    def negate_row(self, i: int) -> None:
        for mat in (self.a, self.left):
            mat[i] = [-x for x in mat[i]]
        for row in self.left_inv:
            row[i] = -row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.right):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.right_inv[i], self.right_inv[j] = self.right_inv[j], self.right_inv[i]

    def add_col(self, i: int, j: int, c: int) -> None:
        """col_i += c * col_j."""
        for mat in (self.a, self.right):
            for row in mat:
                row[i] += c * row[j]
        self.right_inv[j] = [x - c * y for x, y in zip(self.right_inv[j], self.right_inv[i])]

    def pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.n):
            for j in range(t, self.m):
                value = abs(self.a[i][j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else (best[1], best[2])

    def reduce(self) -> None:
        a = self.a
        for t in range(min(self.n, self.m)):
            while True:
                position = self.pivot(t)
                if position is None:
                    return
                self.swap_rows(t, position[0])
                self.swap_cols(t, position[1])
                pivot = a[t][t]
                clean = True
                for i in range(t + 1, self.n):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // pivot))
                        clean = clean and a[i][t] == 0
                for j in range(t + 1, self.m):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // pivot))
                        clean = clean and a[t][j] == 0
                if not clean:
                    continue
                offender = next(
                    (i for i in range(t + 1, self.n) for j in range(t + 1, self.m) if a[i][j] % pivot),
                    None,
                )
                if offender is None:
                    break
                self.add_row(t, offender, 1)
            if a[t][t] < 0:
                self.negate_row(t)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """
    Compute the Smith normal form A = U * D * V.

    The reduction always moves the entry of least absolute value to the pivot
    (first in row-major order on ties), so the factors are deterministic.

    Args:
        A: Integer matrix (may have zero rows or columns)

    Returns:
        SmithDecomposition with exact inverses of both unimodular factors
    """
    reducer = _Reducer(A)
    reducer.reduce()
    D = IntMatrix.from_rows(reducer.a, A.ncols)
    factors = tuple(D[i, i] for i in range(min(A.nrows, A.ncols)))
    return SmithDecomposition(
        U=IntMatrix.from_rows(reducer.left_inv, A.nrows),
        D=D,
        V=IntMatrix.from_rows(reducer.right_inv, A.ncols),
        U_inv=IntMatrix.from_rows(reducer.left, A.nrows),
        V_inv=IntMatrix.from_rows(reducer.right, A.ncols),
        invariant_factors=factors,
    )


def minor_gcd(A: IntMatrix, k: int) -> int:
    """
    Return d_k(A), the gcd of all k x k minors of A.

    Raises:
        DomainError: If k is not in 1..min(rows, cols)
    """
    if not 1 <= k <= min(A.nrows, A.ncols):
        raise DomainError(f"minor size {k} out of range for a {A.nrows}x{A.ncols} matrix")
    if k == 1:
        return reduce(math.gcd, A.entries, 0)
    rows = A.rows()
    g = 0
    for row_set in itertools.combinations(range(A.nrows), k):
        for col_set in itertools.combinations(range(A.ncols), k):
            g = math.gcd(g, _det([[rows[i][j] for j in col_set] for i in row_set]))
            if g == 1:
                return 1
    return g


def cauchy_binet_expansion(A: IntMatrix, B: IntMatrix) -> int:
    """Return sum over k-subsets I of det(A[:, I]) * det(B[I, :]) for A (k x m), B (m x k)."""
    if A.ncols != B.nrows or A.nrows != B.ncols:
        raise InputError("Cauchy-Binet needs a k x m and an m x k matrix")
    k = A.nrows
    return sum(
        A.submatrix(range(k), subset).determinant() * B.submatrix(subset, range(k)).determinant()
        for subset in itertools.combinations(range(A.ncols), k)
    )


def sup_norm(v: Sequence[int]) -> int:
    return max((abs(a) for a in v), default=0)


def primitive_part(v: Sequence[int]) -> Vector:
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = reduce(math.gcd, v, 0)
    if g == 0:
        raise DomainError("the zero vector has no primitive part")
    return tuple(a // g for a in v)


def _remove_prime(value: int, p: int) -> int:
    while value and value % p == 0:
        value //= p
    return value


@dataclass(frozen=True, eq=False)
class IntegerLattice:
    """
    Subgroup of Z^n in elementary-divisor form.

    The lattice is spanned by divisors[i] * frame[:, i] for i < rank, where
    frame is unimodular. Equality is equality of subgroups.

    Attributes:
        ambient_dim: n
        frame: n x n unimodular matrix
        frame_inv: Its exact inverse
        divisors: Elementary divisors (positive), one per basis vector
    """
    ambient_dim: int
    frame: IntMatrix
    frame_inv: IntMatrix
    divisors: Tuple[int, ...]

    @classmethod
    def from_generators(cls, n: int, generators) -> IntegerLattice:
        """
        Build the lattice spanned by ``generators``.

        Args:
            n: Ambient dimension
            generators: IntMatrix whose columns generate, or a sequence of vectors
        """
        if isinstance(generators, IntMatrix):
            G = generators
        else:
            G = IntMatrix.from_columns(n, list(generators))
        if G.nrows != n:
            raise InputError(f"generators live in Z^{G.nrows}, expected Z^{n}")
        snf = smith_normal_form(G)
        divisors = tuple(alpha for alpha in snf.invariant_factors if alpha)
        return cls(n, snf.U, snf.U_inv, divisors)

    @classmethod
    def zero(cls, n: int) -> IntegerLattice:
        return cls(n, IntMatrix.identity(n), IntMatrix.identity(n), ())

    @classmethod
    def standard(cls, n: int) -> IntegerLattice:
        return cls(n, IntMatrix.identity(n), IntMatrix.identity(n), (1,) * n)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def basis(self) -> IntMatrix:
        """n x rank matrix whose columns form a basis."""
        return IntMatrix.from_columns(
            self.ambient_dim,
            [tuple(alpha * x for x in self.frame.column(i)) for i, alpha in enumerate(self.divisors)],
        )

    def basis_vectors(self) -> List[Vector]:
        return self.basis.columns()

    def coordinates(self, v: Sequence[int]) -> Vector:
        return self.frame_inv.apply(tuple(v))

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_dim:
            return False
        w = self.coordinates(v)
        r = self.rank
        return all(w[i] % self.divisors[i] == 0 for i in range(r)) and all(x == 0 for x in w[r:])

    def coset_key(self, v: Sequence[int]) -> Vector:
        """Return a canonical key of v + Λ in Z^n / Λ."""
        w = self.coordinates(v)
        return tuple(w[i] % self.divisors[i] for i in range(self.rank)) + tuple(w[self.rank:])

    def contains_lattice(self, other: IntegerLattice) -> bool:
        return all(v in self for v in other.basis_vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.divisors == other.divisors
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.divisors))

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "rank": self.rank, "basis": self.basis.to_list()}


def saturation(lattice: IntegerLattice) -> IntegerLattice:
    """Return the saturation {v : k v in Λ for some k >= 1}."""
    return IntegerLattice(lattice.ambient_dim, lattice.frame, lattice.frame_inv, (1,) * lattice.rank)


def p_saturation(lattice: IntegerLattice, p: int) -> IntegerLattice:
    """
    Return the p-saturation {v : p^k v in Λ for some k >= 0}.

    For p = 0 the lattice is returned unchanged.
    """
    if p == 0:
        return lattice
    if p < 2:
        raise DomainError(f"p-saturation needs a prime, got {p}")
    divisors = tuple(_remove_prime(alpha, p) for alpha in lattice.divisors)
    return IntegerLattice(lattice.ambient_dim, lattice.frame, lattice.frame_inv, divisors)


def is_p_full(lattice: IntegerLattice, p: int) -> bool:
    return p == 0 or all(alpha % p for alpha in lattice.divisors)


def lattice_index(lattice: IntegerLattice) -> int:
    """
    Return [Z^n : Λ] for a full-rank lattice.

    Raises:
        DomainError: If the lattice is not of full rank
    """
    if lattice.rank < lattice.ambient_dim:
        raise DomainError(f"index of a rank-{lattice.rank} lattice in Z^{lattice.ambient_dim} is infinite")
    return math.prod(lattice.divisors)


def basis_extension(lattice: IntegerLattice) -> Tuple[IntMatrix, Tuple[int, ...]]:
    """
    Return (B, divisors) with B unimodular and divisors[i] * B[:, i] a basis of Λ.
    """
    return lattice.frame, lattice.divisors


def kernel_basis(A: IntMatrix) -> IntegerLattice:
    """Return the (saturated) lattice {v in Z^m : A v = 0}."""
    snf = smith_normal_form(A)
    r = snf.rank
    columns = [snf.V_inv.column(j) for j in range(r, A.ncols)]
    if not columns:
        return IntegerLattice.zero(A.ncols)
    return IntegerLattice.from_generators(A.ncols, columns)


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return IntMatrix.from_columns(len(vectors[0]), vectors).rank()


@dataclass(frozen=True)
class SuccessiveMinima:
    """
    Successive minima of a full-rank lattice in the sup norm.

    Attributes:
        minima: λ_1 <= ... <= λ_n
        witnesses: Linearly independent lattice vectors with |w_i| = λ_i
        nodes: Number of search nodes visited
    """
    minima: Tuple[int, ...]
    witnesses: Tuple[Vector, ...]
    nodes: int

    @property
    def product(self) -> int:
        return math.prod(self.minima)


class _MinimaSearch:
    """
    Branch-and-bound search for short lattice vectors outside a subspace.

    Coordinates are fixed one at a time along a lower-triangular basis, so
    every coordinate ranges over an arithmetic progression given the earlier
    ones. A branch is cut once no completion can leave the span of the
    vectors found so far.
    """

    def __init__(self, lattice: IntegerLattice, budget: int):
        self.n = lattice.ambient_dim
        self.lattice = lattice
        self.budget = budget
        self.nodes = 0
        self._bases = {}

    def _triangular(self, order: Tuple[int, ...]) -> List[List[int]]:
        """Basis columns b_j (in permuted coordinates) with b_j[i] = 0 for i < j and b_j[j] > 0."""
        if order in self._bases:
            return self._bases[order]
        cols = [[v[c] for c in order] for v in self.lattice.basis_vectors()]
        n = self.n
        for j in range(n):
            # Euclid on entry j among columns j..n-1
            while True:
                live = [k for k in range(j, n) if cols[k][j]]
                if len(live) <= 1:
                    break
                live.sort(key=lambda k: abs(cols[k][j]))
                pivot = live[0]
                for k in live[1:]:
                    q = cols[k][j] // cols[pivot][j]
                    cols[k] = [x - q * y for x, y in zip(cols[k], cols[pivot])]
            k = next(k for k in range(j, n) if cols[k][j])
            cols[j], cols[k] = cols[k], cols[j]
            if cols[j][j] < 0:
                cols[j] = [-x for x in cols[j]]
        self._bases[order] = cols
        return cols

    def _annihilator(self, found: List[Vector]) -> List[Tuple[Vector, int]]:
        """Integer functionals vanishing on ``found`` with the gcd of their values on Λ."""
        if found:
            ann = kernel_basis(IntMatrix.from_rows(found, self.n)).basis_vectors()
        else:
            ann = [tuple(1 if i == j else 0 for i in range(self.n)) for j in range(self.n)]
        out = []
        for ell in ann:
            step = reduce(math.gcd, (sum(a * b for a, b in zip(ell, v)) for v in self.lattice.basis_vectors()), 0)
            out.append((ell, step))
        return out

    def find(self, k: int, found: List[Vector], order: Tuple[int, ...]) -> Optional[Vector]:
        """
        Return the first vector v of Λ (in the given coordinate order, values
        ascending) with |v| <= k outside span(found), or None.
        """
        n = self.n
        basis = self._triangular(order)
        functionals = [
            ([ell[c] for c in order], step) for ell, step in self._annihilator(found)
        ]
        # tail[t][j] = sum_{i >= j} |ell_t[i]|
        tails = []
        for ell, _ in functionals:
            tail = [0] * (n + 1)
            for j in range(n - 1, -1, -1):
                tail[j] = tail[j + 1] + abs(ell[j])
            tails.append(tail)

        def prunable(depth: int, values: List[int]) -> bool:
            for (ell, step), tail, value in zip(functionals, tails, values):
                if abs(value) + k * tail[depth] >= step:
                    return False
            return True

        acc = [0] * n
        point = [0] * n

        def descend(depth: int, values: List[int]) -> Optional[List[int]]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise ResourceLimitError(
                    "successive minima search exhausted its vector budget",
                    cap="minima_vector_budget",
                    limit=self.budget,
                )
            if prunable(depth, values):
                return None
            if depth == n:
                return list(point) if any(values) else None
            h = basis[depth][depth]
            offset = acc[depth]
            first = offset + (-k - offset + h - 1) // h * h
            saved = list(acc)
            for x in range(first, k + 1, h):
                z = (x - offset) // h
                for i in range(depth, n):
                    acc[i] = saved[i] + z * basis[depth][i]
                point[depth] = x
                new_values = [value + ell[depth] * x for (ell, _), value in zip(functionals, values)]
                result = descend(depth + 1, new_values)
                if result is not None:
                    return result
            acc[:] = saved
            return None

        result = descend(0, [0] * len(functionals))
        if result is None:
            return None
        vector = [0] * n
        for position, c in enumerate(order):
            vector[c] = result[position]
        return tuple(vector)


def successive_minima(
    lattice: IntegerLattice,
    dim_cap: int = DEFAULT_MINIMA_DIM_CAP,
    vector_budget: int = DEFAULT_MINIMA_VECTOR_BUDGET,
) -> SuccessiveMinima:
    """
    Compute the successive minima of a full-rank lattice in the sup norm.

    λ_i is the least k such that Λ ∩ [-k, k]^n contains i independent vectors.
    Each λ_i is located by galloping and bisection on k; the witness is the
    lexicographically smallest vector of norm λ_i outside the span of the
    earlier witnesses.

    Raises:
        DomainError: If the lattice is not of full rank
        ResourceLimitError: If n exceeds dim_cap or the search exceeds vector_budget
    """
    n = lattice.ambient_dim
    if n > dim_cap:
        raise ResourceLimitError(f"successive minima in dimension {n}", cap="minima_dim_cap", limit=dim_cap)
    index = lattice_index(lattice)
    search = _MinimaSearch(lattice, vector_budget)
    natural = tuple(range(n))
    steps = [reduce(math.gcd, (v[c] for v in lattice.basis_vectors()), 0) for c in range(n)]
    fast_order = tuple(sorted(range(n), key=lambda c: (-steps[c], c)))

    minima: List[int] = []
    witnesses: List[Vector] = []
    for _ in range(n):
        low = minima[-1] if minima else 1
        if search.find(low, witnesses, fast_order) is not None:
            k = low
        else:
            high = low
            while True:
                high = min(high * 2, index)
                if high == index or search.find(high, witnesses, fast_order) is not None:
                    break
                low = high
            while high - low > 1:
                mid = (low + high) // 2
                if search.find(mid, witnesses, fast_order) is not None:
                    high = mid
                else:
                    low = mid
            k = high
        witness = search.find(k, witnesses, natural)
        minima.append(k)
        witnesses.append(witness)
    logger.debug(f"Successive minima {minima} found after {search.nodes} search nodes")
    return SuccessiveMinima(tuple(minima), tuple(witnesses), search.nodes)
