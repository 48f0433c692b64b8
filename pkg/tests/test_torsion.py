import math
import random
from fractions import Fraction

import pytest

from tori.arith import coset_main_term, jordan_totient
from tori.errors import DomainError, InputError, ResourceLimitError
from tori.intlat import IntMatrix, lattice_index, successive_minima
from tori.torsion import (
    TorsionCoset,
    TorsionPoint,
    TorusSubgroup,
    count_coset_exact,
    count_points_of_exact_order,
    coset_order,
    coset_upper_bound,
    enumerate_points_of_order_dividing,
    monomial_map,
    point_order,
    points_of_exact_order,
    relation_lattice,
    solve_monomial_equations,
    subgroup_components,
)


def _coset(rep, relations, p=0):
    point = TorsionPoint.from_strings(rep, p)
    return TorsionCoset(point, TorusSubgroup.from_relations(point.ambient_dim, relations, p))


def _brute_force_count(coset, T):
    p = coset.characteristic
    return sum(
        1
        for N in range(1, T + 1)
        for point in points_of_exact_order(coset.ambient_dim, N, p)
        if coset.contains(point)
    )


def test_point_orders():
    assert point_order(TorsionPoint.from_strings(["1/2", "1/3"])) == 6
    assert point_order(TorsionPoint.identity(2)) == 1
    assert point_order(TorsionPoint.from_strings(["2/5"])) == 5


def test_point_coordinates_reduce_mod_one():
    point = TorsionPoint.from_strings(["5/4", "-1/3", 2])
    assert point.coords == (Fraction(1, 4), Fraction(2, 3), Fraction(0))
    assert point.to_json() == ["1/4", "2/3", "0/1"]
    assert (point * point.inverse()) == TorsionPoint.identity(3)


def test_point_rejects_order_divisible_by_characteristic():
    with pytest.raises(DomainError):
        TorsionPoint.from_strings(["1/2"], 2)
    assert TorsionPoint.from_strings(["1/3"], 2).order == 3


def test_point_rejects_malformed_exponent():
    with pytest.raises(InputError):
        TorsionPoint.from_strings(["a/b"])
    with pytest.raises(InputError):
        TorsionPoint.from_strings(["1/0"])


def test_monomial_map_examples():
    point = TorsionPoint.from_strings(["1/2", "1/3"])
    swap = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert monomial_map(point, swap).coords == (Fraction(1, 3), Fraction(1, 2))
    product = IntMatrix.from_rows([[1], [1]])
    assert monomial_map(point, product).coords == (Fraction(5, 6),)
    with pytest.raises(InputError):
        monomial_map(point, IntMatrix.identity(3))


def test_monomial_map_composes():
    rng = random.Random(11)
    for _ in range(20):
        point = TorsionPoint(tuple(Fraction(rng.randint(0, 11), 12) for _ in range(3)))
        A = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        B = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(2)] for _ in range(3)])
        assert monomial_map(monomial_map(point, A), B) == monomial_map(point, A @ B)


def test_relation_lattice_has_index_order():
    for texts in (["1/2", "1/3"], ["1/4", "1/6"], ["2/5", "3/5", "0"], ["0", "0"]):
        point = TorsionPoint.from_strings(texts)
        lattice = relation_lattice(point)
        assert lattice_index(lattice) == point.order
        for v in lattice.basis_vectors():
            assert point.character(v) == 0


def test_subgroup_components():
    assert subgroup_components(TorusSubgroup.from_relations(2, [(2, 0)], 3)) == 2
    assert subgroup_components(TorusSubgroup.from_relations(2, [(2, 3)])) == 1
    assert subgroup_components(TorusSubgroup.from_relations(2, [(2, 0)], 2)) == 1
    full = TorusSubgroup.full_torus(3)
    assert full.dimension == 3 and full.is_connected
    group = TorusSubgroup.from_relations(2, [(2, 0), (0, 3)])
    assert group.components == 6
    assert group.dimension == 0
    assert group.identity_component().components == 1


def test_subgroup_membership():
    group = TorusSubgroup.from_relations(2, [(2, 0)])
    assert group.contains(TorsionPoint.from_strings(["1/2", "1/7"]))
    assert not group.contains(TorsionPoint.from_strings(["1/3", "0"]))


def test_coset_order_example():
    coset = _coset(["1/3", "1/2"], [(1, 0)])
    assert coset_order(coset) == 3
    assert coset.dimension == 1


def test_coset_equality_ignores_representative():
    assert _coset(["1/2", "0"], [(1, 0)]) == _coset(["1/2", "1/7"], [(1, 0)])
    assert _coset(["1/2", "0"], [(1, 0)]) != _coset(["0", "0"], [(1, 0)])
    with pytest.raises(InputError):
        TorsionCoset(TorsionPoint.from_strings(["0"]), TorusSubgroup.full_torus(2))
    with pytest.raises(InputError):
        TorsionCoset(TorsionPoint.from_strings(["0"], 3), TorusSubgroup.full_torus(1))


def test_components_cover_the_coset():
    coset = _coset(["1/5", "0"], [(2, 0), (0, 3)])
    parts = coset.components()
    assert len(parts) == 6
    assert all(part.group.is_connected for part in parts)
    assert all(coset.contains(part.rep) for part in parts)
    assert len({part.rep for part in parts}) == 6
    assert coset.order_histogram() == {5: 1, 10: 1, 15: 2, 30: 2}


def test_component_cap():
    coset = _coset(["0", "0"], [(400, 0)])
    with pytest.raises(ResourceLimitError) as info:
        coset.reduced_components(max_components=100)
    assert info.value.cap == "max_components"


def test_count_full_torus():
    assert count_coset_exact(_coset(["0"], []), 6) == 12
    assert count_coset_exact(_coset(["0"], [], 2), 6) == 7
    assert count_coset_exact(_coset(["0"], []), 0) == 0


@pytest.mark.parametrize(
    "rep,relations,p",
    [
        (["0", "0"], [], 0),
        (["1/3", "0"], [(1, 0)], 0),
        (["1/2", "0"], [(2, 0)], 3),
        (["0", "0"], [(1, 1)], 0),
        (["1/4", "0"], [(1, -2)], 0),
        (["0", "0"], [(2, 0), (0, 2)], 0),
        (["0", "0"], [(1, 1)], 2),
        (["1/3", "0"], [(1, 0)], 5),
    ],
)
def test_count_matches_brute_force(rep, relations, p):
    coset = _coset(rep, relations, p)
    for T in (1, 5, 12):
        assert count_coset_exact(coset, T) == _brute_force_count(coset, T)


def test_coset_upper_bound_examples():
    assert coset_upper_bound(_coset(["0"], []), 6) == 36
    assert coset_upper_bound(_coset(["1/3", "0"], [(1, 0)]), 9) == 27
    coset = _coset(["1/5", "0"], [(2, 0), (0, 3)])
    assert count_coset_exact(coset, 30) <= coset_upper_bound(coset, 30)


def test_solve_monomial_examples():
    square = IntMatrix.from_rows([[2, 0], [0, 2]])
    assert len(solve_monomial_equations(square, TorsionPoint.identity(2))) == 4
    assert len(solve_monomial_equations(square, TorsionPoint.identity(2, 2))) == 1
    column = IntMatrix.from_rows([[2], [3]])
    solutions = solve_monomial_equations(column, TorsionPoint.identity(1))
    assert len(solutions) == 1
    assert solutions[0].dimension == 1


def test_solve_monomial_solutions_are_solutions():
    U = IntMatrix.from_rows([[2, 1], [0, 3], [1, 1]])
    target = TorsionPoint.from_strings(["1/4", "1/6"])
    solutions = solve_monomial_equations(U, target)
    assert solutions
    for coset in solutions:
        assert monomial_map(coset.rep, U) == target
    assert [c.rep.coords for c in solutions] == sorted(c.rep.coords for c in solutions)


def test_solve_monomial_inconsistent_and_shape():
    zero = IntMatrix.zeros(1, 1)
    assert solve_monomial_equations(zero, TorsionPoint.from_strings(["1/2"])) == []
    with pytest.raises(InputError):
        solve_monomial_equations(IntMatrix.identity(2), TorsionPoint.identity(3))


def test_exact_order_counts():
    assert count_points_of_exact_order(2, 6) == 24 == jordan_totient(2, 6)
    assert count_points_of_exact_order(1, 4, 2) == 0
    assert len(list(points_of_exact_order(2, 6))) == 24
    assert list(points_of_exact_order(1, 4, 2)) == []
    assert len(list(enumerate_points_of_order_dividing(1, 6, 2))) == 3
    with pytest.raises(DomainError):
        count_points_of_exact_order(1, 0)


def _main_term_error(p, d, g, T):
    coset = _coset([f"1/{g}"] + ["0"] * d, [(1,) + (0,) * d], p)
    assert coset_order(coset) == g and coset.dimension == d
    return abs(count_coset_exact(coset, T) / coset_main_term(p, d, g, T) - 1)


_MAIN_TERM_CASES = [(p, g) for p in (0, 2, 3, 5) for g in (1, 3, 5) if p == 0 or g % p]


@pytest.mark.parametrize("p,g", _MAIN_TERM_CASES)
@pytest.mark.parametrize("d,T,tolerance", [(1, 1000, 0.05), (2, 200, 0.1)])
def test_coset_count_approaches_main_term(p, g, d, T, tolerance):
    assert _main_term_error(p, d, g, T) < tolerance
    assert _main_term_error(p, d, g, T) < _main_term_error(p, d, g, T // 10)


@pytest.mark.slow
@pytest.mark.parametrize("p,g", _MAIN_TERM_CASES)
@pytest.mark.parametrize("d,T", [(1, 10 ** 4), (2, 500)])
def test_coset_count_main_term_at_scale(p, g, d, T):
    error = _main_term_error(p, d, g, T)
    assert error < 0.05
    assert error < _main_term_error(p, d, g, T // 10)


@pytest.fixture
def rng():
    return random.Random(31337)


def _random_point(rng, n, max_order, p=0):
    while True:
        N = rng.randint(1, max_order)
        if p == 0 or N % p:
            return TorsionPoint(tuple(Fraction(rng.randrange(N), N) for _ in range(n)), p)


def _check_relation_lattices(rng, count, max_dim, max_order):
    for _ in range(count):
        point = _random_point(rng, rng.randint(1, max_dim), max_order)
        lattice = relation_lattice(point)
        assert lattice_index(lattice) == point.order
        assert successive_minima(lattice).product <= point.order


def test_relation_lattice_index_and_minima_on_random_points(rng):
    _check_relation_lattices(rng, 100, 3, 500)


@pytest.mark.slow
def test_relation_lattice_index_and_minima_at_scale(rng):
    _check_relation_lattices(rng, 1000, 4, 10 ** 4)


def _scaled_unimodular_rows(rng, n, factors):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return [tuple(alpha * a for a in row) for alpha, row in zip(factors, rows)]


def _check_random_components(rng, count, max_dim):
    for _ in range(count):
        n = rng.randint(1, max_dim)
        r = rng.randint(0, n)
        p = rng.choice([0, 5, 7])
        factors = [rng.choice([1, 2, 3, 4, 6]) for _ in range(r)]
        group = TorusSubgroup.from_relations(n, _scaled_unimodular_rows(rng, n, factors), p)
        expected = math.prod(factors)
        assert group.dimension == n - r
        assert subgroup_components(group) == expected
        # H[M] has M^d * [Λ~:Λ] points once every factor divides M
        M = math.lcm(1, *factors)
        members = sum(1 for point in enumerate_points_of_order_dividing(n, M, p) if group.contains(point))
        assert members == M ** group.dimension * expected


def test_components_match_brute_force_on_random_lattices(rng):
    _check_random_components(rng, 30, 3)


@pytest.mark.slow
def test_components_match_brute_force_at_scale(rng):
    _check_random_components(rng, 200, 4)


def _random_coset(rng, n):
    p = rng.choice([0, 2, 3])
    relations = []
    for _ in range(rng.randint(0, n)):
        row = tuple(rng.randint(-3, 3) for _ in range(n))
        if any(row):
            relations.append(row)
    denominators = [q for q in range(1, 7) if p == 0 or q % p]
    rep = [f"{rng.randrange(q)}/{q}" for q in (rng.choice(denominators) for _ in range(n))]
    return _coset(rep, relations, p)


def _check_counts_against_brute_force(coset, T_max):
    p = coset.characteristic
    running = 0
    for T in range(1, T_max + 1):
        running += sum(1 for point in points_of_exact_order(coset.ambient_dim, T, p) if coset.contains(point))
        assert count_coset_exact(coset, T) == running


def test_random_coset_counts_match_brute_force(rng):
    for _ in range(10):
        _check_counts_against_brute_force(_random_coset(rng, rng.randint(1, 2)), 30)


@pytest.mark.slow
def test_random_coset_counts_match_brute_force_at_scale(rng):
    for _ in range(30):
        _check_counts_against_brute_force(_random_coset(rng, rng.randint(1, 2)), 60)
    for _ in range(2):
        _check_counts_against_brute_force(_random_coset(rng, 3), 40)


def _check_exact_order_counts(dims, N_max, characteristics):
    for d in dims:
        for p in characteristics:
            for N in range(1, N_max + 1):
                expected = 0 if p and N % p == 0 else jordan_totient(d, N)
                assert count_points_of_exact_order(d, N, p) == expected
                assert sum(1 for _ in points_of_exact_order(d, N, p)) == expected
            for M in range(1, N_max + 1):
                dividing = sum(count_points_of_exact_order(d, N, p) for N in range(1, M + 1) if M % N == 0)
                assert dividing == sum(1 for _ in enumerate_points_of_order_dividing(d, M, p))


def test_exact_order_counts_up_to_fifty():
    _check_exact_order_counts((1, 2), 50, (0, 2, 3))
    _check_exact_order_counts((3,), 12, (0, 2))


@pytest.mark.slow
def test_exact_order_counts_in_dimension_three():
    _check_exact_order_counts((3,), 50, (0, 3))
