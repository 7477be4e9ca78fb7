import itertools
from fractions import Fraction

import pytest

from algebra.exact_arith import (IntMatrix, add_phases, dual_lattice, element_order, hermite_normal_form,
                                 lattice_index, negate_phase, parse_rational, phase_kernel, phase_vector,
                                 smith_normal_form, subgroup_generated, to_phase)
from errors import CapExceeded, InfiniteKernel, NotInGroup, ParseError

F = Fraction


def brute_force_kernel_order(rows, n, modulus):
    count = 0
    for theta in itertools.product(range(modulus), repeat=n):
        if all(sum(m * a for m, a in zip(row, theta)) % modulus == 0 for row in rows):
            count += 1
    return count


def assert_smith(M: IntMatrix):
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert abs(snf.U.determinant()) == 1
    assert abs(snf.V.determinant()) == 1
    diagonal = snf.diagonal
    assert all(d > 0 for d in diagonal)
    assert all(diagonal[k + 1] % diagonal[k] == 0 for k in range(len(diagonal) - 1))
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j or i >= snf.rank:
                assert snf.D[i, j] == 0
    return snf


def test_phase_helpers():
    assert to_phase(F(-1, 3)) == F(2, 3)
    assert to_phase(F(7, 3)) == F(1, 3)
    assert phase_vector([1, F(5, 4)]) == (F(0), F(1, 4))
    assert add_phases((F(2, 3),), (F(2, 3),)) == (F(1, 3),)
    assert negate_phase((F(0), F(1, 4))) == (F(0), F(3, 4))
    assert element_order((F(1, 2), F(1, 3))) == 6
    assert element_order((F(0), F(0))) == 1


@pytest.mark.parametrize("text, expected", [("1/3", F(1, 3)), ("-2", F(-2)), (" 4 / 6 ", F(2, 3)), (5, F(5))])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", 0.5, "1/0", "abc", "1e3", True])
def test_parse_rational_refuses_inexact(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_determinant_and_unimodular_inverse():
    M = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert M.determinant() == -2
    U = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert U @ U.inverse_unimodular() == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        M.inverse_unimodular()


def test_smith_small_example():
    snf = assert_smith(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert snf.diagonal == (2, 4)


def test_smith_zero_and_rectangular():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).rank == 0
    snf = assert_smith(IntMatrix.from_rows([[2, 0, 0], [0, 3, 0]]))
    assert snf.diagonal == (1, 6)


def test_smith_random_matrices(rng):
    for _ in range(50):
        rows = [[int(x) for x in row] for row in rng.integers(-10, 11, size=(4, 4))]
        M = IntMatrix.from_rows(rows)
        snf = assert_smith(M)
        det = M.determinant()
        if det != 0:
            assert snf.rank == 4
            assert phase_kernel(M).order == abs(det)


def test_hermite_normal_form():
    assert hermite_normal_form([[2, 4], [6, 8]]) == [(2, 0), (0, 4)]
    basis = hermite_normal_form([[3, 3], [0, 3], [6, 0]])
    assert lattice_index(basis) == 9
    for k, row in enumerate(basis):
        pivot = next(j for j, x in enumerate(row) if x)
        assert row[pivot] > 0
        for above in basis[:k]:
            assert 0 <= above[pivot] < row[pivot]


def test_phase_kernel_cyclic():
    G = phase_kernel(IntMatrix.from_rows([[3]]))
    assert G.order == 3
    assert G.invariant_factors == (3,)
    assert list(G.elements()) == [(F(0),), (F(1, 3),), (F(2, 3),)]


def test_phase_kernel_fermat():
    G = phase_kernel(IntMatrix.from_rows([[3, 0], [0, 3]]))
    assert G.invariant_factors == (3, 3)
    assert G.order == 9
    assert G.exponent == 3


def test_phase_kernel_infinite():
    M = IntMatrix.from_rows([[1, 1]])
    with pytest.raises(InfiniteKernel) as info:
        phase_kernel(M)
    witness = info.value.witness
    assert any(witness)
    assert sum(m * w for m, w in zip(M.row(0), witness)) == 0


def test_phase_kernel_matches_brute_force(rng):
    checked = 0
    while checked < 20:
        rows = [[int(x) for x in row] for row in rng.integers(-4, 5, size=(2, 2))]
        det = IntMatrix.from_rows(rows).determinant()
        if det == 0:
            continue
        G = phase_kernel(IntMatrix.from_rows(rows))
        assert G.order == brute_force_kernel_order(rows, 2, abs(det))
        checked += 1


def test_coordinates_round_trip_and_membership():
    G = phase_kernel(IntMatrix.from_rows([[2, 1], [1, 2]]))
    elements = list(G.elements())
    assert len(elements) == G.order == 3
    for theta in elements:
        assert G.contains(theta)
        assert G.element(G.coordinates(theta)) == theta
    assert not G.contains((F(1, 3), F(0)))
    with pytest.raises(NotInGroup):
        G.coordinates((F(1, 3), F(0)))


def test_group_operations():
    G = phase_kernel(IntMatrix.from_rows([[3, 0], [0, 3]]))
    a, b = (F(1, 3), F(0)), (F(2, 3), F(1, 3))
    assert G.add(a, b) == (F(0), F(1, 3))
    assert G.add(a, G.inverse(a)) == G.identity
    with pytest.raises(NotInGroup):
        G.inverse((F(1, 2), F(0)))


def test_elements_respects_cap():
    G = phase_kernel(IntMatrix.from_rows([[5, 0], [0, 5]]))
    with pytest.raises(CapExceeded):
        G.elements(cap=10)


def test_subgroup_generated():
    H = subgroup_generated([(F(1, 3), F(1, 3))], 2)
    assert H.order == 3
    assert H.contains((F(2, 3), F(2, 3)))
    assert not H.contains((F(1, 3), F(0)))
    G = phase_kernel(IntMatrix.from_rows([[3, 0], [0, 3]]))
    assert H.is_subgroup_of(G) == (True, None)
    inside, witness = G.is_subgroup_of(H)
    assert not inside and witness is not None and not H.contains(witness)
    assert subgroup_generated([], 2).order == 1


def test_dual_lattice_index_equals_order():
    for rows in ([[3, 0], [0, 3]], [[2, 1], [1, 2]], [[4, 2], [0, 6]]):
        G = phase_kernel(IntMatrix.from_rows(rows))
        basis = dual_lattice(G)
        assert lattice_index(basis) == G.order
        for c in basis:
            for g in G.generators:
                assert sum(x * q for x, q in zip(c, g)).denominator == 1


def random_nonsingular(rng, size, bound=3):
    while True:
        rows = [[int(x) for x in row] for row in rng.integers(-bound, bound + 1, size=(size, size))]
        if IntMatrix.from_rows(rows).determinant():
            return rows


@pytest.mark.parametrize("size", [1, 2, 3])
def test_element_order_divides_group_order(rng, size):
    for _ in range(10):
        G = phase_kernel(IntMatrix.from_rows(random_nonsingular(rng, size)))
        for theta in G.elements():
            assert G.order % element_order(theta) == 0
            assert G.exponent % element_order(theta) == 0


@pytest.mark.parametrize("size", [2, 3])
def test_dual_lattice_contains_row_span(rng, size):
    for _ in range(10):
        rows = random_nonsingular(rng, size)
        basis = dual_lattice(phase_kernel(IntMatrix.from_rows(rows)))
        reference = hermite_normal_form(basis)
        for m in rows:
            assert hermite_normal_form(list(basis) + [m]) == reference
        mix = [int(c) for c in rng.integers(-5, 6, size=size)]
        combo = [sum(c * row[j] for c, row in zip(mix, rows)) for j in range(size)]
        assert hermite_normal_form(list(basis) + [combo]) == reference


def test_product_group():
    A = phase_kernel(IntMatrix.from_rows([[3]]))
    B = phase_kernel(IntMatrix.from_rows([[2]]))
    P = A.product(B)
    assert P.order == 6
    assert P.contains((F(1, 3), F(1, 2)))
    assert P.ambient_dim == 2
