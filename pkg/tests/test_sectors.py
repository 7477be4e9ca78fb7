import itertools
from fractions import Fraction

import pytest

from algebra.chow import FreeCaseInput, free_case_class
from errors import BroadSector, CapExceeded, GenusNotZero, NonIntegral, NotInGroup
from lg.lg_space import build_lg_space
from lg.polynomial import parse_polynomial
from lg.sectors import (enumerate_admissible, euler_characteristics, genus_zero_ranks, is_admissible, is_concave,
                        is_narrow, line_bundle_degrees, sector_of, sector_tuple, virtual_dimension)

F = Fraction
THIRD, TWO_THIRDS = F(1, 3), F(2, 3)


def test_sector_of(a2_space):
    s = sector_of((TWO_THIRDS,), a2_space)
    assert s.r == 3
    assert s.narrow
    assert not is_narrow(sector_of((F(0),), a2_space))
    with pytest.raises(NotInGroup):
        sector_of((F(1, 2),), a2_space)


def test_narrowness_is_coordinatewise(fermat_space):
    assert not is_narrow(sector_of((THIRD, F(0)), fermat_space))
    assert is_narrow(sector_of((THIRD, TWO_THIRDS), fermat_space))


def test_line_bundle_degrees(a2_space):
    assert line_bundle_degrees(0, 3, a2_space) == (THIRD,)
    assert line_bundle_degrees(0, 1, a2_space) == (-THIRD,)
    assert line_bundle_degrees(1, 1, a2_space) == (THIRD,)


def test_three_point_narrow_sectors(a2_space):
    tuples = enumerate_admissible(a2_space, 0, 3, narrow_only=True)
    found = sorted(tuple(theta[0] for theta in tup.phases) for tup in tuples)
    assert found == sorted(set(itertools.permutations((THIRD, THIRD, TWO_THIRDS))))
    for tup in tuples:
        assert virtual_dimension(0, tup) == 0
        assert euler_characteristics(0, tup) == (0,)
        assert genus_zero_ranks(tup) == ((0,), (0,))
    inp = FreeCaseInput.from_space(a2_space, [0], [0], numeric=True)
    assert free_case_class(inp) == 1


def test_all_three_point_tuples(a2_space):
    assert len(enumerate_admissible(a2_space, 0, 3)) == 9


def test_one_point_tuple(a2_space):
    tuples = enumerate_admissible(a2_space, 0, 1, narrow_only=True)
    assert [tup.phases for tup in tuples] == [[(TWO_THIRDS,)]]


def test_empty_tuple(a2_space):
    assert enumerate_admissible(a2_space, 0, 0) == []
    tuples = enumerate_admissible(a2_space, 1, 0)
    assert len(tuples) == 1 and tuples[0].length == 0


def test_four_point_concave_sector(a2_space):
    tup = sector_tuple(a2_space, 0, [(TWO_THIRDS,)] * 4)
    assert is_admissible(0, tup)
    assert euler_characteristics(0, tup) == (-1,)
    assert genus_zero_ranks(tup) == ((0,), (1,))
    assert is_concave(tup)
    assert virtual_dimension(0, tup) == 0
    ranks, coranks = genus_zero_ranks(tup)
    assert free_case_class(FreeCaseInput.from_space(a2_space, ranks, coranks)).format() == "c1(G1)"


def test_inadmissible_tuple(a2_space):
    tup = sector_tuple(a2_space, 0, [(THIRD,)] * 3)
    assert not is_admissible(0, tup)
    with pytest.raises(NonIntegral):
        euler_characteristics(0, tup)
    with pytest.raises(NonIntegral):
        virtual_dimension(0, tup)


def test_genus_zero_ranks_requires_genus_zero(a2_space):
    tup = sector_tuple(a2_space, 1, [(THIRD,)])
    assert is_admissible(1, tup)
    with pytest.raises(GenusNotZero):
        genus_zero_ranks(tup)


def test_genus_zero_ranks_rejects_broad_tuples(a2_space):
    tup = sector_tuple(a2_space, 0, [(F(0),), (TWO_THIRDS,), (TWO_THIRDS,)])
    assert is_admissible(0, tup)
    with pytest.raises(BroadSector):
        genus_zero_ranks(tup)


@pytest.mark.parametrize("length, narrow", [(3, True), (3, False), (4, True), (4, False), (5, True)])
def test_virtual_dimension_identity(a2_space, length, narrow):
    for tup in enumerate_admissible(a2_space, 0, length, narrow_only=narrow):
        assert virtual_dimension(0, tup) == (3 * 0 - 3 + length) + sum(euler_characteristics(0, tup))


def test_enumeration_matches_brute_force(fermat_space):
    elements = list(fermat_space.group.elements())
    expected = [combo for combo in itertools.product(elements, repeat=3)
                if is_admissible(0, sector_tuple(fermat_space, 0, combo))]
    found = [tuple(tup.phases) for tup in enumerate_admissible(fermat_space, 0, 3)]
    assert sorted(found) == sorted(expected)


def test_enumeration_is_lexicographic(fermat_space):
    tuples = enumerate_admissible(fermat_space, 0, 3, narrow_only=True)
    keys = [tuple(fermat_space.group.coordinates(theta) for theta in tup.phases) for tup in tuples]
    assert keys == sorted(keys)


def test_enumeration_cap(fermat_space):
    with pytest.raises(CapExceeded) as info:
        enumerate_admissible(fermat_space, 0, 6, cap=1000)
    assert info.value.size == 9 ** 6


def test_higher_genus(a2_space):
    tuples = enumerate_admissible(a2_space, 2, 2)
    assert len(tuples) == 3
    for tup in tuples:
        chi = euler_characteristics(2, tup)
        assert virtual_dimension(2, tup) == (3 * 2 - 3 + 2) + sum(chi)


def test_admissibility_ignores_mark_order(rng, fermat_space):
    elements = list(fermat_space.group.elements())
    for _ in range(40):
        length = int(rng.integers(1, 5))
        marks = [elements[int(i)] for i in rng.integers(0, len(elements), size=length)]
        genus = int(rng.integers(0, 2))
        verdict = is_admissible(genus, sector_tuple(fermat_space, genus, marks))
        for order in itertools.permutations(marks):
            assert is_admissible(genus, sector_tuple(fermat_space, genus, list(order))) == verdict


@pytest.mark.parametrize("generators", [
    [[THIRD, F(0)], [F(0), THIRD]],
    [[F(0), THIRD], [THIRD, F(0)]],
    [[THIRD, THIRD], [TWO_THIRDS, THIRD]],
])
def test_enumeration_independent_of_generators(fermat_space, generators):
    space = build_lg_space(parse_polynomial("x1^3 + x2^3", 2), generators)
    assert space.group.same_group(fermat_space.group)
    for length in (3, 4):
        ours = enumerate_admissible(space, 0, length)
        reference = enumerate_admissible(fermat_space, 0, length)
        assert len(ours) == len(reference)
        assert sorted(tuple(t.phases) for t in ours) == sorted(tuple(t.phases) for t in reference)
