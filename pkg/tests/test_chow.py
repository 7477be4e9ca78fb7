import itertools
from fractions import Fraction

import pytest
import sympy

from algebra.chow import (FreeCaseInput, GradedRing, GradedSeries, check_concavity, check_index_zero,
                          chern_series, free_case_class, free_case_series, invert, n1_corollary_class,
                          scale_argument, weighted_segre_series)
from app.verify_suite import to_sympy
from errors import EpsilonZero, InvalidRanks, NonUnitConstantTerm, ZeroScale
from lg.lg_space import WeightSystem

F = Fraction


@pytest.fixture
def ring():
    return GradedRing((("F", 2), ("G", 1)), 4)


def naive_series_inverse(numerator, denominator, t, T):
    """Power-series division by repeated subtraction of the leading term"""
    remainder = sympy.expand(numerator)
    lead = denominator.subs(t, 0)
    out = []
    for k in range(T + 1):
        q = sympy.expand(remainder.coeff(t, k) / lead)
        out.append(q)
        remainder = sympy.expand(remainder - q * t ** k * denominator)
    return out


def segre_oracle(ranks, weights, T):
    t = sympy.Symbol("t")
    denominator = sympy.Integer(1)
    for j, (rank, e) in enumerate(zip(ranks, weights)):
        chern = 1 + sum(sympy.Symbol(f"c{i}_F{j + 1}") * (t / e) ** i for i in range(1, rank + 1))
        denominator *= sympy.Integer(e) ** rank * chern
    return naive_series_inverse(t ** sum(ranks), sympy.expand(denominator), t, T)


class TestRing:

    def test_truncation(self, ring):
        c1 = ring.chern("F", 1)
        assert (c1 ** 4).format() == "c1(F)^4"
        assert (c1 ** 5).is_zero
        assert ring.chern("G", 2).is_zero
        assert ring.chern("F", 0) == 1

    def test_arithmetic_and_format(self, ring):
        x = ring.chern("G", 1) - 3 * ring.chern("F", 1) * ring.chern("F", 1) + F(1, 2)
        assert x.format() == "1/2 + c1(G) - 3*c1(F)^2"
        assert x.homogeneous_part(2).format() == "-3*c1(F)^2"
        assert x.degrees() == [0, 1, 2]
        assert x.serialize()[0] == {'coefficient': '1/2', 'monomial': []}
        assert x.serialize()[-1] == {'coefficient': '-3', 'monomial': [['F', 1, 2]]}
        assert (x - x).is_zero
        assert ring.zero().format() == "0"


class TestSeries:

    @pytest.mark.parametrize("rank", [0, 1, 2])
    def test_chern_series(self, rank):
        ring = GradedRing((("B", rank),), 4)
        S = chern_series(ring, "B")
        assert S.T == rank
        assert [S.coefficient(i) == ring.chern("B", i) for i in range(rank + 1)] == [True] * (rank + 1)
        assert S.coefficient(rank + 1).is_zero

    def test_scale_argument(self, ring):
        S = chern_series(ring, "G")
        assert scale_argument(S, 1) == S
        assert scale_argument(S, 2).coefficient(1) == ring.chern("G", 1) * F(1, 2)
        assert scale_argument(scale_argument(S, 3), F(1, 3)) == S
        with pytest.raises(ZeroScale):
            scale_argument(S, 0)

    def test_invert(self, ring):
        S = chern_series(ring, "G", T=4)
        inverse = invert(S)
        c1 = ring.chern("G", 1)
        assert [inverse.coefficient(k) for k in range(4)] == [ring.one(), -c1, c1 ** 2, -(c1 ** 3)]
        product = S * inverse
        assert product.coefficient(0) == 1
        assert all(product.coefficient(k).is_zero for k in range(1, 5))

    def test_invert_constants(self, ring):
        assert invert(GradedSeries(ring, {0: ring.one()}, 3)).coefficient(0) == 1
        assert invert(GradedSeries(ring, {0: ring.constant(2)}, 3)).coefficient(0) == F(1, 2)
        with pytest.raises(NonUnitConstantTerm):
            invert(GradedSeries(ring, {0: ring.chern("F", 1)}, 3))
        with pytest.raises(NonUnitConstantTerm):
            invert(GradedSeries(ring, {1: ring.one()}, 3))


class TestFreeCase:

    def test_top_rank_one(self):
        inp = FreeCaseInput.for_weights([0], [1], WeightSystem(3, (1,)))
        assert free_case_class(inp).format() == "c1(G1)"

    def test_numeric_point_base(self):
        inp = FreeCaseInput.for_weights([1], [1], WeightSystem(3, (1,)), numeric=True)
        assert free_case_class(inp) == -2

    def test_two_variables_constant_term(self):
        weights = [(5, 2), (5, 3)]
        inp = FreeCaseInput.for_weights([1, 0], [0, 1], weights, numeric=True)
        assert free_case_class(inp) == F(3 - 5, 2)

    def test_negative_index_is_zero(self):
        inp = FreeCaseInput.for_weights([1], [0], WeightSystem(3, (1,)))
        assert free_case_class(inp).is_zero

    def test_epsilon_zero(self):
        with pytest.raises(EpsilonZero) as info:
            free_case_class(FreeCaseInput.for_weights([0, 0], [1, 0], [(3, 1), (3, 3)]))
        assert info.value.index == 2

    def test_invalid_ranks(self):
        with pytest.raises(InvalidRanks):
            FreeCaseInput.for_weights([0], [1, 1], WeightSystem(3, (1,)))
        with pytest.raises(InvalidRanks):
            FreeCaseInput.for_weights([-1], [1], WeightSystem(3, (1,)))

    @pytest.mark.parametrize("ranks, coranks", [([1], [2]), ([0, 1], [2, 1]), ([1, 1], [1, 2]), ([2], [2])])
    def test_homogeneous_of_degree_s_minus_r(self, ranks, coranks):
        weights = [(7, 2), (7, 3)][:len(ranks)]
        value = free_case_class(FreeCaseInput.for_weights(ranks, coranks, weights, dimension=4))
        assert value.degrees() in ([], [sum(coranks) - sum(ranks)])

    def test_permutation_invariance(self):
        ranks, coranks, weights = [1, 0, 2], [2, 1, 0], [(7, 2), (7, 3), (7, 1)]
        base = free_case_class(FreeCaseInput.for_weights(ranks, coranks, weights, numeric=True))
        for perm in itertools.permutations(range(3)):
            permuted = FreeCaseInput.for_weights([ranks[p] for p in perm], [coranks[p] for p in perm],
                                                 [weights[p] for p in perm], numeric=True)
            assert free_case_class(permuted) == base

    def test_series_coefficient_matches_class(self):
        inp = FreeCaseInput.for_weights([1], [2], WeightSystem(3, (1,)), dimension=3)
        series = free_case_series(inp, T=3)
        assert series.coefficient(1) == free_case_class(inp)

    def test_from_space(self, loop_space):
        inp = FreeCaseInput.from_space(loop_space, [0, 0], [1, 1])
        assert inp.weights == ((3, 1), (3, 1))
        assert free_case_class(inp).format() == "c1(G1)*c1(G2)"


class TestSegre:

    def test_rank_one_unit_weight(self):
        series = weighted_segre_series([1], [1], 4, D=4)
        c1 = series.ring.chern("F1", 1)
        assert series.coefficient(0).is_zero
        assert [series.coefficient(k) for k in range(1, 5)] == [series.ring.one(), -c1, c1 ** 2, -(c1 ** 3)]

    def test_all_ranks_zero(self):
        series = weighted_segre_series([0, 0], [2, 3], 3)
        assert series.coefficient(0) == 1
        assert all(series.coefficient(k).is_zero for k in range(1, 4))

    def test_weight_two(self):
        series = weighted_segre_series([1], [2], 3, D=3)
        c1 = series.ring.chern("F1", 1)
        assert series.coefficient(1) == F(1, 2)
        assert series.coefficient(2) == c1 * F(-1, 4)
        assert series.coefficient(3) == (c1 ** 2) * F(1, 8)

    def test_against_long_division(self):
        ranks, weights, T = [1, 2], [2, 3], 6
        series = weighted_segre_series(ranks, weights, T, D=T)
        oracle = segre_oracle(ranks, weights, T)
        for k in range(T + 1):
            assert sympy.expand(to_sympy(series.coefficient(k)) - oracle[k]) == 0

    @pytest.mark.parametrize("ranks", [[1], [2], [1, 1], [1, 2]])
    def test_unit_weights_classical(self, ranks):
        T = 5
        series = weighted_segre_series(ranks, [1] * len(ranks), T, D=T)
        t = sympy.Symbol("t")
        denominator = sympy.Integer(1)
        for j, rank in enumerate(ranks):
            denominator *= 1 + sum(sympy.Symbol(f"c{i}_F{j + 1}") * t ** i for i in range(1, rank + 1))
        expansion = sympy.expand(sympy.series(t ** sum(ranks) / denominator, t, 0, T + 1).removeO())
        for k in range(T + 1):
            assert sympy.expand(to_sympy(series.coefficient(k)) - expansion.coeff(t, k)) == 0

    def test_low_coefficients_vanish(self):
        series = weighted_segre_series([2, 1], [3, 2], 6)
        assert all(series.coefficient(k).is_zero for k in range(3))

    def test_non_coprime_weights_warn(self, caplog):
        weighted_segre_series([1, 1], [2, 4], 3)
        assert "not relatively prime" in caplog.text


class TestAxioms:

    @pytest.mark.parametrize("coranks", [c for n in range(1, 4) for c in itertools.product(range(4), repeat=n)])
    def test_concavity(self, coranks):
        report = check_concavity(coranks, [(5, 2)] * len(coranks))
        assert report.equal

    def test_concavity_examples(self):
        assert check_concavity([1], WeightSystem(3, (1,))).computed.format() == "c1(G1)"
        assert check_concavity([1, 2], [(3, 1), (3, 1)]).computed.format() == "c1(G1)*c2(G2)"
        assert check_concavity([0], WeightSystem(3, (1,))).computed == 1

    @pytest.mark.parametrize("ranks, weights, computed", [
        ([1], [(3, 1)], -2),
        ([2], [(3, 1)], 4),
        ([1, 2], [(3, 1), (3, 1)], -8),
    ])
    def test_index_zero_examples(self, ranks, weights, computed):
        report = check_index_zero(ranks, ranks, weights)
        assert report.computed == computed
        assert report.agrees
        assert report.printed == computed
        assert not report.flagged

    def test_index_zero_flags_printed_factor(self):
        report = check_index_zero([2, 0], [1, 1], [(3, 1), (3, 2)])
        assert report.agrees
        assert report.printed_factor is None
        assert report.flagged
        report = check_index_zero([2, 1], [1, 2], [(5, 1), (5, 2)])
        assert report.printed_factor == F(2, 2)
        mismatched = check_index_zero([3, 1], [2, 2], [(5, 1), (5, 2)])
        assert mismatched.printed_factor == F(4, 3)
        assert mismatched.flagged and mismatched.agrees

    def test_index_zero_random(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 4))
            d = int(rng.integers(2, 7))
            weights = [(d, int(rng.integers(1, d))) for _ in range(n)]
            ranks = [int(x) for x in rng.integers(0, 4, size=n)]
            report = check_index_zero(ranks, ranks, weights)
            expected = F(1)
            for (dd, delta), r in zip(weights, ranks):
                expected *= F(delta - dd) ** r / F(delta) ** r
            assert report.computed == expected
            assert report.flagged == (0 in ranks)

    def test_index_zero_needs_balanced_ranks(self):
        with pytest.raises(InvalidRanks):
            check_index_zero([1], [2], [(3, 1)])


class TestCorollary:

    def test_concave_specialization(self):
        assert n1_corollary_class(0, 1, 3).format() == "c1(G1)"

    @pytest.mark.parametrize("s, d", [(1, 3), (2, 3), (3, 5)])
    def test_point_base(self, s, d):
        assert n1_corollary_class(s, s, d, D=0) == (1 - d) ** s

    def test_rank_one_formal(self):
        d = 3
        value = n1_corollary_class(1, 1, d, D=1)
        assert value == (1 - d)
        inp = FreeCaseInput.for_weights([1], [1], [(d, 1)], dimension=1)
        ring = inp.ring()
        first_order = free_case_series(inp, T=1).coefficient(1)
        assert first_order == ring.chern("G1", 1) - (1 - d) * ring.chern("F1", 1)
