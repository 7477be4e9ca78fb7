#!/usr/bin/env python3
"""
Verification Suite
Built-in symbolic checks: axioms, Segre identity, A2 selection rules and exact arithmetic
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
import sympy
from tqdm import tqdm

from algebra.chow import (FreeCaseInput, RingElement, check_concavity, check_index_zero, free_case_class,
                          weighted_segre_series)
from algebra.exact_arith import IntMatrix, phase_kernel, smith_normal_form
from lg.lg_space import aut_group, build_lg_space
from lg.polynomial import parse_polynomial
from lg.sectors import (enumerate_admissible, euler_characteristics, genus_zero_ranks, is_admissible,
                        sector_tuple, virtual_dimension)

logger = logging.getLogger(__name__)

SUITES = ('axioms', 'segre', 'selection', 'arith', 'all')
DEFAULT_SEED = 20240


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    warning: Optional[str] = None

    def to_dict(self) -> Dict:
        data = {'name': self.name, 'passed': self.passed, 'detail': self.detail}
        if self.warning:
            data['warning'] = self.warning
        return data


@dataclass
class SuiteResult:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def warnings(self) -> List[str]:
        return [f"{c.name}: {c.warning}" for c in self.checks if c.warning]

    def to_dict(self) -> Dict:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'total': len(self.checks),
            'failed': [c.name for c in self.checks if not c.passed],
            'checks': [c.to_dict() for c in self.checks],
        }


def to_sympy(element: RingElement) -> sympy.Expr:
    """c_i(B)^p becomes the symbol c{i}_{B} raised to p"""
    total = sympy.Integer(0)
    for monomial, coefficient in element.terms.items():
        term = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for k, i, p in monomial:
            term *= sympy.Symbol(f"c{i}_{element.ring.bundles[k][0]}") ** p
        total += term
    return sympy.expand(total)


def _segre_denominator(ranks, weights, t) -> sympy.Expr:
    product = sympy.Integer(1)
    for j, (rank, e) in enumerate(zip(ranks, weights)):
        chern = 1 + sum(sympy.Symbol(f"c{i}_F{j + 1}") * (t / e) ** i for i in range(1, rank + 1))
        product *= sympy.Integer(e) ** rank * chern
    return sympy.expand(product)


def long_division_coefficients(numerator: sympy.Expr, denominator: sympy.Expr, t: sympy.Symbol,
                               T: int) -> List[sympy.Expr]:
    """numerator / denominator as a power series in t, by naive long division"""
    leading = denominator.subs(t, 0)
    remainder = sympy.expand(numerator)
    quotient = []
    for k in range(T + 1):
        q = sympy.expand(remainder.coeff(t, k) / leading)
        quotient.append(q)
        remainder = sympy.expand(remainder - q * t ** k * denominator)
    return quotient


def rational_expansion_coefficients(expression: sympy.Expr, t: sympy.Symbol, T: int) -> List[sympy.Expr]:
    expansion = sympy.series(expression, t, 0, T + 1).removeO()
    return [sympy.expand(expansion.coeff(t, k)) for k in range(T + 1)]


def _run(checks: Iterable[Callable[[], CheckResult]], desc: str, progress: bool) -> List[CheckResult]:
    results = []
    for check in tqdm(list(checks), desc=desc, disable=not progress, ascii=True):
        results.append(check())
    return results


def axioms_checks(rng: np.random.Generator) -> List[Callable[[], CheckResult]]:
    """Concavity over n <= 3, s_j <= 3 and ten random index-zero instances"""
    checks = []
    for n in range(1, 4):
        for coranks in itertools.product(range(4), repeat=n):
            def concavity(coranks=coranks):
                report = check_concavity(coranks, [(3, 1)] * len(coranks))
                return CheckResult(f"concavity s={coranks}", report.equal,
                                   f"{report.computed.format()} vs {report.expected.format()}")
            checks.append(concavity)

    for trial in range(10):
        n = int(rng.integers(1, 4))
        d = int(rng.integers(2, 7))
        weights = [(d, int(rng.integers(1, d))) for _ in range(n)]
        ranks = [int(x) for x in rng.integers(0, 4, size=n)]

        def index_zero(ranks=ranks, weights=weights, trial=trial):
            report = check_index_zero(ranks, ranks, weights)
            warning = None
            if report.flagged:
                warning = f"printed factor {report.printed_factor} differs from 1"
            return CheckResult(f"index-zero #{trial} r=s={tuple(ranks)} weights={weights}", report.agrees,
                               f"computed {report.computed}, ratio {report.constant_ratio}", warning)
        checks.append(index_zero)
    return checks


def segre_checks() -> List[Callable[[], CheckResult]]:
    t = sympy.Symbol('t')

    def compare(ranks, weights, T, oracle_name, oracle):
        series = weighted_segre_series(ranks, weights, T, D=T)
        ours = [to_sympy(series.coefficient(k)) for k in range(T + 1)]
        theirs = oracle()
        mismatched = [k for k in range(T + 1) if sympy.expand(ours[k] - theirs[k]) != 0]
        return CheckResult(f"segre ranks={tuple(ranks)} weights={tuple(weights)} vs {oracle_name}",
                           not mismatched, f"mismatched t-degrees {mismatched}" if mismatched else f"through t^{T}")

    def division(ranks, weights, T):
        r = sum(ranks)
        return lambda: compare(ranks, weights, T, "long division", lambda: long_division_coefficients(
            t ** r, _segre_denominator(ranks, weights, t), t, T))

    def classical(ranks, T):
        weights = [1] * len(ranks)
        r = sum(ranks)
        return lambda: compare(ranks, weights, T, "rational expansion", lambda: rational_expansion_coefficients(
            t ** r / _segre_denominator(ranks, weights, t), t, T))

    return [
        division([1, 2], [2, 3], 6),
        division([1], [2], 5),
        classical([1], 5),
        classical([1, 2], 6),
        classical([2, 2], 6),
    ]


def selection_checks() -> List[Callable[[], CheckResult]]:
    """Genus-zero A2 selection rules for x^3"""
    space = build_lg_space(parse_polynomial("x1^3", 1))
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)

    def three_point():
        tuples = enumerate_admissible(space, 0, 3, narrow_only=True)
        vdims = [virtual_dimension(0, tup) for tup in tuples]
        chis = [euler_characteristics(0, tup) for tup in tuples]
        expected = sorted(itertools.permutations((third, third, two_thirds)))
        found = sorted(tuple(s.element[0] for s in tup.sectors) for tup in tuples)
        numeric = free_case_class(FreeCaseInput.from_space(space, [0], [0], numeric=True))
        passed = found == sorted(set(expected)) and all(v == 0 for v in vdims) \
            and all(c == (0,) for c in chis) and numeric == 1
        return CheckResult("three-point narrow sectors", passed,
                           f"{len(tuples)} tuple(s), vdims {vdims}, class {numeric}")

    def four_point():
        tup = sector_tuple(space, 0, [(two_thirds,)] * 4)
        chi = euler_characteristics(0, tup)
        ranks, coranks = genus_zero_ranks(tup)
        value = free_case_class(FreeCaseInput.from_space(space, ranks, coranks))
        passed = is_admissible(0, tup) and chi == (-1,) and value.format() == "c1(G1)"
        return CheckResult("four-point concave sector", passed, f"chi {chi}, class {value.format()}")

    def dimension_identity():
        bad = []
        for length, narrow in ((3, True), (3, False), (4, True)):
            for tup in enumerate_admissible(space, 0, length, narrow_only=narrow):
                expected = (3 * 0 - 3 + length) + sum(euler_characteristics(0, tup))
                if virtual_dimension(0, tup) != expected:
                    bad.append([str(theta[0]) for theta in tup.phases])
        return CheckResult("virtual dimension identity", not bad, f"violations {bad}" if bad else "")

    return [three_point, four_point, dimension_identity]


def _brute_force_aut_order(rows: List[List[int]], n: int, modulus: int) -> int:
    count = 0
    for theta in itertools.product(range(modulus), repeat=n):
        if all(sum(m * a for m, a in zip(row, theta)) % modulus == 0 for row in rows):
            count += 1
    return count


def arith_checks(rng: np.random.Generator) -> List[Callable[[], CheckResult]]:
    """Smith normal form on random matrices and two symmetry groups"""
    checks = []
    for trial in range(50):
        entries = [[int(x) for x in row] for row in rng.integers(-10, 11, size=(4, 4))]

        def snf_check(entries=entries, trial=trial):
            M = IntMatrix.from_rows(entries)
            snf = smith_normal_form(M)
            problems = []
            if snf.U @ M @ snf.V != snf.D:
                problems.append("U M V != D")
            if abs(snf.U.determinant()) != 1 or abs(snf.V.determinant()) != 1:
                problems.append("U or V not unimodular")
            diagonal = snf.diagonal
            if any(diagonal[k + 1] % diagonal[k] for k in range(len(diagonal) - 1)):
                problems.append(f"divisibility fails on {diagonal}")
            det = M.determinant()
            if det != 0 and phase_kernel(M).order != abs(det):
                problems.append(f"|kernel| != |det| = {abs(det)}")
            return CheckResult(f"snf #{trial}", not problems, "; ".join(problems))
        checks.append(snf_check)

    for text, n, factors in (("x1^3 + x2^3", 2, (3, 3)), ("x1^2*x2 + x2^2*x1", 2, (3,))):
        def aut_check(text=text, n=n, factors=factors):
            W = parse_polynomial(text, n)
            group = aut_group(W)
            modulus = abs(W.exponent_matrix().determinant())
            oracle = _brute_force_aut_order([list(e) for e in W.exponent_rows], n, modulus)
            passed = group.invariant_factors == factors and group.order == oracle
            return CheckResult(f"aut {text}", passed, f"factors {group.invariant_factors}, oracle {oracle}")
        checks.append(aut_check)
    return checks


def run_suite(suite: str = 'axioms', seed: int = DEFAULT_SEED, progress: bool = False) -> SuiteResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    rng = np.random.default_rng(seed)
    selected = ('axioms', 'segre', 'selection', 'arith') if suite == 'all' else (suite,)

    result = SuiteResult(suite)
    for name in selected:
        if name == 'axioms':
            checks = axioms_checks(rng)
        elif name == 'segre':
            checks = segre_checks()
        elif name == 'selection':
            checks = selection_checks()
        else:
            checks = arith_checks(rng)
        result.checks.extend(_run(checks, name, progress))

    failed = [c.name for c in result.checks if not c.passed]
    if failed:
        logger.error(f"Suite {suite}: {len(failed)} check(s) failed: {failed}")
    else:
        logger.info(f"Suite {suite}: {len(result.checks)} check(s) passed")
    return result
