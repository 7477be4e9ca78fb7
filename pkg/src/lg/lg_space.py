#!/usr/bin/env python3
"""
LG Spaces
Weight systems, non-degeneracy, Aut(W), (d, delta)-groups and the invariant lattice
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Matrix

from algebra.exact_arith import (DiagonalGroup, IntMatrix, PhaseVector, dual_lattice, phase_kernel,
                                 phase_vector, subgroup_generated)
from algebra.groebner import is_unit_ideal, is_zero_dimensional, jacobian_basis
from errors import (AmbiguousWeights, BudgetExceeded, InfiniteAut, InfiniteKernel, InvalidWeights,
                    JNotContained, NoPositiveSolution, NonIntegralWeight, NotInvariant,
                    NotQuasiHomogeneous, NotSubgroupOfAut)
from lg.polynomial import LaurentMonomial, QuasiHomogPoly

logger = logging.getLogger(__name__)

GroupSpec = Union[str, Sequence[Sequence]]


@dataclass(frozen=True)
class WeightSystem:
    """W(l^delta_1 x_1, ..., l^delta_n x_n) = l^d W(x)"""
    d: int
    delta: Tuple[int, ...]

    def __post_init__(self):
        if self.d <= 0 or any(x <= 0 for x in self.delta):
            raise InvalidWeights(f"weights must be positive, got d={self.d}, delta={self.delta}")
        if math.gcd(self.d, *self.delta) != 1:
            raise InvalidWeights(f"(d, delta) = ({self.d}, {self.delta}) is not primitive")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def charges(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.d) for x in self.delta)

    def violations(self, W: QuasiHomogPoly) -> List[Tuple[int, ...]]:
        """Exponent rows of W whose weighted degree is not d"""
        return [e for e in W.exponent_rows if sum(m * x for m, x in zip(e, self.delta)) != self.d]

    def to_dict(self) -> Dict:
        return {'d': self.d, 'delta': list(self.delta)}


def infer_weights(W: QuasiHomogPoly) -> WeightSystem:
    """The primitive positive (d, delta) with sum_j m_aj delta_j = d for every term"""
    rows = [list(e) + [-1] for e in W.exponent_rows]
    kernel = Matrix(rows).nullspace()
    if not kernel:
        raise NotQuasiHomogeneous("only the zero weight solves the degree equations")
    if len(kernel) >= 2:
        raise AmbiguousWeights([[Fraction(int(x.p), int(x.q)) for x in v] for v in kernel[:2]])

    solution = [Fraction(int(x.p), int(x.q)) for x in kernel[0]]
    scale = math.lcm(*(q.denominator for q in solution))
    integral = [int(q * scale) for q in solution]
    divisor = math.gcd(*integral)
    integral = [x // divisor for x in integral]
    if all(x <= 0 for x in integral):
        integral = [-x for x in integral]
    if any(x <= 0 for x in integral):
        raise NoPositiveSolution(f"weight solution {integral} has non-positive entries")

    weights = WeightSystem(d=integral[-1], delta=tuple(integral[:-1]))
    logger.debug(f"Inferred weights d={weights.d}, delta={weights.delta}")
    return weights


@dataclass
class NondegeneracyReport:
    """isolated_origin is None when undecided"""
    no_cross_terms: bool
    isolated_origin: Optional[bool]
    detail: str = ""

    @property
    def nondegenerate(self) -> Optional[bool]:
        if not self.no_cross_terms or self.isolated_origin is False:
            return False
        return self.isolated_origin

    def to_dict(self) -> Dict:
        return {
            'no_cross_terms': self.no_cross_terms,
            'isolated_origin': 'indeterminate' if self.isolated_origin is None else self.isolated_origin,
            'nondegenerate': 'indeterminate' if self.nondegenerate is None else self.nondegenerate,
            'detail': self.detail,
        }


def check_nondegenerate(W: QuasiHomogPoly, weights: Optional[WeightSystem] = None,
                        max_reductions: Optional[int] = None,
                        max_degree: Optional[int] = None) -> NondegeneracyReport:
    """Cross-term rule, then zero-dimensionality of the Jacobian ideal"""
    if weights is not None and weights.violations(W):
        raise NotQuasiHomogeneous(f"terms {weights.violations(W)} do not have weighted degree {weights.d}")

    cross = W.cross_terms()
    if cross:
        return NondegeneracyReport(False, None, f"cross terms {cross}; Jacobian check skipped")

    try:
        basis = jacobian_basis(W.terms, W.n, max_reductions=max_reductions, max_degree=max_degree)
    except BudgetExceeded as e:
        logger.warning(f"Non-degeneracy undecided: {str(e)}")
        return NondegeneracyReport(True, None, f"budget exceeded: {str(e)}")

    if is_unit_ideal(basis):
        # no critical point anywhere, so the origin is not an isolated singularity
        return NondegeneracyReport(True, False, "Jacobian ideal is the unit ideal: W has no critical point")
    isolated = is_zero_dimensional(basis, W.n)
    detail = "Jacobian ideal is zero-dimensional" if isolated else "critical locus is positive-dimensional"
    return NondegeneracyReport(True, isolated, detail)


def aut_group(W: QuasiHomogPoly) -> DiagonalGroup:
    """Aut(W) = ker(tau_W), the diagonal symmetries fixing every monomial"""
    try:
        return phase_kernel(W.exponent_matrix())
    except InfiniteKernel as e:
        raise InfiniteAut(e.witness, f"Aut(W) is infinite, one-parameter direction {e.witness}")


def j_element(weights: Union[WeightSystem, Sequence[WeightSystem]]) -> PhaseVector:
    """(delta_1/d, ..., delta_n/d) mod 1"""
    blocks = [weights] if isinstance(weights, WeightSystem) else list(weights)
    return phase_vector(q for block in blocks for q in block.charges)


@dataclass(frozen=True)
class LgSpace:
    """([C^n/G], W) with the invariant lattice Lambda_G"""
    polynomial: QuasiHomogPoly
    weights: Tuple[WeightSystem, ...]
    group: DiagonalGroup
    lambda_basis: Tuple[LaurentMonomial, ...]
    lambda_weights: Tuple[int, ...]
    aut: Optional[DiagonalGroup] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.polynomial.n

    @property
    def charges(self) -> Tuple[Fraction, ...]:
        """q_j = delta_j / d, blockwise for products"""
        return tuple(q for block in self.weights for q in block.charges)

    @property
    def variable_weights(self) -> Tuple[Tuple[int, int], ...]:
        """(d, delta_j) for every variable"""
        return tuple((block.d, x) for block in self.weights for x in block.delta)

    @property
    def block_weights(self) -> List[Dict]:
        return [block.to_dict() for block in self.weights]

    @property
    def weight_system(self) -> WeightSystem:
        if len(self.weights) != 1:
            raise ValueError(f"space carries {len(self.weights)} weight blocks")
        return self.weights[0]

    @property
    def j(self) -> PhaseVector:
        return j_element(self.weights)

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'polynomial': self.polynomial.format(),
            'weights': self.block_weights,
            'group_order': self.group.order,
            'invariant_factors': list(self.group.invariant_factors),
            'lambda_basis': [list(m.exponents) for m in self.lambda_basis],
            'lambda_weights': list(self.lambda_weights),
        }


def _integral_weight(m: LaurentMonomial, charges: Sequence[Fraction]) -> int:
    w = sum((c * q for c, q in zip(m.exponents, charges)), Fraction(0))
    if w.denominator != 1:
        raise NonIntegralWeight(f"w({m.exponents}) = {w} is not an integer; j_delta is not in G")
    return int(w)


def monomial_weight(m: LaurentMonomial, space: LgSpace) -> int:
    """w(m) = sum_j c_j delta_j / d for a G-invariant monomial"""
    for g in space.group.generators:
        if m.pairing(g).denominator != 1:
            raise NotInvariant(f"monomial {m.exponents} is not invariant under {g}")
    return _integral_weight(m, space.charges)


def _assemble(W: QuasiHomogPoly, blocks: Tuple[WeightSystem, ...], G: DiagonalGroup,
              aut: Optional[DiagonalGroup]) -> LgSpace:
    basis = tuple(LaurentMonomial(tuple(c)) for c in dual_lattice(G))
    charges = tuple(q for block in blocks for q in block.charges)
    lambda_weights = tuple(_integral_weight(m, charges) for m in basis)
    return LgSpace(W, blocks, G, basis, lambda_weights, aut)


def build_lg_space(W: QuasiHomogPoly, G_spec: GroupSpec = "aut",
                   weights: Optional[WeightSystem] = None) -> LgSpace:
    """Validate a (d, delta)-group G with <j_delta> <= G <= Aut(W)"""
    W.check_variables()
    if weights is None:
        weights = infer_weights(W)
    elif weights.n != W.n:
        raise InvalidWeights(f"weight vector has {weights.n} entries for {W.n} variables")
    elif weights.violations(W):
        raise NotQuasiHomogeneous(f"terms {weights.violations(W)} do not have weighted degree {weights.d}")

    aut = aut_group(W)
    j = j_element(weights)

    if isinstance(G_spec, str):
        if G_spec == "aut":
            G = aut
        elif G_spec == "minimal":
            G = subgroup_generated([j], W.n)
        else:
            raise ValueError(f"unknown group spec {G_spec!r}")
    else:
        G = subgroup_generated([phase_vector(g) for g in G_spec], W.n)

    if not G.contains(j):
        raise JNotContained(f"j_delta = {tuple(str(q) for q in j)} is not in G")
    inside, outside = G.is_subgroup_of(aut)
    if not inside:
        raise NotSubgroupOfAut(outside)

    space = _assemble(W, (weights,), G, aut)
    logger.info(f"LG space built: n={W.n}, |G|={G.order}, factors={G.invariant_factors}, |Aut(W)|={aut.order}")
    return space


def empty_space() -> LgSpace:
    """The 0-variable space, the unit for product_space"""
    W = QuasiHomogPoly(0, ())
    G = phase_kernel(IntMatrix(0, 0, ()))
    return LgSpace(W, (), G, (), (), G)


def product_space(A: LgSpace, B: LgSpace) -> LgSpace:
    """(W_A + W_B, G_A x G_B) in concatenated variables"""
    total = A.n + B.n
    W = A.polynomial.shifted(0, total) + B.polynomial.shifted(A.n, total)
    G = A.group.product(B.group)
    aut = A.aut.product(B.aut) if A.aut is not None and B.aut is not None else None
    return _assemble(W, A.weights + B.weights, G, aut)
