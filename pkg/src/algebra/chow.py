#!/usr/bin/env python3
"""
Truncated Chow Ring Engine
Formal Chern classes, t-series over a truncated graded ring, and the free-case Witten class
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.exact_arith import format_rational
from config import config
from errors import EpsilonZero, InvalidRanks, InvalidWeights, NonUnitConstantTerm, ZeroScale

logger = logging.getLogger(__name__)

# ((bundle index, chern index, power), ...) sorted by (bundle, chern index)
Monomial = Tuple[Tuple[int, int, int], ...]
Scalar = Union[int, Fraction]
WeightPairs = Sequence[Tuple[int, int]]


@dataclass(frozen=True)
class GradedRing:
    """Q[c_i(B_k)] with deg c_i = i, everything above degree D set to zero"""
    bundles: Tuple[Tuple[str, int], ...]
    dimension: int

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError(f"truncation degree must be >= 0, got {self.dimension}")
        if any(rank < 0 for _, rank in self.bundles):
            raise InvalidRanks(f"bundle ranks must be >= 0: {self.bundles}")

    def index(self, name: str) -> int:
        for k, (bundle, _) in enumerate(self.bundles):
            if bundle == name:
                return k
        raise KeyError(f"no bundle named {name!r}")

    def rank(self, name: str) -> int:
        return self.bundles[self.index(name)][1]

    def degree(self, monomial: Monomial) -> int:
        return sum(i * p for _, i, p in monomial)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def constant(self, value: Scalar) -> "RingElement":
        value = Fraction(value)
        return RingElement(self, {(): value} if value else {})

    def one(self) -> "RingElement":
        return self.constant(1)

    def chern(self, name: str, i: int) -> "RingElement":
        """c_i of the named bundle; c_0 = 1 and c_i = 0 above the rank"""
        k = self.index(name)
        if i == 0:
            return self.one()
        if i < 0 or i > self.bundles[k][1] or i > self.dimension:
            return self.zero()
        return RingElement(self, {((k, i, 1),): Fraction(1)})


def _multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    """Add exponents of matching Chern classes; result sorted by (bundle, index)"""
    powers: Dict[Tuple[int, int], int] = {}
    for k, i, p in a + b:
        powers[(k, i)] = powers.get((k, i), 0) + p
    return tuple((k, i, p) for (k, i), p in sorted(powers.items()))


@dataclass
class RingElement:
    """Sparse rational combination of Chern monomials"""
    ring: GradedRing
    terms: Dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: Fraction(c) for m, c in self.terms.items()
                      if c != 0 and self.ring.degree(m) <= self.ring.dimension}

    def _lift(self, other) -> "RingElement":
        """Promote a rational to a constant of this ring"""
        if isinstance(other, RingElement):
            return other
        return self.ring.constant(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other) -> "RingElement":
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return RingElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "RingElement":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "RingElement":
        other = self._lift(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _multiply_monomials(m1, m2)
                if self.ring.degree(m) > self.ring.dimension:
                    continue
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return RingElement(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElement":
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_scalar(self) -> bool:
        return all(m == () for m in self.terms)

    def scalar(self) -> Fraction:
        """The degree-zero part"""
        return self.terms.get((), Fraction(0))

    def homogeneous_part(self, degree: int) -> "RingElement":
        return RingElement(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == degree})

    def degrees(self) -> List[int]:
        return sorted({self.ring.degree(m) for m in self.terms})

    def _sort_key(self, monomial: Monomial):
        """Degree first, then bundle names, for stable printing"""
        named = tuple((self.ring.bundles[k][0], i, p) for k, i, p in monomial)
        return self.ring.degree(monomial), named

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: self._sort_key(item[0]))

    def serialize(self) -> List[Dict]:
        return [
            {
                'coefficient': format_rational(c),
                'monomial': [[self.ring.bundles[k][0], i, p] for k, i, p in m],
            }
            for m, c in self.sorted_terms()
        ]

    def format(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = [f"c{i}({self.ring.bundles[k][0]})" + (f"^{p}" if p > 1 else "") for k, i, p in m]
            body = "*".join(factors)
            magnitude = abs(c)
            if not body:
                body = format_rational(magnitude)
            elif magnitude != 1:
                body = f"{format_rational(magnitude)}*{body}"
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


@dataclass
class GradedSeries:
    """sum_k a_k t^k over a GradedRing, kept up to t^T"""
    ring: GradedRing
    coefficients: Dict[int, RingElement]
    T: int

    def __post_init__(self):
        self.coefficients = {k: a for k, a in self.coefficients.items() if 0 <= k <= self.T and not a.is_zero}

    def coefficient(self, k: int) -> RingElement:
        if k < 0 or k > self.T:
            return self.ring.zero()
        return self.coefficients.get(k, self.ring.zero())

    def truncate(self, T: int) -> "GradedSeries":
        return GradedSeries(self.ring, dict(self.coefficients), min(T, self.T))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        T = min(self.T, other.T)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(T + 1))

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        T = min(self.T, other.T)
        return GradedSeries(self.ring, {k: self.coefficient(k) + other.coefficient(k) for k in range(T + 1)}, T)

    def __mul__(self, other) -> "GradedSeries":
        if not isinstance(other, GradedSeries):
            return GradedSeries(self.ring, {k: a * other for k, a in self.coefficients.items()}, self.T)
        T = min(self.T, other.T)
        product: Dict[int, RingElement] = {}
        for i, a in self.coefficients.items():
            for j, b in other.coefficients.items():
                if i + j <= T:
                    product[i + j] = product.get(i + j, self.ring.zero()) + a * b
        return GradedSeries(self.ring, product, T)

    __rmul__ = __mul__

    def shift(self, k: int) -> "GradedSeries":
        """Multiply by t^k"""
        return GradedSeries(self.ring, {i + k: a for i, a in self.coefficients.items()}, self.T + k)

    def to_dict(self) -> Dict:
        return {'T': self.T, 'coefficients': {str(k): self.coefficient(k).serialize() for k in range(self.T + 1)}}


def series_constant(ring: GradedRing, value: Scalar, T: int) -> GradedSeries:
    return GradedSeries(ring, {0: ring.constant(value)}, T)


def chern_series(ring: GradedRing, name: str, T: Optional[int] = None) -> GradedSeries:
    """c(B)(t) = 1 + c_1 t + ... + c_rho t^rho"""
    rank = ring.rank(name)
    T = rank if T is None else T
    return GradedSeries(ring, {i: ring.chern(name, i) for i in range(min(rank, T) + 1)}, T)


def scale_argument(S: GradedSeries, e: Scalar) -> GradedSeries:
    """S(t/e): the coefficient of t^i picks up e^-i"""
    e = Fraction(e)
    if e == 0:
        raise ZeroScale("cannot substitute t/0")
    return GradedSeries(S.ring, {i: a * (e ** -i) for i, a in S.coefficients.items()}, S.T)


def invert(S: GradedSeries, T: Optional[int] = None) -> GradedSeries:
    """1/S up to t^T; the constant coefficient must be a nonzero rational"""
    T = S.T if T is None else T
    a0 = S.coefficient(0)
    if not a0.is_scalar or a0.scalar() == 0:
        raise NonUnitConstantTerm(f"constant coefficient {a0.format()} is not a nonzero rational")
    inverse_a0 = 1 / a0.scalar()
    b = [S.ring.constant(inverse_a0)]
    for k in range(1, T + 1):
        total = S.ring.zero()
        for i in range(1, k + 1):
            total = total + S.coefficient(i) * b[k - i]
        b.append(total * (-inverse_a0))
    return GradedSeries(S.ring, dict(enumerate(b)), T)


def _per_variable(weights) -> List[Tuple[int, int]]:
    """Accept a WeightSystem-like object or explicit (d, delta_j) pairs"""
    if hasattr(weights, 'delta') and hasattr(weights, 'd'):
        return [(weights.d, x) for x in weights.delta]
    return [(int(d), int(x)) for d, x in weights]


@dataclass(frozen=True)
class FreeCaseInput:
    """Ranks of F_j = R^0 pi_* L_j and G_j = R^1 pi_* L_j with the weights of every variable"""
    ranks: Tuple[int, ...]
    coranks: Tuple[int, ...]
    weights: Tuple[Tuple[int, int], ...]
    dimension: int
    numeric: bool = False

    def __post_init__(self):
        n = len(self.weights)
        if len(self.ranks) != n or len(self.coranks) != n:
            raise InvalidRanks(f"need {n} ranks and coranks, got {len(self.ranks)} and {len(self.coranks)}")
        if any(x < 0 for x in self.ranks + self.coranks):
            raise InvalidRanks("ranks and coranks must be >= 0")
        if any(d <= 0 or x <= 0 for d, x in self.weights):
            raise InvalidWeights(f"weights must be positive: {self.weights}")

    @classmethod
    def for_weights(cls, ranks: Sequence[int], coranks: Sequence[int], weights,
                    dimension: Optional[int] = None, numeric: bool = False) -> "FreeCaseInput":
        dimension = dimension if dimension is not None else config.get_chow_config().default_dimension
        return cls(tuple(ranks), tuple(coranks), tuple(_per_variable(weights)), dimension, numeric)

    @classmethod
    def from_space(cls, space, ranks: Sequence[int], coranks: Sequence[int],
                   dimension: Optional[int] = None, numeric: bool = False) -> "FreeCaseInput":
        return cls.for_weights(ranks, coranks, space.variable_weights, dimension, numeric)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def r(self) -> int:
        return sum(self.ranks)

    @property
    def s(self) -> int:
        return sum(self.coranks)

    @property
    def epsilons(self) -> Tuple[int, ...]:
        """epsilon_j = delta_j - d"""
        return tuple(x - d for d, x in self.weights)

    def ring(self) -> GradedRing:
        bundles = tuple((f"F{j + 1}", r) for j, r in enumerate(self.ranks))
        bundles += tuple((f"G{j + 1}", s) for j, s in enumerate(self.coranks))
        return GradedRing(bundles, 0 if self.numeric else self.dimension)


def free_case_series(inp: FreeCaseInput, T: Optional[int] = None) -> GradedSeries:
    """prod_j eps_j^{s_j} c(G_j)(t/eps_j) over prod_j delta_j^{r_j} c(F_j)(t/delta_j), up to t^T"""
    for j, eps in enumerate(inp.epsilons):
        if eps == 0:
            raise EpsilonZero(j + 1)
    T = T if T is not None else max(inp.s - inp.r, 0)
    ring = inp.ring()

    numerator = series_constant(ring, 1, T)
    denominator = series_constant(ring, 1, T)
    for j, ((d, delta), eps) in enumerate(zip(inp.weights, inp.epsilons)):
        numerator = numerator * scale_argument(chern_series(ring, f"G{j + 1}", T), eps) \
            * ring.constant(Fraction(eps) ** inp.coranks[j])
        denominator = denominator * scale_argument(chern_series(ring, f"F{j + 1}", T), delta) \
            * ring.constant(Fraction(delta) ** inp.ranks[j])
    return numerator * invert(denominator, T)


def free_case_class(inp: FreeCaseInput) -> Union[RingElement, Fraction]:
    """Coeff_{t^{s-r}} of free_case_series; a Fraction in numeric mode"""
    k = inp.s - inp.r
    if k < 0:
        for j, eps in enumerate(inp.epsilons):
            if eps == 0:
                raise EpsilonZero(j + 1)
        value = inp.ring().zero()
    else:
        value = free_case_series(inp, T=k).coefficient(k)
    logger.debug(f"Free-case class for r={inp.ranks}, s={inp.coranks}: {value.format()}")
    return value.scalar() if inp.numeric else value


def weighted_segre_series(ranks: Sequence[int], weights: Sequence[int], T: int,
                          D: Optional[int] = None) -> GradedSeries:
    """t^r [prod_j e_j^{r_j} c(F_j)(t/e_j)]^{-1} up to t^T"""
    D = D if D is not None else config.get_chow_config().default_dimension
    if len(ranks) != len(weights):
        raise InvalidRanks(f"{len(ranks)} ranks for {len(weights)} weights")
    if any(e <= 0 for e in weights):
        raise InvalidWeights(f"Segre weights must be positive integers: {tuple(weights)}")
    if weights and math.gcd(*weights) != 1:
        logger.warning(f"Segre weights {tuple(weights)} are not relatively prime")

    ring = GradedRing(tuple((f"F{j + 1}", r) for j, r in enumerate(ranks)), D)
    r = sum(ranks)
    if T < r:
        return GradedSeries(ring, {}, T)

    product = series_constant(ring, 1, T - r)
    for j, (rank, e) in enumerate(zip(ranks, weights)):
        product = product * scale_argument(chern_series(ring, f"F{j + 1}", T - r), e) \
            * ring.constant(Fraction(e) ** rank)
    return invert(product, T - r).shift(r)


@dataclass
class ConcavityReport:
    coranks: Tuple[int, ...]
    computed: RingElement
    expected: RingElement

    @property
    def equal(self) -> bool:
        return self.computed == self.expected

    def to_dict(self) -> Dict:
        return {
            'coranks': list(self.coranks),
            'computed': self.computed.format(),
            'expected': self.expected.format(),
            'equal': self.equal,
        }


def check_concavity(coranks: Sequence[int], weights, D: Optional[int] = None) -> ConcavityReport:
    """All r_j = 0: the class must be c_top(G) = prod_j c_{s_j}(G_j)"""
    D = D if D is not None else max(config.get_chow_config().default_dimension, sum(coranks))
    inp = FreeCaseInput.for_weights([0] * len(coranks), coranks, weights, dimension=D)
    computed = free_case_class(inp)
    ring = inp.ring()
    expected = ring.one()
    for j, s in enumerate(coranks):
        expected = expected * ring.chern(f"G{j + 1}", s)
    return ConcavityReport(tuple(coranks), computed, expected)


@dataclass
class IndexZeroReport:
    """computed is Coeff_{t^0} on a point; printed carries the extra prod s_j / prod r_j factor"""
    ranks: Tuple[int, ...]
    coranks: Tuple[int, ...]
    computed: Fraction
    constant_ratio: Fraction
    printed_factor: Optional[Fraction]

    @property
    def printed(self) -> Optional[Fraction]:
        return None if self.printed_factor is None else self.constant_ratio * self.printed_factor

    @property
    def agrees(self) -> bool:
        return self.computed == self.constant_ratio

    @property
    def flagged(self) -> bool:
        return self.printed_factor != 1

    def to_dict(self) -> Dict:
        return {
            'ranks': list(self.ranks),
            'coranks': list(self.coranks),
            'computed': format_rational(self.computed),
            'constant_ratio': format_rational(self.constant_ratio),
            'printed': None if self.printed is None else format_rational(self.printed),
            'printed_factor': None if self.printed_factor is None else format_rational(self.printed_factor),
            'agrees': self.agrees,
            'flagged': self.flagged,
        }


def check_index_zero(ranks: Sequence[int], coranks: Sequence[int], weights) -> IndexZeroReport:
    """sum r_j = sum s_j: the degree is prod eps_j^{s_j} / prod delta_j^{r_j}"""
    if sum(ranks) != sum(coranks):
        raise InvalidRanks(f"index zero needs sum r = sum s, got {sum(ranks)} and {sum(coranks)}")
    inp = FreeCaseInput.for_weights(ranks, coranks, weights, dimension=0, numeric=True)
    computed = free_case_class(inp)

    ratio = Fraction(1)
    for (d, delta), eps, r, s in zip(inp.weights, inp.epsilons, inp.ranks, inp.coranks):
        ratio *= Fraction(eps) ** s / Fraction(delta) ** r
    denominator = math.prod(ranks)
    factor = Fraction(math.prod(coranks), denominator) if denominator else None

    report = IndexZeroReport(tuple(ranks), tuple(coranks), computed, ratio, factor)
    if report.flagged:
        logger.warning(f"Index-zero instance r={tuple(ranks)}, s={tuple(coranks)}: "
                       f"printed factor {factor} differs from 1")
    return report


def n1_corollary_class(r: int, s: int, d: int, D: Optional[int] = None) -> RingElement:
    """One variable with delta = 1: Coeff_{t^{s-r}} of eps^s c(G)(t/eps) / c(F)(t), eps = 1 - d"""
    if d < 2:
        raise InvalidWeights(f"corollary needs d >= 2, got {d}")
    D = D if D is not None else config.get_chow_config().default_dimension
    inp = FreeCaseInput.for_weights([r], [s], [(d, 1)], dimension=D)
    return free_case_class(inp)
