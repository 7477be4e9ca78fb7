#!/usr/bin/env python3
"""
Exact Arithmetic
Integer matrices, Smith and Hermite normal forms, and finite subgroups of (Q/Z)^n
"""

import logging
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from config import config
from errors import CapExceeded, InfiniteKernel, NotInGroup, ParseError

logger = logging.getLogger(__name__)

Rational = Fraction
PhaseVector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]


def to_phase(value) -> Fraction:
    """Reduce a rational into [0, 1)"""
    return Fraction(value) % 1


def phase_vector(values: Iterable) -> PhaseVector:
    """Coordinatewise reduction into [0, 1)"""
    return tuple(to_phase(v) for v in values)


def add_phases(a: Sequence[Fraction], b: Sequence[Fraction]) -> PhaseVector:
    """Sum in (Q/Z)^n"""
    return tuple((x + y) % 1 for x, y in zip(a, b))


def negate_phase(a: Sequence[Fraction]) -> PhaseVector:
    """Inverse in (Q/Z)^n"""
    return tuple((-x) % 1 for x in a)


def parse_rational(text) -> Fraction:
    """Parse "p/q" or an integer; floats are refused"""
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"refusing non-exact rational {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        cleaned = str(text).replace(" ", "")
        if "." in cleaned or "e" in cleaned.lower():
            raise ValueError(cleaned)
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational: {text!r}")


def format_rational(value: Fraction) -> str:
    """Render as p/q, or p for integers"""
    return str(Fraction(value))


def format_phase_vector(theta: Sequence[Fraction]) -> List[str]:
    """Phase vector as a list of "p/q" strings"""
    return [format_rational(q) for q in theta]


@dataclass(frozen=True)
class IntMatrix:
    """Integer matrix stored row-major"""
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build from a list of rows; cols fixes the width when there are none"""
        rows = [tuple(int(x) for x in r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        """n x n identity"""
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        """m x n zero matrix"""
        return cls(m, n, (0,) * (m * n))

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> IntVector:
        """Row i as a tuple"""
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> IntVector:
        """Column j as a tuple"""
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        """Mutable copy as nested lists"""
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        """Swap rows and columns"""
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        """Exact integer matrix product"""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in columns] for i in range(self.rows)],
            cols=other.cols,
        )

    def determinant(self) -> int:
        """Bareiss fraction-free elimination"""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1"""
        n = self.rows
        if self.rows != self.cols or abs(self.determinant()) != 1:
            raise ValueError("matrix is not unimodular")
        work = [[Fraction(x) for x in self.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            pivot = next(i for i in range(c, n) if work[i][c] != 0)
            work[c], work[pivot] = work[pivot], work[c]
            p = work[c][c]
            work[c] = [x / p for x in work[c]]
            for i in range(n):
                if i != c and work[i][c] != 0:
                    f = work[i][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[c])]
        return IntMatrix.from_rows([[int(x) for x in r[n:]] for r in work], cols=n)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with d_1 | d_2 | ... | d_rank"""
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[k, k] for k in range(self.rank))


def _smallest_nonzero(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    """Position of the entry of least absolute value in the block a[t:, t:]"""
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[i])):
            if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form by smallest-pivot elimination"""
    m, n = M.rows, M.cols
    a = M.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i: int, k: int):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(target: int, source: int, q: int):
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        u[target] = [x + q * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, q: int):
        for r in a:
            r[target] += q * r[source]
        for r in v:
            r[target] += q * r[source]

    rank = 0
    for t in range(min(m, n)):
        pivot = _smallest_nonzero(a, t)
        if pivot is None:
            break
        while True:
            i, j = pivot
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))

            leftover = any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n))
            if not leftover:
                bad_row = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad_row is None:
                    break
                add_row(t, bad_row, 1)
            pivot = _smallest_nonzero(a, t)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        logger.debug(f"SNF pivot {t}: {a[t][t]}")
        rank += 1

    return SmithDecomposition(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
        rank=rank,
    )


def hermite_normal_form(rows: Sequence[Sequence[int]], width: Optional[int] = None) -> List[IntVector]:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Upper triangular, positive pivots, entries above each pivot reduced into
    [0, pivot). Zero rows are dropped.
    """
    a = [list(r) for r in rows]
    ncols = width if width is not None else (len(a[0]) if a else 0)
    r0 = 0
    for col in range(ncols):
        while True:
            nonzero = [i for i in range(r0, len(a)) if a[i][col]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: abs(a[i][col]))
            a[r0], a[p] = a[p], a[r0]
            finished = True
            for i in range(r0 + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[r0][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
                    if a[i][col]:
                        finished = False
            if finished:
                break
        if r0 >= len(a) or a[r0][col] == 0:
            continue
        if a[r0][col] < 0:
            a[r0] = [-x for x in a[r0]]
        pivot = a[r0][col]
        for i in range(r0):
            q = a[i][col] // pivot
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
        r0 += 1
    return [tuple(r) for r in a[:r0]]


def lattice_index(basis: Sequence[Sequence[int]]) -> int:
    """[Z^n : L] for a full-rank basis"""
    return abs(IntMatrix.from_rows(basis).determinant())


def element_order(theta: Sequence) -> int:
    """Least r with r * theta == 0 mod Z^n"""
    return math.lcm(1, *(to_phase(q).denominator for q in theta))


@dataclass(frozen=True)
class DiagonalGroup:
    """Finite subgroup of (Q/Z)^n in invariant-factor form"""
    ambient_dim: int
    generators: Tuple[PhaseVector, ...]
    invariant_factors: Tuple[int, ...]
    order: int
    coordinate_map: Tuple[IntVector, ...]
    relations: Tuple[IntVector, ...]

    @property
    def exponent(self) -> int:
        return math.lcm(1, *self.invariant_factors)

    @property
    def identity(self) -> PhaseVector:
        return (Fraction(0),) * self.ambient_dim

    def contains(self, theta: Sequence) -> bool:
        if len(theta) != self.ambient_dim:
            return False
        theta = phase_vector(theta)
        return all(sum(c * q for c, q in zip(row, theta)).denominator == 1 for row in self.relations)

    def coordinates(self, theta: Sequence) -> IntVector:
        """Invariant-factor coordinates (a_1, ..., a_k) with 0 <= a_i < f_i"""
        if not self.contains(theta):
            raise NotInGroup(phase_vector(theta) if len(theta) == self.ambient_dim else tuple(theta))
        theta = phase_vector(theta)
        coords = []
        for row, f in zip(self.coordinate_map, self.invariant_factors):
            value = f * sum(c * q for c, q in zip(row, theta))
            coords.append(int(value) % f)
        return tuple(coords)

    def element(self, coords: Sequence[int]) -> PhaseVector:
        total = [Fraction(0)] * self.ambient_dim
        for a, g in zip(coords, self.generators):
            total = [x + a * y for x, y in zip(total, g)]
        return phase_vector(total)

    def elements(self, cap: Optional[int] = None) -> Iterator[PhaseVector]:
        """All elements, lexicographic in invariant-factor coordinates"""
        cap = cap if cap is not None else config.get_arith_config().enumeration_cap
        if self.order > cap:
            raise CapExceeded(self.order, cap, "group enumeration")
        return (self.element(c) for c in itertools.product(*(range(f) for f in self.invariant_factors)))

    def add(self, a: Sequence, b: Sequence) -> PhaseVector:
        for theta in (a, b):
            if not self.contains(theta):
                raise NotInGroup(tuple(theta))
        return add_phases(phase_vector(a), phase_vector(b))

    def inverse(self, theta: Sequence) -> PhaseVector:
        if not self.contains(theta):
            raise NotInGroup(tuple(theta))
        return negate_phase(phase_vector(theta))

    def missing_from(self, other: "DiagonalGroup") -> Optional[PhaseVector]:
        """A generator of self outside other, or None when self <= other"""
        return next((g for g in self.generators if not other.contains(g)), None)

    def is_subgroup_of(self, other: "DiagonalGroup") -> Tuple[bool, Optional[PhaseVector]]:
        witness = self.missing_from(other)
        return witness is None, witness

    def same_group(self, other: "DiagonalGroup") -> bool:
        return (self.ambient_dim == other.ambient_dim and self.order == other.order
                and self.missing_from(other) is None)

    def product(self, other: "DiagonalGroup") -> "DiagonalGroup":
        """Direct product acting on concatenated coordinates"""
        n, k = self.ambient_dim, other.ambient_dim
        rows = [tuple(r) + (0,) * k for r in self.relations] + [(0,) * n + tuple(r) for r in other.relations]
        return phase_kernel(IntMatrix.from_rows(rows, cols=n + k))


def phase_kernel(M: IntMatrix) -> DiagonalGroup:
    """{theta in (Q/Z)^n : M theta == 0 mod Z^m}"""
    n = M.cols
    snf = smith_normal_form(M)
    if snf.rank < n:
        witness = tuple(Fraction(x) for x in snf.V.column(snf.rank))
        raise InfiniteKernel(witness)

    v_inverse = snf.V.inverse_unimodular()
    generators, factors, coordinate_rows = [], [], []
    for k in range(n):
        d = snf.D[k, k]
        if d > 1:
            generators.append(phase_vector(Fraction(x, d) for x in snf.V.column(k)))
            factors.append(d)
            coordinate_rows.append(v_inverse.row(k))

    group = DiagonalGroup(
        ambient_dim=n,
        generators=tuple(generators),
        invariant_factors=tuple(factors),
        order=math.prod(factors),
        coordinate_map=tuple(coordinate_rows),
        relations=tuple(M.row(i) for i in range(M.rows)),
    )
    logger.debug(f"Phase kernel of {M.rows}x{n} matrix: order {group.order}, factors {group.invariant_factors}")
    return group


def _annihilator(generators: Sequence[Sequence[Fraction]], n: int) -> List[IntVector]:
    """Hermite basis of {c in Z^n : c . g in Z for every generator g}"""
    generators = [phase_vector(g) for g in generators]
    if not generators:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    k = len(generators)
    N = math.lcm(1, *(q.denominator for g in generators for q in g))
    # c . (N g_i) - N y_i = 0 over Z; the kernel projects isomorphically onto the c-part
    rows = [[int(N * q) for q in g] + [-N if j == i else 0 for j in range(k)] for i, g in enumerate(generators)]
    snf = smith_normal_form(IntMatrix.from_rows(rows, cols=n + k))
    kernel = [snf.V.column(c)[:n] for c in range(snf.rank, n + k)]
    return hermite_normal_form(kernel, width=n)


def dual_lattice(G: DiagonalGroup) -> List[IntVector]:
    """Basis of Lambda_G = {c : sum c_j theta_j in Z for all theta in G}"""
    return _annihilator(G.generators, G.ambient_dim)


def subgroup_generated(generators: Sequence[Sequence], n: int) -> DiagonalGroup:
    """Subgroup of (Q/Z)^n generated by the given phase vectors"""
    for g in generators:
        if len(g) != n:
            raise ValueError(f"generator {tuple(g)} has length {len(g)}, expected {n}")
    basis = _annihilator(generators, n)
    return phase_kernel(IntMatrix.from_rows(basis, cols=n))
