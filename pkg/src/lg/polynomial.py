#!/usr/bin/env python3
"""
Polynomials
Laurent monomials, quasi-homogeneous polynomial terms, and the text grammar
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from algebra.exact_arith import IntMatrix
from errors import PolynomialSyntaxError, UnusedVariable, ZeroPolynomial

logger = logging.getLogger(__name__)

Term = Tuple[Fraction, Tuple[int, ...]]

_COEFFICIENT = re.compile(r"\d+(?:/\d+)?")
_VARIABLE = re.compile(r"x(\d+)(?:\^(\d+))?")


@dataclass(frozen=True)
class LaurentMonomial:
    """x^c with c an integer vector"""
    exponents: Tuple[int, ...]

    def __mul__(self, other: "LaurentMonomial") -> "LaurentMonomial":
        if len(self.exponents) != len(other.exponents):
            raise ValueError("monomials live in different variable counts")
        return LaurentMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "LaurentMonomial":
        return LaurentMonomial(tuple(k * a for a in self.exponents))

    def pairing(self, theta: Sequence[Fraction]) -> Fraction:
        return sum((c * q for c, q in zip(self.exponents, theta)), Fraction(0))


@dataclass(frozen=True)
class QuasiHomogPoly:
    """W = sum of alpha_a x^{m_a} with distinct exponent rows"""
    n: int
    terms: Tuple[Term, ...]

    @classmethod
    def from_terms(cls, n: int, terms: Sequence[Tuple[Fraction, Sequence[int]]]) -> "QuasiHomogPoly":
        """Canonical form: like terms merged, zero terms dropped, sorted"""
        merged: Dict[Tuple[int, ...], Fraction] = {}
        for coefficient, exponents in terms:
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != n:
                raise ValueError(f"term {exponents} does not have {n} exponents")
            merged[exponents] = merged.get(exponents, Fraction(0)) + Fraction(coefficient)
        canonical = tuple((c, e) for e, c in sorted(merged.items(), reverse=True) if c != 0)
        return cls(n, canonical)

    @property
    def exponent_rows(self) -> List[Tuple[int, ...]]:
        return [e for _, e in self.terms]

    def exponent_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.exponent_rows, cols=self.n)

    def cross_terms(self) -> List[Tuple[int, ...]]:
        """Terms x_i x_j with i != j"""
        return [e for e in self.exponent_rows if sum(e) == 2 and max(e) == 1]

    def check_variables(self):
        for j in range(self.n):
            if all(e[j] == 0 for e in self.exponent_rows):
                raise UnusedVariable(j + 1)

    def shifted(self, offset: int, total: int) -> "QuasiHomogPoly":
        """The same polynomial in variables offset+1..offset+n of total"""
        pad_after = total - offset - self.n
        return QuasiHomogPoly.from_terms(total, [(c, (0,) * offset + e + (0,) * pad_after) for c, e in self.terms])

    def __add__(self, other: "QuasiHomogPoly") -> "QuasiHomogPoly":
        if self.n != other.n:
            raise ValueError("polynomials live in different variable counts")
        return QuasiHomogPoly.from_terms(self.n, list(self.terms) + list(other.terms))

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for coefficient, exponents in self.terms:
            factors = [f"x{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(exponents) if e]
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            body = "*".join(factors)
            if magnitude != 1 or not body:
                body = f"{magnitude}*{body}" if body else str(magnitude)
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


class _Scanner:
    """Character cursor over the text with whitespace removed"""

    def __init__(self, text: str):
        self.chars = [(ch, pos) for pos, ch in enumerate(text) if not ch.isspace()]
        self.compact = "".join(ch for ch, _ in self.chars)
        self.index = 0
        self.end_position = len(text)

    @property
    def position(self) -> int:
        return self.chars[self.index][1] if self.index < len(self.chars) else self.end_position

    def peek(self) -> str:
        return self.compact[self.index] if self.index < len(self.compact) else ""

    def match(self, pattern: re.Pattern):
        m = pattern.match(self.compact, self.index)
        if m:
            self.index = m.end()
        return m


def _parse_term(scanner: _Scanner, n: int) -> Tuple[Fraction, Tuple[int, ...]]:
    coefficient = Fraction(1)
    exponents = [0] * n
    start = scanner.position

    m = scanner.match(_COEFFICIENT)
    has_coefficient = m is not None
    if m:
        try:
            coefficient = Fraction(m.group(0))
        except ZeroDivisionError:
            raise PolynomialSyntaxError(start, "zero denominator")
        if scanner.peek() == "*":
            scanner.index += 1
            if scanner.peek() != "x":
                raise PolynomialSyntaxError(scanner.position, "expected a variable after '*'")
        elif scanner.peek() != "x":
            return coefficient, tuple(exponents)

    while True:
        position = scanner.position
        m = scanner.match(_VARIABLE)
        if m is None:
            if has_coefficient:
                break
            raise PolynomialSyntaxError(position, "expected a coefficient or a variable xK")
        k = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        if not 1 <= k <= n:
            raise PolynomialSyntaxError(position, f"variable x{k} outside x1..x{n}")
        if e < 1:
            raise PolynomialSyntaxError(position, "exponents must be >= 1")
        exponents[k - 1] += e
        has_coefficient = True
        if scanner.peek() != "*":
            break
        scanner.index += 1
    return coefficient, tuple(exponents)


def parse_polynomial(text: str, n: int) -> QuasiHomogPoly:
    """Parse terms joined by +/- in the variables x1..xn"""
    scanner = _Scanner(text)
    if not scanner.compact:
        raise PolynomialSyntaxError(0, "empty polynomial")

    terms = []
    sign = 1
    if scanner.peek() in "+-":
        sign = -1 if scanner.peek() == "-" else 1
        scanner.index += 1
    while True:
        coefficient, exponents = _parse_term(scanner, n)
        terms.append((sign * coefficient, exponents))
        nxt = scanner.peek()
        if nxt == "":
            break
        if nxt not in "+-":
            raise PolynomialSyntaxError(scanner.position, f"unexpected character {nxt!r}")
        sign = -1 if nxt == "-" else 1
        scanner.index += 1

    W = QuasiHomogPoly.from_terms(n, terms)
    if not W.terms:
        raise ZeroPolynomial("polynomial cancels to zero")
    logger.debug(f"Parsed {len(W.terms)} term(s) from {text!r}")
    return W
