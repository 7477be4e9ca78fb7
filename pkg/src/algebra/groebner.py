#!/usr/bin/env python3
"""
Groebner Engine
Plain Buchberger over QQ in degrevlex with a reduction and degree budget
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.groebnertools import spoly
from sympy.polys.orderings import grevlex
from sympy.polys.rings import xring

from config import config
from errors import BudgetExceeded

logger = logging.getLogger(__name__)


@dataclass
class BuchbergerStats:
    """Work done by one Buchberger run"""
    reductions: int = 0
    zero_reductions: int = 0
    basis_size: int = 0


def polynomial_ring(n: int):
    """QQ[x1..xn] in degrevlex"""
    ring, gens = xring([f"x{j + 1}" for j in range(n)], QQ, grevlex)
    return ring, gens


def from_terms(ring, terms: Sequence[Tuple[Fraction, Sequence[int]]]):
    return ring.from_dict({tuple(exps): QQ(c.numerator, c.denominator) for c, exps in terms})


def _total_degree(p) -> int:
    return max(sum(m) for m in p.monoms())


def buchberger(polys: Sequence, ring, max_reductions: Optional[int] = None,
               max_degree: Optional[int] = None, stats: Optional[BuchbergerStats] = None) -> List:
    """Groebner basis with the product and chain criteria.

    Raises BudgetExceeded once more than max_reductions S-polynomials have been
    reduced or a basis element exceeds max_degree.
    """
    budget = config.get_groebner_config()
    max_reductions = max_reductions if max_reductions is not None else budget.max_reductions
    max_degree = max_degree if max_degree is not None else budget.max_degree
    stats = stats if stats is not None else BuchbergerStats()

    order = ring.order
    monomial_mul = ring.monomial_mul
    monomial_div = ring.monomial_div
    monomial_lcm = ring.monomial_lcm

    f = [p.monic() for p in polys if p]
    if not f:
        return []
    for p in f:
        if _total_degree(p) > max_degree:
            raise BudgetExceeded(f"input degree {_total_degree(p)} exceeds cap {max_degree}")

    index: Dict = {}

    def update(G: set, B: set, ih: int):
        # Gebauer-Moeller installation of h = f[ih]
        mh = f[ih].LM
        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = f[ig].LM
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip):
                return monomial_div(lcm_hg, monomial_lcm(mh, f[ip].LM))

            if monomial_mul(mh, mg) == lcm_hg or (
                    not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(pr[1]) for pr in D)):
                D.add((ih, ig))

        E = {(i, g) for i, g in D if monomial_mul(mh, f[g].LM) != monomial_lcm(mh, f[g].LM)}

        B_new = set()
        for ig1, ig2 in B:
            mg1, mg2 = f[ig1].LM, f[ig2].LM
            lcm12 = monomial_lcm(mg1, mg2)
            if (not monomial_div(lcm12, mh) or monomial_lcm(mg1, mh) == lcm12
                    or monomial_lcm(mg2, mh) == lcm12):
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if not monomial_div(f[ig].LM, mh)}
        G_new.add(ih)
        return G_new, B_new

    for i, h in enumerate(f):
        index[h] = i

    G: set = set()
    pairs: set = set()
    pending = set(range(len(f)))
    while pending:
        ih = min(pending, key=lambda i: order(f[i].LM))
        pending.remove(ih)
        G, pairs = update(G, pairs, ih)

    while pairs:
        ig1, ig2 = min(pairs, key=lambda pr: order(monomial_lcm(f[pr[0]].LM, f[pr[1]].LM)))
        pairs.remove((ig1, ig2))

        stats.reductions += 1
        if stats.reductions > max_reductions:
            raise BudgetExceeded(f"more than {max_reductions} S-polynomial reductions")

        divisors = [f[g] for g in sorted(G, key=lambda g: order(f[g].LM))]
        h = spoly(f[ig1], f[ig2], ring).rem(divisors)
        if not h:
            stats.zero_reductions += 1
            continue
        h = h.monic()
        if _total_degree(h) > max_degree:
            raise BudgetExceeded(f"basis element of degree {_total_degree(h)} exceeds cap {max_degree}")
        if h not in index:
            index[h] = len(f)
            f.append(h)
        G, pairs = update(G, pairs, index[h])

    basis = [f[i] for i in sorted(G, key=lambda i: order(f[i].LM), reverse=True)]
    stats.basis_size = len(basis)
    logger.debug(f"Buchberger finished: {stats.reductions} reductions, "
                 f"{stats.zero_reductions} to zero, basis size {stats.basis_size}")
    return basis


def is_unit_ideal(basis: Sequence) -> bool:
    """A nonzero constant sits in the reduced basis"""
    return any(not any(g.LM) for g in basis)


def is_zero_dimensional(basis: Sequence, n: int) -> bool:
    """Every variable owns a pure-power leading monomial.

    The unit ideal counts as zero-dimensional here (its scheme is empty); callers
    that care about the origin check is_unit_ideal first.
    """
    covered = set()
    for g in basis:
        lm = g.LM
        support = [j for j, e in enumerate(lm) if e > 0]
        if len(support) == 1:
            covered.add(support[0])
        elif not support:
            # unit ideal
            return True
    return len(covered) == n


def jacobian_basis(terms: Sequence[Tuple[Fraction, Sequence[int]]], n: int,
                   max_reductions: Optional[int] = None, max_degree: Optional[int] = None) -> List:
    """Reduced Groebner basis of the ideal of partial derivatives of W"""
    if n == 0:
        return []
    ring, gens = polynomial_ring(n)
    W = from_terms(ring, terms)
    partials = [W.diff(x) for x in gens]
    return buchberger(partials, ring, max_reductions=max_reductions, max_degree=max_degree)


def jacobian_is_zero_dimensional(terms: Sequence[Tuple[Fraction, Sequence[int]]], n: int,
                                 max_reductions: Optional[int] = None,
                                 max_degree: Optional[int] = None) -> bool:
    """Whether the partial derivatives of W cut out a zero-dimensional scheme"""
    return is_zero_dimensional(jacobian_basis(terms, n, max_reductions, max_degree), n)
