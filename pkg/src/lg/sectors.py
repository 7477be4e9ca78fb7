#!/usr/bin/env python3
"""
Sectors
Narrowness, g-admissibility, line bundle degrees and virtual dimensions
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from algebra.exact_arith import PhaseVector, element_order, format_phase_vector, phase_vector
from config import config
from errors import BroadSector, CapExceeded, GenusNotZero, NonIntegral, NotInGroup
from lg.lg_space import LgSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sector:
    """A faithful cyclic monodromy mu_r -> G, stored as the image of the generator"""
    element: PhaseVector
    r: int

    @property
    def narrow(self) -> bool:
        return is_narrow(self)

    def to_dict(self) -> Dict:
        return {'element': format_phase_vector(self.element), 'r': self.r}


@dataclass(frozen=True)
class SectorTuple:
    """(gamma_1, ..., gamma_l) at genus g on a fixed LG space"""
    sectors: Tuple[Sector, ...]
    genus: int
    space: LgSpace

    @property
    def length(self) -> int:
        return len(self.sectors)

    @property
    def phases(self) -> List[PhaseVector]:
        return [s.element for s in self.sectors]

    def phase_sums(self) -> Tuple[Fraction, ...]:
        """sum_i Theta^i_j for each j"""
        return tuple(sum((s.element[j] for s in self.sectors), Fraction(0)) for j in range(self.space.n))


def sector_of(theta: Sequence, space: LgSpace) -> Sector:
    if not space.group.contains(theta):
        raise NotInGroup(tuple(theta))
    theta = phase_vector(theta)
    return Sector(theta, element_order(theta))


def sector_tuple(space: LgSpace, genus: int, elements: Iterable[Sequence]) -> SectorTuple:
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    return SectorTuple(tuple(sector_of(e, space) for e in elements), genus, space)


def is_narrow(s: Sector) -> bool:
    """Every coordinate phase is nonzero"""
    return all(q != 0 for q in s.element)


def line_bundle_degrees(g: int, length: int, space: LgSpace) -> Tuple[Fraction, ...]:
    """deg L_j = delta_j (2g - 2 + l) / d"""
    return tuple(q * (2 * g - 2 + length) for q in space.charges)


def _residues(g: int, tup: SectorTuple) -> Tuple[Fraction, ...]:
    degrees = line_bundle_degrees(g, tup.length, tup.space)
    return tuple(deg - total for deg, total in zip(degrees, tup.phase_sums()))


def is_admissible(g: int, tup: SectorTuple) -> bool:
    """delta_j (2g - 2 + l)/d - sum_i Theta^i_j is an integer for every j"""
    return all(x.denominator == 1 for x in _residues(g, tup))


def enumerate_admissible(space: LgSpace, g: int, length: int, narrow_only: bool = False,
                         cap: Optional[int] = None) -> List[SectorTuple]:
    """All g-admissible ordered tuples, lexicographic in invariant-factor coordinates"""
    cap = cap if cap is not None else config.get_sector_config().enumeration_cap
    size = space.group.order ** length
    if size > cap:
        raise CapExceeded(size, cap, "sector enumeration")

    elements = list(space.group.elements(cap=max(cap, space.group.order)))
    if narrow_only:
        elements = [e for e in elements if all(q != 0 for q in e)]
    found: List[SectorTuple] = []
    if length == 0:
        empty = SectorTuple((), g, space)
        return [empty] if is_admissible(g, empty) else []

    # the last slot is forced: Theta^l = deg L - sum of the others mod 1
    degrees = line_bundle_degrees(g, length, space)
    sectors = {e: Sector(e, element_order(e)) for e in elements}
    for prefix in itertools.product(elements, repeat=length - 1):
        partial = [sum((p[j] for p in prefix), Fraction(0)) for j in range(space.n)]
        last = phase_vector(deg - s for deg, s in zip(degrees, partial))
        if last in sectors:
            found.append(SectorTuple(tuple(sectors[p] for p in prefix) + (sectors[last],), g, space))

    logger.debug(f"Enumerated {len(found)} admissible tuple(s) for g={g}, l={length}, narrow={narrow_only}")
    return found


def euler_characteristics(g: int, tup: SectorTuple) -> Tuple[int, ...]:
    """chi_j = (1 - g) + deg L_j - sum_i Theta^i_j"""
    chis = []
    for j, residue in enumerate(_residues(g, tup)):
        chi = (1 - g) + residue
        if chi.denominator != 1:
            raise NonIntegral(f"chi_{j + 1} = {chi} is not an integer; tuple is not {g}-admissible")
        chis.append(int(chi))
    return tuple(chis)


def virtual_dimension(g: int, tup: SectorTuple) -> int:
    """(n - 3)(1 - g) + l + sum_j deg L_j - sum_{i,j} Theta^i_j"""
    n = tup.space.n
    value = (n - 3) * (1 - g) + tup.length + sum(_residues(g, tup), Fraction(0))
    if value.denominator != 1:
        raise NonIntegral(f"virtual dimension {value} is not an integer")
    return int(value)


def genus_zero_ranks(tup: SectorTuple) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Ranks (r_j, s_j) of R^0 and R^1 pi_* L_j on a smooth genus-zero fiber.

    The desingularised bundle has degree chi_j - 1 on P^1.
    Only narrow tuples are accepted; a broad sector has a fixed coordinate
    whose bundle is not described by these ranks.
    """
    if tup.genus != 0:
        raise GenusNotZero(f"ranks are only read off in genus 0, got genus {tup.genus}")
    broad = [i for i, s in enumerate(tup.sectors) if not is_narrow(s)]
    if broad:
        raise BroadSector(f"ranks need a narrow tuple, marks {broad} are broad")
    chis = euler_characteristics(0, tup)
    return tuple(max(c, 0) for c in chis), tuple(max(-c, 0) for c in chis)


def is_concave(tup: SectorTuple) -> bool:
    """R^0 pi_* L_j vanishes for every j"""
    ranks, _ = genus_zero_ranks(tup)
    return all(r == 0 for r in ranks)
