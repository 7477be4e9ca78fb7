#!/usr/bin/env python3
"""
Exception hierarchy for the LG Witten class toolkit
Every error carries the process exit status the CLI reports for it
"""

from typing import Any, List, Optional, Sequence


class LgError(Exception):
    """Base error; semantic failures exit with status 3"""

    exit_code = 3

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(LgError):
    """Malformed input text or document"""

    exit_code = 2


class ResourceCapError(LgError):
    """A configured enumeration or search cap was hit"""

    exit_code = 4


# exact_arith

class InfiniteKernel(LgError):
    def __init__(self, witness: Sequence[Any], message: Optional[str] = None):
        self.witness = tuple(witness)
        super().__init__(message or f"kernel is infinite, rational kernel vector {self.witness}")


class CapExceeded(ResourceCapError):
    def __init__(self, size: int, cap: int, what: str = "enumeration"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} of size {size} exceeds cap {cap}")


# polynomial / lg_space

class PolynomialSyntaxError(ParseError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"position {position}: {message}")


class ZeroPolynomial(ParseError):
    pass


class UnusedVariable(LgError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"variable x{index} does not appear in any term")


class NotQuasiHomogeneous(LgError):
    pass


class AmbiguousWeights(LgError):
    def __init__(self, witnesses: Sequence[Sequence[Any]]):
        self.witnesses = tuple(tuple(w) for w in witnesses)
        super().__init__(f"weight system is not unique, independent solutions {self.witnesses}")


class NoPositiveSolution(LgError):
    pass


class InvalidWeights(LgError):
    pass


class BudgetExceeded(ResourceCapError):
    pass


class InfiniteAut(InfiniteKernel):
    pass


class JNotContained(LgError):
    pass


class NotSubgroupOfAut(LgError):
    def __init__(self, witness: Sequence[Any]):
        self.witness = tuple(witness)
        super().__init__(f"group element {self.witness} does not fix W")


class NotInvariant(LgError):
    pass


class NonIntegralWeight(LgError):
    pass


# sectors

class NotInGroup(LgError):
    def __init__(self, element: Sequence[Any]):
        self.element = tuple(element)
        super().__init__(f"{self.element} is not an element of the group")


class NonIntegral(LgError):
    pass


class GenusNotZero(LgError):
    pass


class BroadSector(LgError):
    pass


# spin_graphs

class Disconnected(LgError):
    pass


class NoSuchEdge(LgError):
    pass


class NoSuchTail(LgError):
    pass


class SearchCapExceeded(ResourceCapError):
    pass


class WrongDecoration(LgError):
    pass


class StabilizationConflict(LgError):
    pass


class GraphValidationError(LgError):
    def __init__(self, violations: List[Any]):
        self.violations = list(violations)
        super().__init__(f"graph has {len(self.violations)} violation(s)")


# chow

class ZeroScale(LgError):
    pass


class NonUnitConstantTerm(LgError):
    pass


class EpsilonZero(LgError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"epsilon_{index} = delta_{index} - d vanishes")


class InvalidRanks(LgError):
    pass


# documents

class DocumentError(ParseError):
    pass
