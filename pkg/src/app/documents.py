#!/usr/bin/env python3
"""
Input Documents
YAML space and graph documents validated with pydantic
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from algebra.exact_arith import PhaseVector, parse_rational, phase_vector
from errors import DocumentError
from graphs.spin_graphs import DecoratedGraph, Edge, Tail
from lg.lg_space import LgSpace, WeightSystem, build_lg_space
from lg.polynomial import parse_polynomial

logger = logging.getLogger(__name__)

RationalText = Union[int, str]


class WeightsModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    d: int
    delta: List[int]


class SpaceDocument(BaseModel):
    """n, polynomial, group ("aut", "minimal" or generators) and optional weights"""
    model_config = ConfigDict(extra='forbid')

    n: int = Field(ge=0)
    polynomial: str
    group: Union[Literal['aut', 'minimal'], List[Union[str, List[RationalText]]]] = 'aut'
    weights: Optional[WeightsModel] = None


class VertexModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    genus: int = Field(ge=0)


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    tail: int
    head: int
    decoration: List[RationalText]


class TailModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    vertex: int
    decoration: List[RationalText]


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    vertices: List[VertexModel]
    edges: List[EdgeModel] = []
    tails: List[TailModel] = []
    space: Optional[SpaceDocument] = None


def read_text(path: Union[str, Path]) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {str(e)}")


def _load_mapping(raw: bytes, source: str) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise DocumentError(f"{source}: invalid YAML: {str(e)}")
    if not isinstance(data, dict):
        raise DocumentError(f"{source}: expected a mapping at the top level")
    return data


def _validate(model, data: Dict[str, Any], source: str):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise DocumentError(f"{source}: {problems}")


def load_space_document(raw: bytes, source: str = "<space>") -> SpaceDocument:
    return _validate(SpaceDocument, _load_mapping(raw, source), source)


def load_graph_document(raw: bytes, source: str = "<graph>") -> GraphDocument:
    return _validate(GraphDocument, _load_mapping(raw, source), source)


def parse_phase(values: Union[str, List[RationalText]]) -> PhaseVector:
    """A phase vector from a list of "p/q" entries or one comma-separated string"""
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    return phase_vector(parse_rational(v) for v in values)


def space_weights(doc: SpaceDocument) -> Optional[WeightSystem]:
    if doc.weights is None:
        return None
    return WeightSystem(doc.weights.d, tuple(doc.weights.delta))


def build_space(doc: SpaceDocument) -> LgSpace:
    W = parse_polynomial(doc.polynomial, doc.n)
    if isinstance(doc.group, str):
        group = doc.group
    else:
        group = [parse_phase(g) for g in doc.group]
        for k, g in enumerate(group):
            if len(g) != doc.n:
                raise DocumentError(f"group generator {k} has length {len(g)}, expected n = {doc.n}")
    return build_lg_space(W, group, weights=space_weights(doc))


def build_graph(doc: GraphDocument) -> DecoratedGraph:
    try:
        return DecoratedGraph(
            vertices=tuple(v.genus for v in doc.vertices),
            edges=tuple(Edge(e.tail, e.head, parse_phase(e.decoration)) for e in doc.edges),
            tails=tuple(Tail(t.vertex, parse_phase(t.decoration)) for t in doc.tails),
        )
    except ValueError as e:
        raise DocumentError(f"graph document: {str(e)}")
