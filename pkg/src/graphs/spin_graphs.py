#!/usr/bin/env python3
"""
Decorated Dual Graphs
G-decorated graphs of spin curves: validation, contraction, splitting,
direction reversal, automorphisms and forgetting a j_delta tail
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from algebra.exact_arith import (DiagonalGroup, PhaseVector, add_phases, format_phase_vector,
                                 negate_phase, phase_vector)
from config import config
from errors import (Disconnected, GraphValidationError, NoSuchEdge, NoSuchTail, SearchCapExceeded,
                    StabilizationConflict, WrongDecoration)
from lg.lg_space import LgSpace
from lg.sectors import is_admissible, sector_tuple

logger = logging.getLogger(__name__)

EdgeImage = Tuple[str, int]


@dataclass(frozen=True)
class Edge:
    """Directed edge v- -> v+; decoration is the monodromy at the head"""
    tail: int
    head: int
    decoration: PhaseVector

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def reversed(self) -> "Edge":
        return Edge(self.head, self.tail, negate_phase(self.decoration))

    def decoration_at(self, v: int) -> PhaseVector:
        """Monodromy seen from v; assumes v is an endpoint of a non-loop edge"""
        return self.decoration if v == self.head else negate_phase(self.decoration)

    def other_end(self, v: int) -> int:
        return self.tail if v == self.head else self.head


@dataclass(frozen=True)
class Tail:
    vertex: int
    decoration: PhaseVector


@dataclass(frozen=True)
class DecoratedGraph:
    """Vertices carry genera, edges and tails carry group elements"""
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...] = ()
    tails: Tuple[Tail, ...] = ()

    def __post_init__(self):
        count = len(self.vertices)
        if any(g < 0 for g in self.vertices):
            raise ValueError("vertex genera must be >= 0")
        for k, e in enumerate(self.edges):
            if not (0 <= e.tail < count and 0 <= e.head < count):
                raise ValueError(f"edge {k} has an endpoint outside 0..{count - 1}")
        for i, t in enumerate(self.tails):
            if not 0 <= t.vertex < count:
                raise ValueError(f"tail {i} sits on unknown vertex {t.vertex}")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def edge_ends(self, v: int) -> int:
        """Incident edge-ends, loops counted twice"""
        return sum((e.tail == v) + (e.head == v) for e in self.edges)

    def tails_at(self, v: int) -> List[int]:
        return [i for i, t in enumerate(self.tails) if t.vertex == v]

    def slots(self, v: int) -> int:
        return self.edge_ends(v) + len(self.tails_at(v))

    def to_dict(self) -> Dict:
        return {
            'vertices': [{'genus': g} for g in self.vertices],
            'edges': [{'tail': e.tail, 'head': e.head, 'decoration': format_phase_vector(e.decoration)}
                      for e in self.edges],
            'tails': [{'vertex': t.vertex, 'decoration': format_phase_vector(t.decoration)} for t in self.tails],
        }


@dataclass(frozen=True)
class ContractionMap:
    """Graph map source -> target; contracted edges land on vertices"""
    source: DecoratedGraph
    target: DecoratedGraph
    vertex_map: Tuple[int, ...]
    edge_map: Tuple[EdgeImage, ...]
    tail_map: Tuple[int, ...]

    @classmethod
    def identity(cls, graph: DecoratedGraph) -> "ContractionMap":
        return cls(graph, graph, tuple(range(graph.num_vertices)),
                   tuple(('edge', k) for k in range(len(graph.edges))), tuple(range(len(graph.tails))))

    def then(self, other: "ContractionMap") -> "ContractionMap":
        """self followed by other"""
        edge_map = []
        for kind, index in self.edge_map:
            if kind == 'edge':
                edge_map.append(other.edge_map[index])
            else:
                edge_map.append(('vertex', other.vertex_map[index]))
        return ContractionMap(
            source=self.source,
            target=other.target,
            vertex_map=tuple(other.vertex_map[v] for v in self.vertex_map),
            edge_map=tuple(edge_map),
            tail_map=tuple(other.tail_map[i] for i in self.tail_map),
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    message: str

    def to_dict(self) -> Dict:
        return {'kind': self.kind, 'location': self.location, 'message': self.message}


@dataclass
class GraphReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {'valid': self.valid, 'violations': [v.to_dict() for v in self.violations]}


def vertex_marks(graph: DecoratedGraph, v: int) -> List[PhaseVector]:
    """Tail decorations at v, then gamma_e (head side) or gamma_e^-1 (tail side) per edge-end"""
    marks = [graph.tails[i].decoration for i in graph.tails_at(v)]
    for e in graph.edges:
        if e.tail == v:
            marks.append(negate_phase(e.decoration))
        if e.head == v:
            marks.append(e.decoration)
    return marks


def _decoration_violations(graph: DecoratedGraph, group: DiagonalGroup) -> List[Violation]:
    found = []
    for k, e in enumerate(graph.edges):
        if not group.contains(e.decoration):
            found.append(Violation('decoration', f'edge {k}', f'{format_phase_vector(e.decoration)} is not in G'))
    for i, t in enumerate(graph.tails):
        if not group.contains(t.decoration):
            found.append(Violation('decoration', f'tail {i}', f'{format_phase_vector(t.decoration)} is not in G'))
    return found


def validate(graph: DecoratedGraph, space: LgSpace, g_total: Optional[int] = None) -> GraphReport:
    """Stability and local admissibility at every vertex, optional total genus"""
    report = GraphReport(_decoration_violations(graph, space.group))
    bad_decorations = bool(report.violations)
    if not graph.vertices:
        # a dual graph has at least one component
        report.violations.append(Violation('empty', 'graph', 'graph has no vertices'))

    for v, genus in enumerate(graph.vertices):
        slots = graph.slots(v)
        if 2 * genus - 2 + slots <= 0:
            report.violations.append(Violation('unstable', f'vertex {v}',
                                               f'2g-2+n = {2 * genus - 2 + slots} with g={genus}, n={slots}'))
        if bad_decorations:
            continue
        local = sector_tuple(space, genus, vertex_marks(graph, v))
        if not is_admissible(genus, local):
            report.violations.append(Violation('inadmissible', f'vertex {v}',
                                               f'local selection rule fails at genus {genus} with {slots} marks'))

    if g_total is not None and graph.vertices:
        try:
            genus = total_genus(graph)
            if genus != g_total:
                report.violations.append(Violation('genus', 'graph', f'total genus {genus} != {g_total}'))
        except Disconnected as e:
            report.violations.append(Violation('disconnected', 'graph', str(e)))

    if not report.valid:
        logger.debug(f"Graph validation found {len(report.violations)} violation(s)")
    return report


def _nx_graph(graph: DecoratedGraph) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(graph.num_vertices))
    g.add_edges_from((e.tail, e.head) for e in graph.edges)
    return g


def total_genus(graph: DecoratedGraph) -> int:
    """sum_v g_v + b_1"""
    if graph.num_vertices == 0 or not nx.is_connected(_nx_graph(graph)):
        raise Disconnected("total genus needs a connected graph")
    return sum(graph.vertices) + len(graph.edges) - graph.num_vertices + 1


def contract(graph: DecoratedGraph, e: int) -> Tuple[DecoratedGraph, ContractionMap]:
    """Gamma / e: merge the endpoints (genera add) or raise the genus of a loop vertex by one"""
    if not 0 <= e < len(graph.edges):
        raise NoSuchEdge(f"edge {e} not in 0..{len(graph.edges) - 1}")
    edge = graph.edges[e]
    genera = list(graph.vertices)

    if edge.is_loop:
        genera[edge.tail] += 1
        vertex_map = tuple(range(graph.num_vertices))
    else:
        keep, drop = min(edge.tail, edge.head), max(edge.tail, edge.head)
        genera[keep] += genera[drop]
        del genera[drop]
        vertex_map = tuple(keep if v == drop else (v if v < drop else v - 1) for v in range(graph.num_vertices))

    edges, edge_map = [], []
    for k, f in enumerate(graph.edges):
        if k == e:
            edge_map.append(('vertex', vertex_map[edge.tail]))
            continue
        edge_map.append(('edge', len(edges)))
        edges.append(Edge(vertex_map[f.tail], vertex_map[f.head], f.decoration))
    tails = tuple(Tail(vertex_map[t.vertex], t.decoration) for t in graph.tails)

    target = DecoratedGraph(tuple(genera), tuple(edges), tails)
    return target, ContractionMap(graph, target, vertex_map, tuple(edge_map), tuple(range(len(tails))))


def contract_edges(graph: DecoratedGraph, edges: Sequence[int]) -> Tuple[DecoratedGraph, ContractionMap]:
    """Contract a set of edges of the source, composing the maps"""
    cm = ContractionMap.identity(graph)
    current = graph
    for e in sorted(set(edges)):
        if not 0 <= e < len(graph.edges):
            raise NoSuchEdge(f"edge {e} not in 0..{len(graph.edges) - 1}")
        kind, index = cm.edge_map[e]
        if kind != 'edge':
            continue
        current, step = contract(current, index)
        cm = cm.then(step)
    return current, cm


def contract_all(graph: DecoratedGraph) -> Tuple[DecoratedGraph, ContractionMap]:
    return contract_edges(graph, range(len(graph.edges)))


def split(graph: DecoratedGraph) -> DecoratedGraph:
    """Complete splitting: each edge becomes tails gamma_e^-1 at v- and gamma_e at v+"""
    new_tails = list(graph.tails)
    for e in graph.edges:
        new_tails.append(Tail(e.tail, negate_phase(e.decoration)))
        new_tails.append(Tail(e.head, e.decoration))
    return DecoratedGraph(graph.vertices, (), tuple(new_tails))


def glue(graph: DecoratedGraph, i: int, k: int) -> DecoratedGraph:
    """Join tails i and k into an edge from tail i's vertex to tail k's vertex"""
    for index in (i, k):
        if not 0 <= index < len(graph.tails):
            raise NoSuchTail(f"tail {index} not in 0..{len(graph.tails) - 1}")
    if i == k:
        raise NoSuchTail("cannot glue a tail to itself")
    first, second = graph.tails[i], graph.tails[k]
    if any(add_phases(first.decoration, second.decoration)):
        raise WrongDecoration("glued tails need mutually inverse decorations")
    tails = tuple(t for index, t in enumerate(graph.tails) if index not in (i, k))
    edge = Edge(first.vertex, second.vertex, second.decoration)
    return DecoratedGraph(graph.vertices, graph.edges + (edge,), tails)


def disjoint_union(first: DecoratedGraph, second: DecoratedGraph) -> DecoratedGraph:
    offset = first.num_vertices
    edges = tuple(Edge(e.tail + offset, e.head + offset, e.decoration) for e in second.edges)
    tails = tuple(Tail(t.vertex + offset, t.decoration) for t in second.tails)
    return DecoratedGraph(first.vertices + second.vertices, first.edges + edges, first.tails + tails)


def reverse_edge(graph: DecoratedGraph, e: int) -> DecoratedGraph:
    if not 0 <= e < len(graph.edges):
        raise NoSuchEdge(f"edge {e} not in 0..{len(graph.edges) - 1}")
    edges = list(graph.edges)
    edges[e] = edges[e].reversed()
    return DecoratedGraph(graph.vertices, tuple(edges), graph.tails)


def reverse_all(graph: DecoratedGraph) -> DecoratedGraph:
    return DecoratedGraph(graph.vertices, tuple(e.reversed() for e in graph.edges), graph.tails)


def canonical_form(graph: DecoratedGraph, group: Optional[DiagonalGroup] = None) -> DecoratedGraph:
    """Orient every edge so its decoration is <= its inverse.

    Decorations compare in invariant-factor coordinates when a group is given,
    as phase tuples otherwise. Self-inverse edges point toward the lower vertex.
    """
    def key(theta: PhaseVector):
        return group.coordinates(theta) if group is not None else theta

    edges = []
    for e in graph.edges:
        forward, backward = key(e.decoration), key(negate_phase(e.decoration))
        if backward < forward or (forward == backward and e.tail < e.head):
            e = e.reversed()
        edges.append(e)
    return DecoratedGraph(graph.vertices, tuple(edges), graph.tails)


def edges_match(e: Edge, f: Edge, vertex_perm: Sequence[int]) -> bool:
    """e is carried onto f by the vertex permutation, up to direction reversal"""
    a, b = vertex_perm[e.tail], vertex_perm[e.head]
    if (a, b) == (f.tail, f.head) and e.decoration == f.decoration:
        return True
    return (a, b) == (f.head, f.tail) and e.decoration == negate_phase(f.decoration)


def _count_matchings(candidates: List[List[int]]) -> int:
    used = set()

    def extend(k: int) -> int:
        if k == len(candidates):
            return 1
        total = 0
        for f in candidates[k]:
            if f not in used:
                used.add(f)
                total += extend(k + 1)
                used.remove(f)
        return total

    return extend(0)


def automorphism_order(cm: ContractionMap, max_vertices: Optional[int] = None,
                       max_edges: Optional[int] = None) -> int:
    """|Aut(Gamma / Gamma')| by pruned permutation search.

    An automorphism is a vertex permutation and an edge permutation of the
    source that preserve genera, fix every tail, carry decorations onto
    decorations up to direction reversal, and commute with the contraction.
    """
    guard = config.get_graph_config()
    max_vertices = max_vertices if max_vertices is not None else guard.max_vertices
    max_edges = max_edges if max_edges is not None else guard.max_edges
    graph = cm.source
    if graph.num_vertices > max_vertices or len(graph.edges) > max_edges:
        raise SearchCapExceeded(f"search over {graph.num_vertices} vertices / {len(graph.edges)} edges "
                                f"exceeds guard {max_vertices} / {max_edges}")

    def signature(v: int):
        return (graph.vertices[v], graph.edge_ends(v), tuple(graph.tails_at(v)), cm.vertex_map[v])

    signatures = [signature(v) for v in range(graph.num_vertices)]
    choices = [[w for w in range(graph.num_vertices) if signatures[w] == signatures[v]]
               for v in range(graph.num_vertices)]

    def edge_candidates(perm: Sequence[int]) -> List[List[int]]:
        candidates = []
        for k, e in enumerate(graph.edges):
            image = cm.edge_map[k]
            if image[0] == 'edge':
                pool = [k]
            else:
                pool = [f for f in range(len(graph.edges)) if cm.edge_map[f] == image]
            candidates.append([f for f in pool if edges_match(e, graph.edges[f], perm)])
        return candidates

    perm: List[int] = [-1] * graph.num_vertices
    taken = set()

    def search(v: int) -> int:
        if v == graph.num_vertices:
            return _count_matchings(edge_candidates(perm))
        total = 0
        for w in choices[v]:
            if w not in taken:
                perm[v] = w
                taken.add(w)
                total += search(v + 1)
                taken.remove(w)
        perm[v] = -1
        return total

    count = search(0)
    logger.debug(f"|Aut(Gamma/Gamma')| = {count}")
    return count


def _remove_vertex(genera: List[int], edges: List[Edge], tails: List[Tail], v: int):
    def shift(u: int) -> int:
        return u - 1 if u > v else u

    del genera[v]
    edges[:] = [Edge(shift(e.tail), shift(e.head), e.decoration) for e in edges]
    tails[:] = [Tail(shift(t.vertex), t.decoration) for t in tails]


def stabilize(graph: DecoratedGraph) -> DecoratedGraph:
    """Remove genus-0 vertices with at most two slots, lowest index first"""
    current = graph
    while True:
        unstable = next((v for v, g in enumerate(current.vertices) if g == 0 and current.slots(v) <= 2), None)
        if unstable is None:
            return current
        v = unstable
        incident = [k for k, e in enumerate(current.edges) if v in (e.tail, e.head)]
        slots = current.slots(v)

        if not incident or any(current.edges[k].is_loop for k in incident):
            raise StabilizationConflict(f"vertex {v} spans an unstable component with {slots} slot(s)")

        if len(incident) == 1:
            # one edge-end, possibly with one tail that migrates across
            logger.debug(f"Stabilizing: contracting edge {incident[0]} into the neighbour of vertex {v}")
            current, _ = contract(current, incident[0])
            continue

        k1, k2 = incident
        e1, e2 = current.edges[k1], current.edges[k2]
        inward1, inward2 = e1.decoration_at(v), e2.decoration_at(v)
        if any(add_phases(inward1, inward2)):
            raise StabilizationConflict(f"edges {k1} and {k2} meet vertex {v} with non-inverse decorations")
        merged = Edge(e1.other_end(v), e2.other_end(v), negate_phase(inward2))
        logger.debug(f"Stabilizing: merging edges {k1} and {k2} through vertex {v}")

        genera = list(current.vertices)
        edges = [merged if k == k1 else e for k, e in enumerate(current.edges) if k != k2]
        tails = list(current.tails)
        _remove_vertex(genera, edges, tails, v)
        current = DecoratedGraph(tuple(genera), tuple(edges), tuple(tails))


def forget_tail(graph: DecoratedGraph, i: int, space: LgSpace) -> DecoratedGraph:
    """Remove a tail decorated by j_delta and stabilize"""
    if not 0 <= i < len(graph.tails):
        raise NoSuchTail(f"tail {i} not in 0..{len(graph.tails) - 1}")
    if graph.tails[i].decoration != phase_vector(space.j):
        raise WrongDecoration(f"tail {i} is decorated {format_phase_vector(graph.tails[i].decoration)}, "
                              f"not j_delta = {format_phase_vector(space.j)}")
    problems = _decoration_violations(graph, space.group)
    if problems:
        raise GraphValidationError(problems)

    tails = graph.tails[:i] + graph.tails[i + 1:]
    result = stabilize(DecoratedGraph(graph.vertices, graph.edges, tails))
    logger.info(f"Forgot tail {i}: {graph.num_vertices} -> {result.num_vertices} vertices")
    return result
