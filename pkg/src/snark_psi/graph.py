"""Simple undirected graphs with stable edge identities, and graph surgery.

Graphs are immutable values: every surgery returns a new graph together with
whatever relabelling a caller needs to keep following particular edges.
"""

import hashlib
import logging
import math
from collections import Counter, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import networkx as nx

from .errors import (
    AcyclicGraphError,
    DuplicateEdgeError,
    LoopError,
    NonCubicError,
    ParallelEdgeError,
    UnknownEdgeError,
    VertexRangeError,
)

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


def _norm(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeRef:
    edge_id: int
    endpoints: Pair

    def other(self, vertex: int) -> int:
        u, v = self.endpoints
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise ValueError(f"Vertex {vertex} is not an endpoint of edge {self.endpoints}")

    def touches(self, vertices: Iterable[int]) -> bool:
        return any(x in self.endpoints for x in vertices)


@dataclass(frozen=True)
class ValenceProfile:
    counts: Mapping[int, int] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, valence: int) -> int:
        return self.counts.get(valence, 0)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``0..vertex_count-1``.

    ``edges[i]`` holds the endpoints of the edge with id ``i``, smaller vertex
    first. Use :func:`build_graph` to construct one from untrusted input.
    """

    vertex_count: int
    edges: tuple[Pair, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        incident: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for edge_id, (u, v) in enumerate(self.edges):
            incident[u].append(edge_id)
            incident[v].append(edge_id)
        return tuple(tuple(ids) for ids in incident)

    @cached_property
    def _edge_index(self) -> dict[Pair, int]:
        return {pair: edge_id for edge_id, pair in enumerate(self.edges)}

    @cached_property
    def fingerprint(self) -> str:
        digest = hashlib.sha256(f"{self.vertex_count}:".encode())
        for u, v in self.edges:
            digest.update(f"{u}-{v};".encode())
        return digest.hexdigest()

    def edge(self, edge_id: int) -> EdgeRef:
        if not 0 <= edge_id < len(self.edges):
            raise UnknownEdgeError(f"Edge id {edge_id} does not exist in this graph")
        return EdgeRef(edge_id, self.edges[edge_id])

    def edge_refs(self) -> list[EdgeRef]:
        return [EdgeRef(i, pair) for i, pair in enumerate(self.edges)]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_index

    def find_edge(self, u: int, v: int) -> EdgeRef:
        pair = _norm(u, v)
        edge_id = self._edge_index.get(pair)
        if edge_id is None:
            raise UnknownEdgeError(f"There is no edge between {u} and {v}")
        return EdgeRef(edge_id, pair)

    def check_edge(self, e: EdgeRef) -> EdgeRef:
        """Return ``e`` if it names a live edge of this graph."""
        if not 0 <= e.edge_id < len(self.edges) or self.edges[e.edge_id] != e.endpoints:
            raise UnknownEdgeError(
                f"Edge {e.edge_id} {e.endpoints} does not belong to this graph"
            )
        return e

    def neighbors(self, vertex: int) -> tuple[int, ...]:
        return tuple(
            self.edges[e][0] if self.edges[e][1] == vertex else self.edges[e][1]
            for e in self.incidence[vertex]
        )

    def valence(self, vertex: int) -> int:
        return len(self.incidence[vertex])

    def valence_profile(self) -> ValenceProfile:
        return ValenceProfile(dict(sorted(Counter(map(len, self.incidence)).items())))

    def is_cubic(self) -> bool:
        return all(len(ids) == 3 for ids in self.incidence)

    def is_connected(self) -> bool:
        return self.vertex_count == 0 or bool(nx.is_connected(self.to_networkx()))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph


def build_graph(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Validate ``pairs`` and build a graph whose edge ids follow input order."""
    if n < 0:
        raise VertexRangeError(f"Vertex count must be nonnegative, got {n}")
    edges: list[Pair] = []
    seen: set[Pair] = set()
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"Edge ({u}, {v}) leaves the vertex range 0..{n - 1}")
        if u == v:
            raise LoopError(f"Edge ({u}, {v}) is a loop")
        pair = _norm(u, v)
        if pair in seen:
            raise DuplicateEdgeError(f"Edge ({u}, {v}) appears more than once")
        seen.add(pair)
        edges.append(pair)
    return Graph(n, tuple(edges))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def eliminate_edge(g: Graph, e: EdgeRef) -> Graph:
    g.check_edge(e)
    return Graph(
        g.vertex_count,
        tuple(pair for edge_id, pair in enumerate(g.edges) if edge_id != e.edge_id),
    )


class Subtraction(NamedTuple):
    graph: Graph
    d1: EdgeRef
    d2: EdgeRef
    # old vertex id -> new vertex id, for every surviving vertex
    relabel: dict[int, int]
    # old edge id -> new edge id, for every surviving edge
    edge_map: dict[int, int]


def _other_neighbors(g: Graph, vertex: int, excluded: int) -> Pair:
    first, second = (w for w in g.neighbors(vertex) if w != excluded)
    return first, second


def subtract_edge(g: Graph, e: EdgeRef) -> Subtraction:
    """Delete ``e=(u,v)`` and smooth both endpoints away.

    ``d1`` joins the two other neighbours of ``u`` (the smaller endpoint),
    ``d2`` those of ``v``; both are appended after the surviving edges.
    """
    g.check_edge(e)
    if not g.is_cubic():
        raise NonCubicError("Edge subtraction needs a cubic graph")
    u, v = e.endpoints
    u1, u2 = _other_neighbors(g, u, v)
    v1, v2 = _other_neighbors(g, v, u)
    if u1 == u2 or v1 == v2:
        raise LoopError(f"Subtracting {e.endpoints} would create a loop")
    d1_old, d2_old = _norm(u1, u2), _norm(v1, v2)
    if g.has_edge(*d1_old) or g.has_edge(*d2_old) or d1_old == d2_old:
        raise ParallelEdgeError(f"Subtracting {e.endpoints} would create a parallel edge")

    relabel = {}
    for old in range(g.vertex_count):
        if old not in (u, v):
            relabel[old] = len(relabel)
    edges: list[Pair] = []
    edge_map: dict[int, int] = {}
    for edge_id, (a, b) in enumerate(g.edges):
        if a in (u, v) or b in (u, v):
            continue
        edge_map[edge_id] = len(edges)
        edges.append(_norm(relabel[a], relabel[b]))
    d1 = _norm(relabel[d1_old[0]], relabel[d1_old[1]])
    d2 = _norm(relabel[d2_old[0]], relabel[d2_old[1]])
    edges += [d1, d2]
    result = Graph(g.vertex_count - 2, tuple(edges))
    if not result.is_cubic():
        raise NonCubicError("Edge subtraction produced a non-cubic graph")
    m = len(edges)
    return Subtraction(result, EdgeRef(m - 2, d1), EdgeRef(m - 1, d2), relabel, edge_map)


def reinsert_edge(g_e: Graph, d1: EdgeRef, d2: EdgeRef) -> Graph:
    """Undo a subtraction: subdivide ``d1`` and ``d2`` and join the new vertices.

    The vertex placed on ``d1`` gets id ``n`` and the one on ``d2`` id ``n+1``.
    """
    g_e.check_edge(d1)
    g_e.check_edge(d2)
    if d1.edge_id == d2.edge_id:
        raise ParallelEdgeError("d1 and d2 must be different edges")
    u, v = g_e.vertex_count, g_e.vertex_count + 1
    kept = [pair for i, pair in enumerate(g_e.edges) if i not in (d1.edge_id, d2.edge_id)]
    a, b = d1.endpoints
    c, d = d2.endpoints
    return build_graph(g_e.vertex_count + 2, kept + [(a, u), (u, b), (c, v), (v, d), (u, v)])


def girth(g: Graph) -> int:
    value = nx.girth(g.to_networkx())
    if value == math.inf:
        raise AcyclicGraphError("The graph has no cycle")
    return int(value)


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    start = cycle.index(min(cycle))
    rotated = list(cycle[start:]) + list(cycle[:start])
    if rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def find_cycles(g: Graph, max_len: int) -> list[tuple[int, ...]]:
    """All simple cycles with at most ``max_len`` edges.

    Each cycle is a vertex sequence starting at its smallest vertex and running
    toward its smaller neighbour, so rotations and reflections collapse.
    """
    if max_len < 3:
        raise ValueError(f"max_len must be at least 3, got {max_len}")
    found = {
        _canonical_cycle(cycle)
        for cycle in nx.simple_cycles(g.to_networkx(), length_bound=max_len)
        if len(cycle) >= 3
    }
    return sorted(found, key=lambda c: (len(c), c))


class Hinge(NamedTuple):
    vertices: tuple[int, int, int]
    edges: Pair


def hinges(g: Graph) -> list[Hinge]:
    result = []
    for middle, incident in enumerate(g.incidence):
        for i, first in enumerate(incident):
            for second in incident[i + 1 :]:
                a = g.edges[first][0] if g.edges[first][1] == middle else g.edges[first][1]
                b = g.edges[second][0] if g.edges[second][1] == middle else g.edges[second][1]
                result.append(Hinge((a, middle, b), (first, second)))
    return result


def components(g: Graph, removed_edges: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``g`` minus some edges; isolated vertices stay."""
    removed = set(removed_edges)
    seen = [False] * g.vertex_count
    result = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        members = []
        while queue:
            x = queue.popleft()
            members.append(x)
            for edge_id in g.incidence[x]:
                if edge_id in removed:
                    continue
                a, b = g.edges[edge_id]
                y = b if a == x else a
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        result.append(sorted(members))
    return result


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[int]]:
    """Place graphs side by side; returns the union and each graph's vertex offset."""
    offsets = []
    edges: list[Pair] = []
    n = 0
    for g in graphs:
        offsets.append(n)
        edges += [(a + n, b + n) for a, b in g.edges]
        n += g.vertex_count
    return Graph(n, tuple(edges)), offsets
