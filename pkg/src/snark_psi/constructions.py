"""Snark constructions that keep track of where every edge ends up.

Two joins are provided: the symmetric dot product of two snarks, and the
superposition of a snark with a double-Petersen gadget across a hinge.
"""

import hashlib
import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from math import prod
from typing import NamedTuple

from .coloring import is_colorable
from .config import Limits
from .connectivity import cyclic_connectivity_at_least, disjoint_five_cycle
from .errors import InvalidSpecError, UnknownEdgeError
from .graph import EdgeRef, Graph, Pair, build_graph, find_cycles, girth, petersen

logger = logging.getLogger(__name__)

DOT_PRODUCT_NAMES = ("omega", "d1", "d2_prime", "d2_hat", "D1_prime", "D1_hat", "D2")
BOUNDARY_NAMES = ("u1_a", "v2_b", "v3_c", "v4_d", "u5_e")


@dataclass(frozen=True)
class EdgeMap:
    """Where source edges went, plus the edges a construction created.

    ``forward`` keys are ``(tag, edge id)`` pairs; deleted edges have no key.
    """

    forward: Mapping[tuple[str, int], int]
    new_edges: Mapping[str, EdgeRef]

    def image(self, tag: str, edge_id: int) -> int:
        try:
            return self.forward[(tag, edge_id)]
        except KeyError:
            raise UnknownEdgeError(
                f"Edge {edge_id} of {tag} was deleted by the construction"
            ) from None

    def source_of(self, edge_id: int) -> tuple[str, int] | None:
        for key, target in self.forward.items():
            if target == edge_id:
                return key
        return None


class Orientation(NamedTuple):
    """An edge (head, tail) with the other neighbours of each end in order."""

    head: int
    tail: int
    head_neighbors: Pair
    tail_neighbors: Pair


def _others(g: Graph, vertex: int, excluded: int) -> Pair:
    first, second = sorted(w for w in g.neighbors(vertex) if w != excluded)
    return first, second


def default_orientation(g: Graph, e: EdgeRef) -> Orientation:
    head, tail = e.endpoints
    return Orientation(head, tail, _others(g, head, tail), _others(g, tail, head))


def _check_orientation(g: Graph, e: EdgeRef, o: Orientation) -> None:
    if {o.head, o.tail} != set(e.endpoints):
        raise InvalidSpecError(f"Orientation ({o.head}, {o.tail}) does not match edge {e.endpoints}")
    if set(o.head_neighbors) != set(_others(g, o.head, o.tail)) or set(o.tail_neighbors) != set(
        _others(g, o.tail, o.head)
    ):
        raise InvalidSpecError(f"Neighbour order does not match the graph around {e.endpoints}")
    if len({*o.head_neighbors, *o.tail_neighbors}) != 4:
        raise InvalidSpecError(f"The four neighbours of {e.endpoints} are not distinct")


def _check_input(g: Graph, name: str) -> None:
    if not g.is_cubic():
        raise InvalidSpecError(f"{name} is not cubic")
    if not g.is_connected():
        raise InvalidSpecError(f"{name} is not connected")
    if girth(g) < 5:
        raise InvalidSpecError(f"{name} has a cycle shorter than 5")


def _digest(*parts: object) -> str:
    return hashlib.sha256(repr(parts).encode()).hexdigest()


@dataclass(frozen=True)
class DotProductSpec:
    """G' = ``g1`` with E = ``e1``; the second factor Ĝ = ``g2`` with ε = ``e2``.

    ``u_order`` orients E as (U, V) and orders (U1, U2), (V1, V2); ``v_order``
    does the same for ε. Both default to ascending vertex ids.
    """

    g1: Graph
    e1: EdgeRef
    g2: Graph
    e2: EdgeRef
    u_order: Orientation | None = None
    v_order: Orientation | None = None

    @property
    def first(self) -> Orientation:
        return self.u_order or default_orientation(self.g1, self.e1)

    @property
    def second(self) -> Orientation:
        return self.v_order or default_orientation(self.g2, self.e2)

    @property
    def digest(self) -> str:
        return _digest(
            "dot", self.g1.fingerprint, self.first, self.g2.fingerprint, self.second
        )

    def validate(self) -> None:
        self.g1.check_edge(self.e1)
        self.g2.check_edge(self.e2)
        _check_input(self.g1, "G'")
        _check_input(self.g2, "Ĝ")
        _check_orientation(self.g1, self.e1, self.first)
        _check_orientation(self.g2, self.e2, self.second)


def _compact(
    g: Graph, dropped: Sequence[int], tag: str, offset: int
) -> tuple[dict[int, int], list[Pair], dict[tuple[str, int], int]]:
    """Drop vertices, renumber the rest from ``offset`` and keep the untouched edges."""
    relabel: dict[int, int] = {}
    for old in range(g.vertex_count):
        if old not in dropped:
            relabel[old] = offset + len(relabel)
    edges: list[Pair] = []
    forward: dict[tuple[str, int], int] = {}
    for edge_id, (a, b) in enumerate(g.edges):
        if a in relabel and b in relabel:
            forward[(tag, edge_id)] = len(edges)
            edges.append((relabel[a], relabel[b]))
    return relabel, edges, forward


def _assemble(
    n: int,
    parts: Sequence[tuple[list[Pair], dict[tuple[str, int], int]]],
    named: Sequence[tuple[str, Pair]],
) -> tuple[Graph, EdgeMap]:
    edges: list[Pair] = []
    forward: dict[tuple[str, int], int] = {}
    for part_edges, part_forward in parts:
        forward.update({key: len(edges) + i for key, i in part_forward.items()})
        edges += part_edges
    new_edges = {}
    for name, pair in named:
        new_edges[name] = len(edges)
        edges.append(pair)
    g = build_graph(n, edges)
    if not g.is_cubic() or not g.is_connected():
        raise InvalidSpecError("The construction did not produce a connected cubic graph")
    refs = {name: g.edge(edge_id) for name, edge_id in new_edges.items()}
    return g, EdgeMap(forward, refs)


def dot_product(spec: DotProductSpec) -> tuple[Graph, EdgeMap]:
    """Join G' and Ĝ through two new vertices T, W and seven new edges.

    Vertices of G' - {U, V} come first, then those of Ĝ - {u, v}, then T and W.
    """
    spec.validate()
    big, small = spec.first, spec.second
    rel1, edges1, fwd1 = _compact(spec.g1, (big.head, big.tail), "g1", 0)
    rel2, edges2, fwd2 = _compact(spec.g2, (small.head, small.tail), "g2", len(rel1))
    t = len(rel1) + len(rel2)
    w = t + 1
    u1, u2 = (rel1[x] for x in big.head_neighbors)
    v1, v2 = (rel1[x] for x in big.tail_neighbors)
    s1, s2 = (rel2[x] for x in small.head_neighbors)
    r1, r2 = (rel2[x] for x in small.tail_neighbors)
    pairs = ((t, w), (u1, s1), (u2, t), (t, s2), (v1, w), (w, r1), (v2, r2))
    named = list(zip(DOT_PRODUCT_NAMES, pairs))
    g, edge_map = _assemble(w + 1, [(edges1, fwd1), (edges2, fwd2)], named)
    logger.debug("Dot product: %d vertices, %d edges", g.vertex_count, g.edge_count)
    return g, edge_map


class Gadget(NamedTuple):
    graph: Graph
    # a, b, c, d, e: the five 2-valent vertices
    boundary: tuple[int, int, int, int, int]
    labels: dict[str, int]


def build_gadget() -> Gadget:
    """Two Petersen graphs glued into the 19-vertex superposition gadget.

    In each copy the outer cycle 0..4 is the chosen 5-cycle, with p_i at
    vertex ``i % 5`` and the second copy shifted by 10.
    """
    base = petersen()
    old_edges = [*base.edges, *((a + 10, b + 10) for a, b in base.edges)]
    nu = 20
    dropped = {2, 12}
    removed = {(0, 4), (10, 14)}
    joined = [(1, 11), (7, 17)]
    pairs = [
        (min(a, b), max(a, b))
        for a, b in old_edges + joined
        if a not in dropped and b not in dropped
    ]
    # (p3, q3) is joined through the extra vertex nu
    pairs = [pair for pair in pairs if pair not in removed] + [(3, nu), (nu, 13)]
    relabel = {old: new for new, old in enumerate(x for x in range(21) if x not in dropped)}
    graph = build_graph(19, [(relabel[a], relabel[b]) for a, b in pairs])

    labels = {f"p{i}": relabel[i % 5] for i in (1, 3, 4, 5)}
    labels |= {f"q{i}": relabel[10 + i % 5] for i in (1, 3, 4, 5)}
    labels |= {"p2'": relabel[7], "q2'": relabel[17], "nu": relabel[nu]}
    boundary = (labels["p5"], labels["p4"], labels["nu"], labels["q4"], labels["q5"])
    return Gadget(graph, boundary, labels)


@dataclass(frozen=True)
class SuperpositionSpec:
    """A snark ``g0`` and a path u1..u5 whose middle hinge gets replaced."""

    g0: Graph
    path: tuple[int, int, int, int, int]

    @property
    def pendants(self) -> tuple[int, int, int]:
        """v2, v3, v4: the third neighbours of u2, u3, u4."""
        u = self.path
        return tuple(  # type: ignore[return-value]
            next(w for w in self.g0.neighbors(u[i]) if w not in (u[i - 1], u[i + 1]))
            for i in (1, 2, 3)
        )

    @property
    def hinge(self) -> tuple[int, int, int]:
        return self.path[1], self.path[2], self.path[3]

    @property
    def digest(self) -> str:
        return _digest("superpose", self.g0.fingerprint, self.path)

    def validate(self, *, check_snark: bool = True, limits: Limits = Limits()) -> None:
        g, u = self.g0, self.path
        if len(set(u)) != 5 or any(not 0 <= x < g.vertex_count for x in u):
            raise InvalidSpecError(f"Path {u} needs five distinct vertices of the graph")
        for a, b in zip(u, u[1:]):
            if not g.has_edge(a, b):
                raise InvalidSpecError(f"Path {u} uses ({a}, {b}), which is not an edge")
        _check_input(g, "G0")
        v = self.pendants
        if len({*u, *v}) != 8:
            raise InvalidSpecError(f"Pendants {v} of path {u} are not distinct from the path")
        if disjoint_five_cycle(g, self.hinge) is None:
            raise InvalidSpecError(f"No 5-cycle of G0 avoids the hinge {self.hinge}")
        if check_snark:
            if is_colorable(g):
                raise InvalidSpecError("G0 is 3-edge-colourable")
            if not cyclic_connectivity_at_least(g, 4, limits).passed:
                raise InvalidSpecError("G0 is not cyclically 4-edge-connected")


def superpose(
    spec: SuperpositionSpec, *, check_snark: bool = True, limits: Limits = Limits()
) -> tuple[Graph, EdgeMap]:
    """Replace the hinge u2, u3, u4 of ``g0`` by the gadget.

    The five edges (u1,a), (v2,b), (v3,c), (v4,d), (u5,e) connect the two;
    ``new_edges["E"]`` is (v3, c). Checking that G0 is cyclically
    4-edge-connected counts against ``limits.subset_checks``.
    """
    spec.validate(check_snark=check_snark, limits=limits)
    u1, u2, u3, u4, u5 = spec.path
    v2, v3, v4 = spec.pendants
    rel0, edges0, fwd0 = _compact(spec.g0, (u2, u3, u4), "g0", 0)
    gadget = build_gadget()
    offset = len(rel0)
    _, edges1, fwd1 = _compact(gadget.graph, (), "gadget", offset)
    a, b, c, d, e = (offset + x for x in gadget.boundary)
    named = list(
        zip(BOUNDARY_NAMES, ((rel0[u1], a), (rel0[v2], b), (rel0[v3], c), (rel0[v4], d), (rel0[u5], e)))
    )
    g, edge_map = _assemble(offset + gadget.graph.vertex_count, [(edges0, fwd0), (edges1, fwd1)], named)
    if girth(g) < 5:
        raise InvalidSpecError("Superposition produced a cycle shorter than 5")
    new_edges = {**edge_map.new_edges, "E": edge_map.new_edges["v3_c"]}
    logger.debug("Superposed along %s: %d vertices", spec.path, g.vertex_count)
    return g, EdgeMap(edge_map.forward, new_edges)


def surviving_edges_for_5x(spec: SuperpositionSpec) -> set[EdgeRef]:
    """Output images of the G0 edges that avoid the replaced hinge."""
    g, edge_map = superpose(spec, check_snark=False)
    return {
        g.edge(target) for (tag, _), target in edge_map.forward.items() if tag == "g0"
    }


class PathRole(str, Enum):
    """How a superposition path treats the tracked edge."""

    # the tracked edge becomes (u3, v3)
    TRACKED = "tracked"
    # the tracked edge avoids the hinge and survives
    SURVIVING = "surviving"


def _paths(g: Graph) -> Iterator[tuple[int, ...]]:
    def extend(path: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(path) == 5:
            yield path
            return
        for w in sorted(g.neighbors(path[-1])):
            if w not in path:
                yield from extend((*path, w))

    for start in range(g.vertex_count):
        yield from extend((start,))


def default_superposition_path(
    g0: Graph, tracked: EdgeRef | None = None, role: PathRole = PathRole.SURVIVING
) -> SuperpositionSpec:
    """The lexicographically first valid path for the tracked edge's role."""
    _check_input(g0, "G0")
    if tracked is not None:
        g0.check_edge(tracked)
    elif role is PathRole.TRACKED:
        raise InvalidSpecError("A tracked edge is needed to place it at (u3, v3)")
    five_cycles = [c for c in find_cycles(g0, 5) if len(c) == 5]
    for path in _paths(g0):
        hinge = set(path[1:4])
        if role is PathRole.TRACKED:
            assert tracked is not None
            if path[2] not in tracked.endpoints or tracked.other(path[2]) in path:
                continue
        elif tracked is not None and tracked.touches(hinge):
            continue
        if not any(hinge.isdisjoint(cycle) for cycle in five_cycles):
            continue
        spec = SuperpositionSpec(g0, path)  # type: ignore[arg-type]
        if len({*path, *spec.pendants}) != 8:
            continue
        logger.debug("Superposition path %s for role %s", path, role.value)
        return spec
    raise InvalidSpecError(f"No superposition path fits the {role.value} role")


class StepKind(str, Enum):
    DOT = "dot"
    SUPERPOSE = "superpose"


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    spec_digest: str
    factor: int
    tracked_before: Pair
    tracked_after: Pair


@dataclass(frozen=True)
class ConstructionTrace:
    initial_digest: str
    initial_psi: int = 1
    steps: tuple[TraceStep, ...] = field(default_factory=tuple)

    @property
    def predicted_psi(self) -> int:
        return self.initial_psi * prod(step.factor for step in self.steps)

    def extend(self, step: TraceStep) -> "ConstructionTrace":
        return ConstructionTrace(self.initial_digest, self.initial_psi, (*self.steps, step))
