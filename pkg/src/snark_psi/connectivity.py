"""Cut sets, cyclic edge-connectivity certificates and edge-disjoint paths."""

import logging
import random
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

import networkx as nx

from .config import Limits
from .errors import (
    BudgetExceededError,
    ConnectivityError,
    NonCubicError,
    NotACutSetError,
    OverlappingSetsError,
    VertexSetError,
)
from .graph import Graph, components, find_cycles

logger = logging.getLogger(__name__)

MAX_CYCLIC_K = 6


@dataclass(frozen=True)
class CutSet:
    edge_ids: frozenset[int]
    fingerprint: str
    minimal: bool
    cycle_separating: bool

    @property
    def size(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]
    endpoint_sets: tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class ConnectivityCertificate:
    k: int
    passed: bool
    subsets_examined: int
    counterexample: CutSet | None = None


def _core(g: Graph, removed: frozenset[int] | set[int]) -> list[bool]:
    """Vertices left after repeatedly trimming valence <= 1 from ``g - removed``."""
    degree = [sum(1 for e in ids if e not in removed) for ids in g.incidence]
    alive = [True] * g.vertex_count
    stack = [v for v, d in enumerate(degree) if d <= 1]
    while stack:
        x = stack.pop()
        if not alive[x]:
            continue
        alive[x] = False
        for e in g.incidence[x]:
            if e in removed:
                continue
            a, b = g.edges[e]
            y = b if a == x else a
            if alive[y]:
                degree[y] -= 1
                if degree[y] == 1:
                    stack.append(y)
    return alive


def find_cycle(g: Graph, removed_edges: Iterable[int] = ()) -> list[int] | None:
    """A cycle of ``g`` minus some edges, or None when that graph is a forest.

    Once every vertex has valence at least two, walking without backtracking
    must revisit a vertex.
    """
    removed = set(removed_edges)
    alive = _core(g, removed)
    start = next((v for v, ok in enumerate(alive) if ok), None)
    if start is None:
        return None
    walk = [start]
    position = {start: 0}
    previous_edge = -1
    x = start
    while True:
        edge = next(
            e
            for e in g.incidence[x]
            if e not in removed and e != previous_edge and alive[_other(g, e, x)]
        )
        y = _other(g, edge, x)
        if y in position:
            return walk[position[y] :]
        position[y] = len(walk)
        walk.append(y)
        previous_edge, x = edge, y


def _other(g: Graph, edge: int, vertex: int) -> int:
    a, b = g.edges[edge]
    return b if a == vertex else a


def _is_disconnected(g: Graph, removed: frozenset[int] | set[int]) -> bool:
    return len(components(g, removed)) > 1


def _separates_cycles(g: Graph, removed: frozenset[int] | set[int]) -> bool:
    parts = components(g, removed)
    if len(parts) < 2:
        return False
    alive = _core(g, removed)
    return sum(1 for part in parts if any(alive[v] for v in part)) >= 2


def classify_cut(g: Graph, edge_ids: Iterable[int]) -> CutSet:
    s = frozenset(edge_ids)
    if not is_cut_set(g, s):
        raise NotACutSetError(f"Removing {sorted(s)} leaves the graph connected")
    return CutSet(s, g.fingerprint, is_minimal_cut_set(g, s), _separates_cycles(g, s))


def is_cut_set(g: Graph, s: Iterable[int]) -> bool:
    return _is_disconnected(g, set(s))


def is_minimal_cut_set(g: Graph, s: Iterable[int]) -> bool:
    """True when dropping any one edge from the cut reconnects the graph."""
    edges = set(s)
    if not _is_disconnected(g, edges):
        raise NotACutSetError(f"Removing {sorted(edges)} leaves the graph connected")
    return all(not _is_disconnected(g, edges - {e}) for e in edges)


def _scan(g: Graph, size: int, first: int) -> tuple[int, tuple[int, ...] | None]:
    examined = 0
    for rest in combinations(range(first + 1, g.edge_count), size - 1):
        examined += 1
        subset = (first, *rest)
        if _separates_cycles(g, frozenset(subset)):
            return examined, subset
    return examined, None


def cyclic_connectivity_at_least(
    g: Graph, k: int, limits: Limits = Limits()
) -> ConnectivityCertificate:
    """Check every edge subset of size below ``k`` for a cycle-separating cut.

    Sizes are scanned in increasing order, so a counterexample is always one
    of the smallest cycle-separating cuts.
    """
    if not g.is_cubic():
        raise NonCubicError("Cyclic connectivity is certified for cubic graphs")
    if not g.is_connected():
        raise ConnectivityError("Cyclic connectivity is certified for connected graphs")
    if not 1 <= k <= MAX_CYCLIC_K:
        raise ValueError(f"k must lie in 1..{MAX_CYCLIC_K}, got {k}")
    needed = sum(comb(g.edge_count, size) for size in range(1, k))
    if needed > limits.subset_checks:
        raise BudgetExceededError(
            f"Certifying k={k} needs {needed} subset checks; the budget is {limits.subset_checks}"
        )
    examined = 0
    for size in range(1, k):
        firsts = list(range(g.edge_count - size + 1))
        if limits.workers > 1:
            with ProcessPoolExecutor(max_workers=limits.workers) as pool:
                results = list(pool.map(_scan, [g] * len(firsts), [size] * len(firsts), firsts))
        else:
            results = []
            for first in firsts:
                results.append(_scan(g, size, first))
                if results[-1][1] is not None:
                    break
        examined += sum(count for count, _ in results)
        hits = [subset for _, subset in results if subset is not None]
        if hits:
            cut = classify_cut(g, min(hits))
            logger.info("Found a cycle-separating cut of size %d: %s", size, sorted(cut.edge_ids))
            return ConnectivityCertificate(k, False, examined, cut)
    logger.debug("Cyclic %d-edge-connectivity certified over %d subsets", k, examined)
    return ConnectivityCertificate(k, True, examined)


def _check_vertex_set(g: Graph, vertices: frozenset[int], name: str) -> None:
    if not vertices:
        raise VertexSetError(f"Vertex set {name} is empty")
    if any(not 0 <= v < g.vertex_count for v in vertices):
        raise VertexSetError(f"Vertex set {name} leaves the vertex range")
    inside = g.to_networkx().subgraph(vertices)
    if not nx.is_connected(inside):
        raise VertexSetError(f"Vertex set {name} does not induce a connected subgraph")


SOURCE = "source"
SINK = "sink"


def _flow_network(g: Graph, a: frozenset[int], b: frozenset[int]) -> nx.DiGraph:
    # arcs only leave A and only enter B; a path never needs to come back
    network = nx.DiGraph()
    for u, v in g.edges:
        if (u in a and v in a) or (u in b and v in b):
            continue
        if u in a or v in b:
            network.add_edge(u, v, capacity=1)
        if v in a or u in b:
            network.add_edge(v, u, capacity=1)
        if not (u in a or v in a or u in b or v in b):
            network.add_edge(u, v, capacity=1)
            network.add_edge(v, u, capacity=1)
    for u in a:
        network.add_edge(SOURCE, u)
    for v in b:
        network.add_edge(v, SINK)
    return network


def _decompose(
    g: Graph, flow: dict[object, dict[object, int]], a: frozenset[int], b: frozenset[int], k: int
) -> list[tuple[int, ...]]:
    # net flow per undirected edge, with opposite unit flows cancelled
    arcs: dict[int, set[int]] = {}
    for u, v in g.edges:
        forward = flow.get(u, {}).get(v, 0)
        backward = flow.get(v, {}).get(u, 0)
        if forward > backward:
            arcs.setdefault(u, set()).add(v)
        elif backward > forward:
            arcs.setdefault(v, set()).add(u)
    paths = []
    for start in sorted(a):
        while len(paths) < k and arcs.get(start):
            walk = [start]
            x = start
            while x not in b:
                y = min(arcs[x])
                arcs[x].discard(y)
                walk.append(y)
                x = y
            # trim to the last A vertex before reaching B
            last_a = max(i for i, vertex in enumerate(walk) if vertex in a)
            walk = walk[last_a:]
            paths.append(
                tuple(g.find_edge(walk[i], walk[i + 1]).edge_id for i in range(len(walk) - 1))
            )
    return paths


def edge_disjoint_paths(
    g: Graph, a: Iterable[int], b: Iterable[int], k: int
) -> PathSystem | CutSet:
    """Either ``k`` edge-disjoint A-B paths or a cut of fewer than ``k`` edges.

    This is the edge form of Menger's theorem with both vertex sets contracted.
    """
    side_a, side_b = frozenset(a), frozenset(b)
    if side_a & side_b:
        raise OverlappingSetsError(f"Vertex sets share {sorted(side_a & side_b)}")
    _check_vertex_set(g, side_a, "A")
    _check_vertex_set(g, side_b, "B")
    network = _flow_network(g, side_a, side_b)
    value, flow = nx.maximum_flow(network, SOURCE, SINK)
    if value >= k:
        paths = _decompose(g, flow, side_a, side_b, k)
        return PathSystem(tuple(paths[:k]), (side_a, side_b))
    _, (reachable, _) = nx.minimum_cut(network, SOURCE, SINK)
    cut = {
        edge_id
        for edge_id, (u, v) in enumerate(g.edges)
        if (u in reachable) != (v in reachable)
    }
    logger.debug("Only %d edge-disjoint paths; cut %s", value, sorted(cut))
    return CutSet(
        frozenset(cut), g.fingerprint, is_minimal_cut_set(g, cut), _separates_cycles(g, cut)
    )


def _minimal_cuts(g: Graph, size: int) -> Iterator[CutSet]:
    for subset in combinations(range(g.edge_count), size):
        edges = frozenset(subset)
        if _is_disconnected(g, edges) and is_minimal_cut_set(g, edges):
            yield CutSet(edges, g.fingerprint, True, _separates_cycles(g, edges))


def sample_minimal_cut_sets(g: Graph, size: int, count: int, seed: int) -> list[CutSet]:
    """A seeded sample of the minimal cut sets with ``size`` edges."""
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    found = list(_minimal_cuts(g, size))
    if count < len(found):
        found = random.Random(seed).sample(found, count)
    return sorted(found, key=lambda cut: sorted(cut.edge_ids))


def disjoint_five_cycle(g: Graph, vertices: Iterable[int]) -> tuple[int, ...] | None:
    avoided = set(vertices)
    for cycle in find_cycles(g, 5):
        if len(cycle) == 5 and avoided.isdisjoint(cycle):
            return cycle
    return None
