"""Slow, obviously-correct reference implementations and small test graphs."""

from collections import deque
from itertools import combinations

import networkx as nx
import numpy as np

from snark_psi.graph import Graph, build_graph, petersen, subtract_edge

CHUNK = 3**9


def naive_count_colorings(g: Graph) -> int:
    """Try all 3^m colour assignments and keep the proper ones."""
    m = g.edge_count
    if m == 0:
        return 1
    powers = 3 ** np.arange(m, dtype=np.int64)
    total = 0
    for start in range(0, 3**m, CHUNK):
        codes = np.arange(start, min(start + CHUNK, 3**m), dtype=np.int64)
        colors = (codes[:, None] // powers) % 3
        proper = np.ones(len(codes), dtype=bool)
        for incident in g.incidence:
            for i, first in enumerate(incident):
                for second in incident[i + 1 :]:
                    proper &= colors[:, first] != colors[:, second]
        total += int(proper.sum())
    return total


def naive_girth(g: Graph) -> int | None:
    best = None
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    best = length if best is None else min(best, length)
    return best


def naive_graph6(g: Graph) -> str:
    n = g.vertex_count
    bits = [int(g.has_edge(i, j)) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return chr(63 + n) + body


def k4() -> Graph:
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> Graph:
    return build_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def prism() -> Graph:
    return build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def cube() -> Graph:
    return build_graph(8, [(a, a ^ bit) for a in range(8) for bit in (1, 2, 4) if a < a ^ bit])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_minus(edge_id: int = 0) -> Graph:
    g = petersen()
    return subtract_edge(g, g.edge(edge_id)).graph


def small_corpus() -> list[Graph]:
    """Graphs with at most 14 edges and valences at most 3."""
    return [k4(), k33(), prism(), cube(), cycle(5), cycle(6), petersen_minus(0), petersen_minus(7)]


def naive_cycle_separating_cut(g: Graph, below: int) -> tuple[int, ...] | None:
    """A cut of fewer than ``below`` edges leaving two parts that hold cycles.

    Sizes go upward and, within a size, subsets start from the highest edge ids.
    """
    whole = g.to_networkx()
    for size in range(1, below):
        for subset in combinations(reversed(range(g.edge_count)), size):
            rest = nx.restricted_view(whole, [], [g.edges[e] for e in subset])
            cyclic = [
                part
                for part in nx.connected_components(rest)
                if rest.subgraph(part).number_of_edges() >= len(part)
            ]
            if len(cyclic) >= 2:
                return subset
    return None
