"""Proper 3-edge-colourings: exact counting, enumeration and psi.

Colours are the non-zero elements of the Klein four-group, encoded as the
2-bit integers 1, 2 and 3 so that group addition is XOR.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from itertools import islice
from typing import NamedTuple

from typing_extensions import Self

from .errors import (
    ChainColorError,
    ColorableGraphError,
    CountOverflowError,
    DivisibilityError,
    NonCubicError,
    StarPatternError,
    ValenceError,
)
from .graph import EdgeRef, Graph, find_cycles, reinsert_edge, subtract_edge

logger = logging.getLogger(__name__)

MAX_COUNT = 2**63 - 1


class Color(IntEnum):
    ZERO = 0
    A = 1
    B = 2
    C = 3

    def __add__(self, other: int) -> "Color":  # type: ignore[override]
        return Color(int(self) ^ int(other))

    @classmethod
    def nonzero(cls) -> tuple[Self, ...]:
        return tuple(c for c in cls if c)

    @property
    def symbol(self) -> str:
        return "0abc"[self]


@dataclass(frozen=True)
class EdgeColoring:
    graph: Graph
    colors: tuple[Color, ...]

    def __post_init__(self) -> None:
        if len(self.colors) != self.graph.edge_count:
            raise ValueError(
                f"A colouring needs {self.graph.edge_count} colours, got {len(self.colors)}"
            )
        if not all(self.colors):
            raise ValueError("Edge colours must be non-zero")

    def __getitem__(self, edge_id: int) -> Color:
        return self.colors[edge_id]

    def is_proper(self) -> bool:
        for incident in self.graph.incidence:
            seen = [self.colors[e] for e in incident]
            if len(set(seen)) != len(seen):
                return False
        return True

    def vertex_sum(self, vertex: int) -> Color:
        total = Color.ZERO
        for e in self.graph.incidence[vertex]:
            total = total + self.colors[e]
        return total

    def word(self, edge_ids: Iterable[int]) -> str:
        return "".join(self.colors[e].symbol for e in edge_ids)


@dataclass(frozen=True)
class Census:
    colorings: int
    with_edge: bool = False

    @property
    def decompositions(self) -> int:
        return self.colorings // 6

    @property
    def psi(self) -> int | None:
        if not self.with_edge or self.decompositions % 3:
            return None
        return self.decompositions // 3


@dataclass(frozen=True)
class KempeChain:
    edges: tuple[int, ...]
    colors: frozenset[Color]
    closed: bool


def _check_valences(g: Graph) -> None:
    for vertex, incident in enumerate(g.incidence):
        if len(incident) > 3:
            raise ValenceError(
                f"Vertex {vertex} has valence {len(incident)}; at most 3 is allowed"
            )


def _bfs_edge_order(g: Graph, root: int) -> list[int]:
    order: list[int] = []
    placed = [False] * g.edge_count
    visited = [False] * g.vertex_count
    for start in [root, *range(g.vertex_count)]:
        if visited[start]:
            continue
        visited[start] = True
        queue = [start]
        for x in queue:
            for e in g.incidence[x]:
                if not placed[e]:
                    placed[e] = True
                    order.append(e)
                a, b = g.edges[e]
                y = b if a == x else a
                if not visited[y]:
                    visited[y] = True
                    queue.append(y)
    return order


FULL = 0b1110


class _Search:
    """Backtracking state: one colour per edge, a colour bitmask per vertex.

    Assigning an edge propagates to every uncoloured edge sharing a vertex with
    it; an edge left with one admissible colour is forced, an edge left with
    none fails the branch.
    """

    def __init__(self, g: Graph, parity_pruning: bool = False) -> None:
        self.g = g
        self.ends = g.edges
        self.incidence = g.incidence
        self.valence = [len(ids) for ids in g.incidence]
        self.color = [0] * g.edge_count
        self.mask = [0] * g.vertex_count
        self.trail: list[int] = []
        self.parity_pruning = parity_pruning
        self.nodes = 0
        self.pruned = 0
        root = next((v for v, k in enumerate(self.valence) if k >= 2), 0)
        self.order = _bfs_edge_order(g, root) if g.vertex_count else []
        self.hinge = tuple(g.incidence[root][:2]) if self.valence and self.valence[root] >= 2 else ()

    def assign(self, edge: int, c: int) -> bool:
        color, mask, ends, incidence = self.color, self.mask, self.ends, self.incidence
        pending = [(edge, c)]
        while pending:
            e, c = pending.pop()
            current = color[e]
            if current:
                if current != c:
                    return False
                continue
            u, v = ends[e]
            bit = 1 << c
            if (mask[u] | mask[v]) & bit:
                return False
            color[e] = c
            mask[u] |= bit
            mask[v] |= bit
            self.trail.append(e)
            for w in (u, v):
                for f in incidence[w]:
                    if color[f]:
                        continue
                    a, b = ends[f]
                    free = FULL & ~(mask[a] | mask[b])
                    if not free:
                        return False
                    if free & (free - 1) == 0:
                        pending.append((f, free.bit_length() - 1))
        return True

    def undo(self, mark: int) -> None:
        color, mask, ends, trail = self.color, self.mask, self.ends, self.trail
        while len(trail) > mark:
            e = trail.pop()
            u, v = ends[e]
            bit = ~(1 << color[e])
            mask[u] &= bit
            mask[v] &= bit
            color[e] = 0

    def parity_ok(self) -> bool:
        """Cheap necessary condition from the parity lemma.

        Within a component of the uncoloured edges whose vertices are all
        trivalent, the vertices still missing colour x are matched by the
        x-coloured edges to come, so there must be an even number of them.
        """
        color, ends, incidence = self.color, self.ends, self.incidence
        seen: set[int] = set()
        for start, ids in enumerate(incidence):
            if start in seen or all(color[e] for e in ids):
                continue
            seen.add(start)
            stack = [start]
            trivalent = True
            missing = [0, 0, 0, 0]
            while stack:
                x = stack.pop()
                if self.valence[x] != 3:
                    trivalent = False
                for c in (1, 2, 3):
                    if not self.mask[x] & (1 << c):
                        missing[c] += 1
                for e in incidence[x]:
                    if color[e]:
                        continue
                    a, b = ends[e]
                    y = b if a == x else a
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if trivalent and (missing[1] | missing[2] | missing[3]) & 1:
                return False
        return True

    def next_position(self, pos: int) -> int:
        order, color = self.order, self.color
        while pos < len(order) and color[order[pos]]:
            pos += 1
        return pos

    def count(self, pos: int = 0, stop_after: int | None = None) -> int:
        pos = self.next_position(pos)
        if pos == len(self.order):
            return 1
        self.nodes += 1
        if self.parity_pruning and not self.parity_ok():
            self.pruned += 1
            return 0
        edge = self.order[pos]
        total = 0
        for c in (1, 2, 3):
            mark = len(self.trail)
            if self.assign(edge, c):
                total += self.count(pos + 1, stop_after)
            self.undo(mark)
            if stop_after is not None and total >= stop_after:
                break
        return total

    def solutions(self, pos: int = 0) -> Iterator[tuple[int, ...]]:
        pos = self.next_position(pos)
        if pos == len(self.order):
            yield tuple(self.color)
            return
        edge = self.order[pos]
        for c in (1, 2, 3):
            mark = len(self.trail)
            if self.assign(edge, c):
                yield from self.solutions(pos + 1)
            self.undo(mark)

    def prefixes(self, depth: int, pos: int = 0) -> Iterator[list[tuple[int, int]]]:
        """Branch decisions down to ``depth`` choice points, for splitting work."""
        pos = self.next_position(pos)
        if depth == 0 or pos == len(self.order):
            yield []
            return
        edge = self.order[pos]
        for c in (1, 2, 3):
            mark = len(self.trail)
            if self.assign(edge, c):
                for rest in self.prefixes(depth - 1, pos + 1):
                    yield [(edge, c), *rest]
            self.undo(mark)


def _fix_hinge(search: _Search) -> int:
    """Pin the first hinge to colours a, b; returns the symmetry factor."""
    if len(search.hinge) == 2:
        first, second = search.hinge
        if not (search.assign(first, Color.A) and search.assign(second, Color.B)):
            return 0
        return 6
    if search.order:
        search.assign(search.order[0], Color.A)
        return 3
    return 1


def _count_subtree(g: Graph, parity_pruning: bool, prefix: list[tuple[int, int]]) -> int:
    search = _Search(g, parity_pruning)
    _fix_hinge(search)
    for edge, c in prefix:
        search.assign(edge, c)
    return search.count()


def count_colorings(
    g: Graph, *, parity_pruning: bool = False, workers: int = 1, split_depth: int = 6
) -> int:
    """Exact number of proper 3-edge-colourings of ``g``.

    The first hinge is fixed to colours (a, b) and the result multiplied by 6,
    since colour permutations act freely on colourings.
    """
    _check_valences(g)
    search = _Search(g, parity_pruning)
    factor = _fix_hinge(search)
    if factor == 0:
        return 0
    if workers > 1:
        prefixes = list(search.prefixes(split_depth))
        logger.debug("Counting %d subtrees on %d workers", len(prefixes), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partial = pool.map(
                _count_subtree,
                [g] * len(prefixes),
                [parity_pruning] * len(prefixes),
                prefixes,
            )
            total = sum(partial)
    else:
        total = search.count()
        logger.debug(
            "Counted %d colourings over %d search nodes (%d pruned by parity)",
            total * factor,
            search.nodes,
            search.pruned,
        )
    total *= factor
    if total > MAX_COUNT:
        raise CountOverflowError(f"Colouring count {total} does not fit in 64 bits")
    return total


def enumerate_colorings(g: Graph, limit: int | None = None) -> Iterator[EdgeColoring]:
    """Every proper colouring exactly once, in a fixed order."""
    _check_valences(g)
    solutions = _Search(g).solutions()
    if limit is not None:
        solutions = islice(solutions, limit)
    for colors in solutions:
        yield EdgeColoring(g, tuple(Color(c) for c in colors))


CACHE_SIZE = 1024


@lru_cache(maxsize=CACHE_SIZE)
def is_colorable(g: Graph) -> bool:
    _check_valences(g)
    search = _Search(g)
    return bool(_fix_hinge(search)) and search.count(stop_after=1) > 0


@lru_cache(maxsize=CACHE_SIZE)
def _subtracted_count(g: Graph, e: EdgeRef, workers: int) -> int:
    return count_colorings(subtract_edge(g, e).graph, workers=workers)


def clear_caches() -> None:
    is_colorable.cache_clear()
    _subtracted_count.cache_clear()


def psi(g: Graph, e: EdgeRef, *, workers: int = 1) -> int:
    """Colourings of ``G_e`` divided by 18, for a non-colourable cubic ``g``."""
    g.check_edge(e)
    if not g.is_cubic():
        raise NonCubicError("psi is defined for cubic graphs only")
    if is_colorable(g):
        raise ColorableGraphError("psi is only defined for non-colourable graphs")
    colorings = _subtracted_count(g, e, workers)
    if colorings % 18:
        raise DivisibilityError(
            f"G_e has {colorings} colourings, which is not a multiple of 18"
        )
    return colorings // 18


def census(g: Graph, e: EdgeRef | None = None, *, workers: int = 1) -> Census:
    if e is None:
        return Census(count_colorings(g, workers=workers))
    value = psi(g, e, workers=workers)
    return Census(18 * value, with_edge=True)


def _chain_step(g: Graph, f: EdgeColoring, edge: int, at: int, pair: frozenset[Color]) -> int | None:
    for nxt in g.incidence[at]:
        if nxt != edge and f[nxt] in pair:
            return nxt
    return None


def kempe_chain(g: Graph, f: EdgeColoring, d: EdgeRef, x: Color, y: Color) -> KempeChain:
    g.check_edge(d)
    if x == y or not x or not y:
        raise ChainColorError("A Kempe chain needs two distinct non-zero colours")
    pair = frozenset((x, y))
    if f[d.edge_id] not in pair:
        raise ChainColorError(
            f"Edge {d.endpoints} is coloured {f[d.edge_id].symbol}, not {x.symbol} or {y.symbol}"
        )

    def walk(edge: int, at: int) -> tuple[list[int], bool]:
        path: list[int] = []
        while True:
            nxt = _chain_step(g, f, edge, at, pair)
            if nxt is None:
                return path, False
            if nxt == d.edge_id:
                return path, True
            path.append(nxt)
            a, b = g.edges[nxt]
            at = b if a == at else a
            edge = nxt

    u, v = d.endpoints
    forward, closed = walk(d.edge_id, v)
    if closed:
        return KempeChain((d.edge_id, *forward), pair, True)
    backward, _ = walk(d.edge_id, u)
    return KempeChain((*reversed(backward), d.edge_id, *forward), pair, False)


def kempe_swap(f: EdgeColoring, chain: KempeChain) -> EdgeColoring:
    x, y = sorted(chain.colors)
    colors = list(f.colors)
    for e in chain.edges:
        colors[e] = y if colors[e] == x else x
    return EdgeColoring(f.graph, tuple(colors))


def c_prime_counts(g_e: Graph, d1: EdgeRef, d2: EdgeRef) -> tuple[int, int, int]:
    """Sizes of the classes of colourings with d2 and its neighbours fixed to abc.

    The colourings are split by the colour of ``d1``. The graph obtained by
    reinserting the subtracted edge must be non-colourable.
    """
    g_e.check_edge(d1)
    g_e.check_edge(d2)
    if is_colorable(reinsert_edge(g_e, d1, d2)):
        raise ColorableGraphError("The graph before subtraction is colourable")
    v = d2.endpoints[0]
    e1, e2 = sorted(e for e in g_e.incidence[v] if e != d2.edge_id)
    tally = {Color.A: 0, Color.B: 0, Color.C: 0}
    for f in enumerate_colorings(g_e):
        if (f[d2.edge_id], f[e1], f[e2]) == (Color.A, Color.B, Color.C):
            tally[f[d1.edge_id]] += 1
    return tally[Color.A], tally[Color.B], tally[Color.C]


def vertex_boundary_sum(f: EdgeColoring, vertices: Iterable[int]) -> Color:
    total = Color.ZERO
    for vertex in vertices:
        total = total + f.vertex_sum(vertex)
    return total


def missing_color_count(g: Graph, f: EdgeColoring, x: Color) -> int:
    return sum(1 for ids in g.incidence if all(f[e] != x for e in ids))


def check_parity(g: Graph, f: EdgeColoring, x: Color) -> bool:
    return missing_color_count(g, f, x) % 2 == 0


def cut_color_sum(f: EdgeColoring, edge_ids: Iterable[int]) -> Color:
    total = Color.ZERO
    for e in edge_ids:
        total = total + f[e]
    return total


class StarPattern(NamedTuple):
    rotation: int
    x: Color
    y: Color
    z: Color


def star_boundary_pattern(f: EdgeColoring, star: Sequence[int]) -> StarPattern:
    """Find the rotation under which the star's outer edges read x, y, x, x, z."""
    if len(star) != 5:
        raise StarPatternError(f"A star has five boundary edges, got {len(star)}")
    colors = [f[e] for e in star]
    for i in range(5):
        x, y, x2, x3, z = (colors[(i + k) % 5] for k in range(5))
        if x == x2 == x3 and len({x, y, z}) == 3:
            return StarPattern(i, x, y, z)
    word = "".join(c.symbol for c in colors)
    raise StarPatternError(f"Boundary colours {word} match no rotation of x,y,x,x,z")


class Star(NamedTuple):
    # star vertices u1..u5, (u_i, u_{i+2}) being edges
    vertices: tuple[int, ...]
    boundary: tuple[int, ...]
    inner: tuple[int, ...]


def find_stars(g: Graph) -> list[Star]:
    """Every 5-cycle whose vertices each carry exactly one outside edge."""
    stars = []
    for cycle in find_cycles(g, 5):
        if len(cycle) != 5:
            continue
        # (u_i, u_{i+2}) adjacent means the star runs through the cycle two steps at a time
        vertices = tuple(cycle[(2 * i) % 5] for i in range(5))
        inner = tuple(g.find_edge(cycle[i], cycle[(i + 1) % 5]).edge_id for i in range(5))
        boundary = []
        for vertex in vertices:
            outside = [e for e in g.incidence[vertex] if e not in inner]
            if len(outside) != 1:
                break
            boundary.append(outside[0])
        else:
            if len(set(boundary)) == 5:
                stars.append(Star(vertices, tuple(boundary), inner))
    return stars

