"""graph6 reading and writing, one graph per line."""

import logging
import pathlib

import networkx as nx

from .errors import Graph6Error, GraphError
from .graph import Graph, build_graph

logger = logging.getLogger(__name__)


def decode(line: str | bytes) -> Graph:
    data = line.encode("ascii") if isinstance(line, str) else line
    data = data.strip()
    if not data:
        raise Graph6Error("Empty graph6 line")
    try:
        parsed = nx.from_graph6_bytes(data)
    except (ValueError, IndexError, nx.NetworkXError) as e:
        raise Graph6Error(f"Malformed graph6 data {data[:20]!r}: {e}") from None
    n = parsed.number_of_nodes()
    try:
        return build_graph(n, sorted((min(u, v), max(u, v)) for u, v in parsed.edges()))
    except GraphError as e:
        raise Graph6Error(str(e)) from None


def encode(g: Graph) -> str:
    """graph6 text for ``g`` without header or trailing newline; labels are kept."""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def read_graphs(path: pathlib.Path) -> list[Graph]:
    try:
        lines = path.read_bytes().splitlines()
    except OSError as e:
        raise Graph6Error(f"Cannot read {path}: {e.strerror}") from None
    graphs = [decode(line) for line in lines if line.strip()]
    logger.debug("Read %d graphs from %s", len(graphs), path)
    return graphs


def read_graph(path: pathlib.Path, index: int = 0) -> Graph:
    graphs = read_graphs(path)
    if not 0 <= index < len(graphs):
        raise Graph6Error(f"{path} holds {len(graphs)} graphs; index {index} is out of range")
    return graphs[index]
