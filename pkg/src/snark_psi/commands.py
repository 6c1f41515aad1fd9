import logging
import pathlib
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Annotated

import typer
from rich.console import Console

from . import coloring, synthesis
from .config import DEFAULT_SUBSET_CHECKS, DEFAULT_VERIFY_MAX_VERTICES, Limits
from .constructions import DotProductSpec, Orientation, SuperpositionSpec, dot_product, superpose
from .errors import EdgeSpecError, SnarkPsiError, VerificationMismatchError
from .graph import EdgeRef, Graph
from .graph6 import encode, read_graph
from .reports import (
    census_document,
    dumps,
    edge_map_document,
    snark_report_document,
    synthesis_document,
    theorems_document,
)
from .utils.cli import get_console, setup_logging

logger = logging.getLogger(__name__)

GraphFile = Annotated[
    pathlib.Path,
    typer.Argument(help="A graph6 file, one graph per line.", exists=True, dir_okay=False),
]
Index = Annotated[int, typer.Option("--index", min=0, help="Which graph of the file to use.")]
Verbose = Annotated[
    bool, typer.Option("--verbose", "-v", help="Log search progress to the error stream.")
]
Threads = Annotated[
    int, typer.Option("--threads", min=1, help="Worker processes for counting and cut scans.")
]
Budget = Annotated[
    int,
    typer.Option("--budget", min=1, help="Most edge subsets a connectivity certificate may examine."),
]
Out = Annotated[
    pathlib.Path | None,
    typer.Option("--out", dir_okay=False, help="Also write the resulting graph as graph6 here."),
]


def _exit_with_error(console: Console, error_msg: str, code: int = 2) -> None:
    console.print(f"[bold red]Error:[/bold red] {error_msg}")
    raise typer.Exit(code=code)


@contextmanager
def _session(verbose: bool) -> Iterator[Console]:
    console = get_console()
    setup_logging(console, verbose)
    try:
        yield console
    except VerificationMismatchError as e:
        _exit_with_error(console, str(e), code=1)
    except SnarkPsiError as e:
        _exit_with_error(console, str(e))


def _ints(text: str, count: int, what: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise EdgeSpecError(f"{what} {text!r} must be {count} comma-separated integers") from None
    if len(values) != count:
        raise EdgeSpecError(f"{what} {text!r} must be {count} comma-separated integers")
    return values


def parse_edge(g: Graph, text: str) -> EdgeRef:
    """Resolve ``"U,V"`` against the decoded labelling."""
    u, v = _ints(text, 2, "Edge")
    return g.find_edge(u, v)


def _parse_orientation(text: str | None) -> Orientation | None:
    if text is None:
        return None
    head, tail, n1, n2, m1, m2 = _ints(text, 6, "Order")
    return Orientation(head, tail, (n1, n2), (m1, m2))


def _write(out: pathlib.Path | None, g: Graph) -> None:
    if out is not None:
        out.write_text(encode(g) + "\n")


def census(
    file: GraphFile,
    edge: Annotated[
        str | None, typer.Option("--edge", help="Count colourings of G_e for this edge U,V.")
    ] = None,
    index: Index = 0,
    threads: Threads = 1,
    verbose: Verbose = False,
) -> None:
    """
    Count the 3-edge-colourings of a graph, or of G_e when an edge is given.
    """
    with _session(verbose):
        g = read_graph(file, index)
        e = parse_edge(g, edge) if edge is not None else None
        typer.echo(dumps(census_document(coloring.census(g, e, workers=threads), e)))


def psi(
    file: GraphFile,
    edge: Annotated[str, typer.Option("--edge", help="The edge U,V.")],
    index: Index = 0,
    threads: Threads = 1,
    verbose: Verbose = False,
) -> None:
    """
    Print psi(G, e): the colourings of G_e divided by 18.
    """
    with _session(verbose):
        g = read_graph(file, index)
        typer.echo(coloring.psi(g, parse_edge(g, edge), workers=threads))


def validate(
    file: GraphFile,
    max_k: Annotated[
        int, typer.Option("--max-k", min=1, help="Highest cyclic connectivity to certify.")
    ] = 5,
    index: Index = 0,
    budget: Budget = DEFAULT_SUBSET_CHECKS,
    threads: Threads = 1,
    verbose: Verbose = False,
) -> None:
    """
    Report whether a graph is a snark. Exits with 1 when it is not.
    """
    with _session(verbose):
        g = read_graph(file, index)
        report = synthesis.validate_snark(g, max_k, Limits(subset_checks=budget, workers=threads))
        typer.echo(dumps(snark_report_document(report)))
    if not report.is_snark:
        raise typer.Exit(code=1)


def dot(
    g1: Annotated[pathlib.Path, typer.Option("--g1", exists=True, dir_okay=False, help="G' file.")],
    e1: Annotated[str, typer.Option("--e1", help="The edge E=U,V of G'.")],
    g2: Annotated[pathlib.Path, typer.Option("--g2", exists=True, dir_okay=False, help="Ĝ file.")],
    e2: Annotated[str, typer.Option("--e2", help="The edge ε=u,v of Ĝ.")],
    u_order: Annotated[
        str | None,
        typer.Option("--u-order", help="U,V,U1,U2,V1,V2 for G'; ascending by default."),
    ] = None,
    v_order: Annotated[
        str | None,
        typer.Option("--v-order", help="u,v,u1,u2,v1,v2 for Ĝ; ascending by default."),
    ] = None,
    index1: Annotated[int, typer.Option("--index1", min=0)] = 0,
    index2: Annotated[int, typer.Option("--index2", min=0)] = 0,
    out: Out = None,
    verbose: Verbose = False,
) -> None:
    """
    Symmetric dot product of two snarks.
    """
    with _session(verbose):
        first, second = read_graph(g1, index1), read_graph(g2, index2)
        spec = DotProductSpec(
            first,
            parse_edge(first, e1),
            second,
            parse_edge(second, e2),
            _parse_orientation(u_order),
            _parse_orientation(v_order),
        )
        g, edge_map = dot_product(spec)
        _write(out, g)
        typer.echo(dumps(edge_map_document(g, edge_map)))


def superposition(
    g0: Annotated[pathlib.Path, typer.Option("--g0", exists=True, dir_okay=False, help="G0 file.")],
    path: Annotated[str, typer.Option("--path", help="The path u1,u2,u3,u4,u5.")],
    index: Index = 0,
    out: Out = None,
    budget: Budget = DEFAULT_SUBSET_CHECKS,
    verbose: Verbose = False,
) -> None:
    """
    Replace the middle hinge of a path by the double-Petersen gadget.
    """
    with _session(verbose):
        g = read_graph(g0, index)
        u1, u2, u3, u4, u5 = _ints(path, 5, "Path")
        spec = SuperpositionSpec(g, (u1, u2, u3, u4, u5))
        result, edge_map = superpose(spec, limits=Limits(subset_checks=budget))
        _write(out, result)
        typer.echo(dumps(edge_map_document(result, edge_map)))


def synthesize(
    target: Annotated[
        str, typer.Option("--target", help='The psi value, e.g. "5^1*7^1" or "2*3".')
    ],
    mode: Annotated[
        synthesis.Mode | None,
        typer.Option("--mode", help="5cc for cyclically 5-edge-connected results, 4cc otherwise."),
    ] = None,
    verify: Annotated[
        bool, typer.Option("--verify/--no-verify", help="Brute-force psi on the result.")
    ] = False,
    max_vertices: Annotated[
        int, typer.Option("--max-vertices", min=1, help="Largest graph to verify.")
    ] = DEFAULT_VERIFY_MAX_VERTICES,
    out: Out = None,
    budget: Budget = DEFAULT_SUBSET_CHECKS,
    threads: Threads = 1,
    verbose: Verbose = False,
) -> None:
    """
    Build a snark with an edge of the requested psi.
    """
    with _session(verbose):
        limits = Limits(
            subset_checks=budget, verify_max_vertices=max_vertices, workers=threads
        )
        result = synthesis.synthesize(synthesis.PsiTarget.parse(target, mode, verify, limits))
        _write(out, result.graph)
        typer.echo(dumps(synthesis_document(result)))


def check_theorems(
    suite: Annotated[
        str,
        typer.Option(
            "--suite", help=f"all, or a comma-separated list of {', '.join(synthesis.SUITES)}."
        ),
    ] = "all",
    verbose: Verbose = False,
) -> None:
    """
    Check the psi identities by brute force on the smallest instances.
    """
    with _session(verbose) as console:
        names = None if suite == "all" else [name.strip() for name in suite.split(",")]
        checks = synthesis.verify_theorems(names)
        for check in checks:
            status = "[pass]PASS[/pass]" if check.passed else "[fail]FAIL[/fail]"
            console.print(f"{status} {check.name} {check.detail}".rstrip())
        typer.echo(dumps(theorems_document(checks)))
    if not all(check.passed for check in checks):
        raise typer.Exit(code=1)
