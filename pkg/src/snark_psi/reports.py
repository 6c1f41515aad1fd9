"""JSON documents written to standard output.

Counts are serialised as decimal strings so that readers with 53-bit floats
lose nothing. Keys are sorted, so equal inputs give byte-identical output.
"""

import json
from typing import Any

from .coloring import Census
from .constructions import ConstructionTrace, EdgeMap
from .graph import EdgeRef, Graph
from .graph6 import encode
from .synthesis import SnarkReport, SynthesisResult, TheoremCheck

SCHEMA_VERSION = 1


def dumps(document: dict[str, Any]) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **document}, sort_keys=True, indent=2)


def _edge(e: EdgeRef) -> list[int]:
    return list(e.endpoints)


def census_document(census: Census, edge: EdgeRef | None = None) -> dict[str, Any]:
    if edge is None:
        return {
            "kind": "census",
            "colorings": str(census.colorings),
            "decompositions": str(census.decompositions),
        }
    return {
        "kind": "census",
        "edge": _edge(edge),
        "colorings_of_G_e": str(census.colorings),
        "decompositions_of_G_e": str(census.decompositions),
        "psi": str(census.psi),
    }


def snark_report_document(report: SnarkReport) -> dict[str, Any]:
    return {
        "kind": "snark_report",
        "simple": report.simple,
        "cubic": report.cubic,
        "girth": report.girth,
        "colorings": None if report.colorings is None else str(report.colorings),
        "cyclic_connectivity": {str(k): v.value for k, v in report.cyclic_connectivity.items()},
        "subsets_examined": (
            None if report.subsets_examined is None else str(report.subsets_examined)
        ),
        "is_snark": report.is_snark,
    }


def edge_map_document(g: Graph, edge_map: EdgeMap) -> dict[str, Any]:
    return {
        "kind": "construction",
        "graph6": encode(g),
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "new_edges": {name: _edge(ref) for name, ref in edge_map.new_edges.items()},
        "forward": [
            {"source": tag, "source_edge": source, "edge": list(g.edges[target])}
            for (tag, source), target in sorted(edge_map.forward.items())
        ],
    }


def trace_document(trace: ConstructionTrace) -> dict[str, Any]:
    return {
        "initial_digest": trace.initial_digest,
        "initial_psi": str(trace.initial_psi),
        "predicted_psi": str(trace.predicted_psi),
        "steps": [
            {
                "kind": step.kind.value,
                "spec_digest": step.spec_digest,
                "factor": step.factor,
                "tracked_before": list(step.tracked_before),
                "tracked_after": list(step.tracked_after),
            }
            for step in trace.steps
        ],
    }


def synthesis_document(result: SynthesisResult) -> dict[str, Any]:
    return {
        "kind": "synthesis",
        "graph6": encode(result.graph),
        "vertices": result.graph.vertex_count,
        "edge": _edge(result.edge),
        "trace": trace_document(result.trace),
        "verification": result.verification.value,
    }


def theorems_document(checks: list[TheoremCheck]) -> dict[str, Any]:
    return {
        "kind": "theorem_checks",
        "passed": all(check.passed for check in checks),
        "checks": [
            {
                "name": check.name,
                "passed": check.passed,
                "detail": check.detail,
                "cases": [
                    {"label": case.label, "lhs": str(case.lhs), "rhs": str(case.rhs)}
                    for case in check.cases
                ],
            }
            for check in checks
        ],
    }
