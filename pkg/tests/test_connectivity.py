import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snark_psi.config import Limits
from snark_psi.connectivity import (
    CutSet,
    PathSystem,
    classify_cut,
    cyclic_connectivity_at_least,
    disjoint_five_cycle,
    edge_disjoint_paths,
    find_cycle,
    is_cut_set,
    is_minimal_cut_set,
    sample_minimal_cut_sets,
)
from snark_psi.constructions import PathRole, default_superposition_path, superpose
from snark_psi.errors import (
    BudgetExceededError,
    ConnectivityError,
    NonCubicError,
    NotACutSetError,
    OverlappingSetsError,
    VertexSetError,
)
from snark_psi.graph import Graph, disjoint_union, eliminate_edge, hinges, petersen

from .oracles import naive_cycle_separating_cut, prism


def _spokes() -> list[int]:
    g = petersen()
    return [g.find_edge(i, i + 5).edge_id for i in range(5)]


def test_petersen_is_cyclically_five_connected() -> None:
    certificate = cyclic_connectivity_at_least(petersen(), 5)
    assert certificate.passed
    assert certificate.counterexample is None
    assert certificate.subsets_examined == 15 + 105 + 455 + 1365


def test_petersen_is_not_cyclically_six_connected() -> None:
    certificate = cyclic_connectivity_at_least(petersen(), 6)
    assert not certificate.passed
    assert certificate.counterexample is not None
    assert certificate.counterexample.size == 5
    assert certificate.counterexample.cycle_separating
    assert certificate.counterexample.minimal


def test_prism_has_a_three_edge_cycle_cut() -> None:
    g = prism()
    certificate = cyclic_connectivity_at_least(g, 4)
    assert not certificate.passed
    assert certificate.counterexample is not None
    assert certificate.counterexample.edge_ids == frozenset({6, 7, 8})


def test_parallel_scan_agrees() -> None:
    serial = cyclic_connectivity_at_least(prism(), 4)
    parallel = cyclic_connectivity_at_least(prism(), 4, Limits(workers=2))
    assert parallel.passed == serial.passed
    assert parallel.counterexample == serial.counterexample


def test_certificate_preconditions() -> None:
    with pytest.raises(BudgetExceededError):
        cyclic_connectivity_at_least(petersen(), 5, Limits(subset_checks=100))
    with pytest.raises(NonCubicError):
        cyclic_connectivity_at_least(eliminate_edge(petersen(), petersen().edge(0)), 4)
    with pytest.raises(ConnectivityError):
        cyclic_connectivity_at_least(disjoint_union(petersen(), petersen())[0], 4)
    with pytest.raises(ValueError):
        cyclic_connectivity_at_least(petersen(), 7)


def test_classify_cuts() -> None:
    g = petersen()
    spokes = classify_cut(g, _spokes())
    assert spokes.minimal
    assert spokes.cycle_separating
    assert spokes.fingerprint == g.fingerprint

    star = classify_cut(g, g.incidence[0])
    assert star.minimal
    assert not star.cycle_separating

    padded = classify_cut(g, [*g.incidence[0], 14])
    assert not padded.minimal

    with pytest.raises(NotACutSetError):
        classify_cut(g, [0, 1])
    with pytest.raises(NotACutSetError):
        is_minimal_cut_set(g, [0])
    assert not is_cut_set(g, [0, 1])


def test_find_cycle() -> None:
    g = petersen()
    cycle = find_cycle(g)
    assert cycle is not None
    assert len(set(cycle)) == len(cycle) >= 5
    for a, b in zip(cycle, (*cycle[1:], cycle[0])):
        assert g.has_edge(a, b)
    # without the outer and inner cycle edges only the spokes remain
    assert find_cycle(g, range(10)) is None


def test_edge_disjoint_paths_between_cycles() -> None:
    g = petersen()
    outer, inner = range(5), range(5, 10)
    system = edge_disjoint_paths(g, outer, inner, 5)
    assert isinstance(system, PathSystem)
    assert len(system.paths) == 5
    used = [e for path in system.paths for e in path]
    assert len(used) == len(set(used))
    assert sorted(used) == sorted(_spokes())

    cut = edge_disjoint_paths(g, outer, inner, 6)
    assert isinstance(cut, CutSet)
    assert cut.edge_ids == frozenset(_spokes())


def test_edge_disjoint_paths_walk_from_a_to_b() -> None:
    g = petersen()
    system = edge_disjoint_paths(g, [0], [7], 3)
    assert isinstance(system, PathSystem)
    for path in system.paths:
        x = 0
        for edge_id in path:
            x = g.edge(edge_id).other(x)
        assert x == 7
    used = [e for path in system.paths for e in path]
    assert len(used) == len(set(used))


def test_edge_disjoint_paths_rejects_bad_sets() -> None:
    g = petersen()
    with pytest.raises(OverlappingSetsError):
        edge_disjoint_paths(g, [0, 1], [1, 2], 1)
    with pytest.raises(VertexSetError):
        edge_disjoint_paths(g, [0, 2], [7], 1)
    with pytest.raises(VertexSetError):
        edge_disjoint_paths(g, [], [7], 1)


def test_sample_minimal_cut_sets() -> None:
    g = petersen()
    sample = sample_minimal_cut_sets(g, 3, 5, seed=7)
    assert len(sample) == 5
    assert sample == sample_minimal_cut_sets(g, 3, 5, seed=7)
    for cut in sample:
        assert cut.minimal
        assert not cut.cycle_separating
    assert len(sample_minimal_cut_sets(g, 3, 100, seed=0)) == 10


def test_disjoint_five_cycle() -> None:
    g = petersen()
    found = disjoint_five_cycle(g, (0, 1, 2))
    assert found is not None
    assert len(found) == 5
    assert set(found).isdisjoint({0, 1, 2})
    for a, b in zip(found, (*found[1:], found[0])):
        assert g.has_edge(a, b)
    assert disjoint_five_cycle(g, range(10)) is None


@pytest.fixture(scope="module")
def superposition() -> Graph:
    base = petersen()
    g, _ = superpose(default_superposition_path(base, base.edge(0), PathRole.TRACKED))
    return g


def test_superposition_hinges_reach_five_cycles(superposition: Graph) -> None:
    g = superposition
    checked = 0
    for hinge in hinges(g):
        cycle = disjoint_five_cycle(g, hinge.vertices)
        if cycle is None:
            continue
        system = edge_disjoint_paths(g, hinge.vertices, cycle, 5)
        assert isinstance(system, PathSystem)
        used = [e for path in system.paths for e in path]
        assert len(used) == len(set(used))
        checked += 1
    assert checked


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(min_value=0, max_value=38), max_size=25))
def test_find_cycle_on_superposition_subgraphs(superposition: Graph, removed: set[int]) -> None:
    g = superposition
    rest = nx.restricted_view(g.to_networkx(), [], [g.edges[e] for e in removed])
    cycle = find_cycle(g, removed)
    assert (cycle is None) == nx.is_forest(rest)
    if cycle is not None:
        assert len(set(cycle)) == len(cycle) >= 5
        for a, b in zip(cycle, (*cycle[1:], cycle[0])):
            assert g.find_edge(a, b).edge_id not in removed


def test_find_cycle_when_every_valence_is_at_least_two(superposition: Graph) -> None:
    g = superposition
    for edge_id in range(g.edge_count):
        assert find_cycle(g, [edge_id]) is not None
    matching = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    removed = [g.find_edge(u, v).edge_id for u, v in matching]
    assert len(removed) == g.vertex_count // 2
    # without a perfect matching every vertex keeps valence two
    assert find_cycle(g, removed) is not None


def test_prism_cut_matches_reference() -> None:
    certificate = cyclic_connectivity_at_least(prism(), 4)
    found = naive_cycle_separating_cut(prism(), 4)
    assert found is not None
    assert certificate.counterexample is not None
    assert certificate.counterexample.size == len(found)


@pytest.mark.slow
def test_superposition_certificate_matches_reference(superposition: Graph) -> None:
    certificate = cyclic_connectivity_at_least(superposition, 5)
    assert certificate.passed
    assert naive_cycle_separating_cut(superposition, 5) is None
