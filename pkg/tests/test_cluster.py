import math

import networkx as nx
import numpy as np
import pytest

from conftest import planted_cliques, planted_partition, set_partitions
from legal_network_analyzer.cluster import (
    codelength,
    consensus,
    cooccurrence_matrix,
    infomap_run,
    module_penalty,
    one_level_codelength,
    run_variance,
    seeded_runs,
    visit_rates,
    write_clustering_csv,
    write_consensus_json,
)
from legal_network_analyzer.errors import MappingError, ParameterError
from legal_network_analyzer.stats import PartitionPair, nmi


def entropy_bits(weights) -> float:
    total = sum(weights)
    return -sum(w / total * math.log2(w / total) for w in weights if w > 0)


def brute_force_codelength(flow, labels) -> float:
    """Map equation from per-module codebooks, arc by arc"""
    modules = sorted(set(labels))
    enter = {m: 0.0 for m in modules}
    exit_ = {m: 0.0 for m in modules}
    for u, v, f in zip(flow.sources, flow.targets, flow.flow):
        if labels[u] != labels[v]:
            exit_[labels[u]] += f
            enter[labels[v]] += f
    q = sum(enter.values())
    length = q * entropy_bits(list(enter.values())) if q > 0 else 0.0
    for m in modules:
        book = [exit_[m]] + [p for i, p in enumerate(flow.visit) if labels[i] == m]
        length += sum(book) * entropy_bits(book)
    return length


def directed_triangles() -> nx.DiGraph:
    graph = nx.DiGraph([("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")])
    graph.add_edges_from([("c", "d"), ("f", "a")])
    return graph


SMALL_GRAPHS = {
    "two-4-cliques": lambda: planted_cliques(2, 4),
    "two-4-cliques-chain": lambda: planted_cliques(2, 4, ring=False),
    "two-triangles": lambda: planted_cliques(2, 3, ring=False),
    "complete-5": lambda: nx.complete_graph(5),
    "directed-triangles": directed_triangles,
}


@pytest.fixture(scope="module")
def two_cliques():
    graph = planted_cliques(2, 4)
    return graph, visit_rates(graph)


def test_visit_rates_form_a_distribution(two_cliques):
    _, flow = two_cliques
    assert flow.visit.sum() == pytest.approx(1.0)
    assert (flow.visit > 0).all()
    assert flow.residual < 1e-9


def test_directed_cycle_is_uniform():
    flow = visit_rates(nx.DiGraph([("a", "b"), ("b", "c"), ("c", "a")]), tau=0.15)
    assert np.allclose(flow.visit, 1 / 3, atol=1e-12)


def test_visit_rates_with_dangling_node():
    flow = visit_rates(nx.DiGraph([("a", "b"), ("b", "c")]))
    assert flow.visit.sum() == pytest.approx(1.0)
    assert flow.visit[flow.index["c"]] > flow.visit[flow.index["a"]]


def test_cycle_has_uniform_visit_rates():
    flow = visit_rates(nx.cycle_graph(6))
    assert np.allclose(flow.visit, 1 / 6)


@pytest.mark.parametrize("tau", [-0.1, 1.0])
def test_teleportation_range(tau):
    with pytest.raises(ParameterError):
        visit_rates(nx.path_graph(3), tau=tau)


def test_empty_graph_has_no_visit_rates():
    with pytest.raises(ParameterError):
        visit_rates(nx.DiGraph())


def test_parallel_arcs_weigh_by_multiplicity():
    single = nx.MultiDiGraph()
    single.add_edge("a", "b", weight=1.0, multiplicity=2)
    single.add_edge("a", "c", weight=1.0)
    single.add_edge("b", "a")
    single.add_edge("c", "a")
    flow = visit_rates(single)
    arc = {(flow.nodes[u], flow.nodes[v]): f for u, v, f in zip(flow.sources, flow.targets, flow.flow)}
    assert arc["a", "b"] == pytest.approx(2 * arc["a", "c"])


def test_codelength_matches_brute_force(two_cliques):
    graph, flow = two_cliques
    for labels in [[0] * 8, list(range(8)), [0, 0, 0, 0, 1, 1, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]]:
        assert codelength(flow, labels) == pytest.approx(brute_force_codelength(flow, labels), abs=1e-9)


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_codelength_matches_brute_force_on_every_partition(name):
    flow = visit_rates(SMALL_GRAPHS[name]())
    for labels in set_partitions(list(flow.nodes)):
        assert codelength(flow, labels) == pytest.approx(brute_force_codelength(flow, labels), abs=1e-9)


@pytest.mark.parametrize("name", sorted(set(SMALL_GRAPHS) - {"directed-triangles"}))
def test_optimizer_reaches_the_enumerated_minimum(name):
    flow = visit_rates(SMALL_GRAPHS[name]())
    best = min(codelength(flow, labels) for labels in set_partitions(list(flow.nodes)))
    found = [infomap_run(flow, seed=seed).codelength for seed in range(100)]
    assert sum(abs(length - best) < 1e-9 for length in found) >= 90


def test_moving_a_node_back_restores_the_codelength(two_cliques):
    graph, flow = two_cliques
    planted = planted_partition(graph)
    moved = dict(planted, c0n0=1)
    assert codelength(flow, moved) != codelength(flow, planted)
    assert codelength(flow, dict(moved, c0n0=0)) == codelength(flow, planted)


def test_single_module_costs_the_visit_entropy(two_cliques):
    _, flow = two_cliques
    assert codelength(flow, [0] * flow.size) == pytest.approx(one_level_codelength(flow))
    assert codelength(flow, [0] * flow.size) == pytest.approx(entropy_bits(flow.visit))


def test_codelength_ignores_label_names(two_cliques):
    graph, flow = two_cliques
    planted = planted_partition(graph)
    renamed = {node: 10 - label for node, label in planted.items()}
    assert codelength(flow, planted) == pytest.approx(codelength(flow, renamed))


def test_partition_must_cover_every_node(two_cliques):
    _, flow = two_cliques
    with pytest.raises(MappingError):
        codelength(flow, {"c0n0": 0})


def test_planted_partition_is_the_exhaustive_minimum(two_cliques):
    graph, flow = two_cliques
    best = min(codelength(flow, labels) for labels in set_partitions(list(flow.nodes)))
    assert codelength(flow, planted_partition(graph)) == pytest.approx(best, abs=1e-9)

    found = [infomap_run(flow, seed=seed).codelength for seed in range(20)]
    assert sum(abs(length - best) < 1e-9 for length in found) >= 18


def test_optimizer_is_seeded(two_cliques):
    _, flow = two_cliques
    assert infomap_run(flow, seed=7).assignment == infomap_run(flow, seed=7).assignment


@pytest.mark.parametrize("strength", [5.0, 50.0])
def test_strong_preference_for_one_module(two_cliques, strength):
    _, flow = two_cliques
    assert infomap_run(flow, preferred_n=1, strength=strength, seed=2).module_count == 1


def test_optimizer_recovers_planted_ring():
    graph = planted_cliques(4, 4)
    result = infomap_run(visit_rates(graph), preferred_n=4, seed=0)
    found = {frozenset(members) for members in result.modules()}
    assert found == {frozenset(n for n in graph if n.startswith(f"c{c}n")) for c in range(4)}


def test_optimizer_rejects_nonpositive_preference(two_cliques):
    _, flow = two_cliques
    with pytest.raises(ParameterError):
        infomap_run(flow, preferred_n=0)


@pytest.mark.parametrize("count,preferred,expected", [
    (4, 4, 0.0),
    (8, 4, math.log(2)),
    (2, 4, math.log(2)),
    (5, None, 0.0),
])
def test_module_penalty(count, preferred, expected):
    assert module_penalty(count, preferred, 1.0) == pytest.approx(expected)


def test_consensus_recovers_planted_ring():
    graph = planted_cliques(4, 4)
    result = consensus(graph, runs=1000, threshold=0.95, preferred_n=4, seed_base=0)
    found = {frozenset(members) for members in result.clustering.modules()}
    planted = {frozenset(n for n in graph if n.startswith(f"c{c}n")) for c in range(4)}
    assert found == planted
    assert result.runs == 1000
    assert sum(result.module_count_histogram.values()) == 1000

    again = consensus(graph, runs=1000, threshold=0.95, preferred_n=4, seed_base=1000)
    assert nmi(PartitionPair.from_clusterings(result.clustering, again.clustering)) >= 0.98


def test_consensus_is_reproducible():
    graph = planted_cliques(3, 5)
    a = consensus(graph, runs=5, preferred_n=3, seed_base=11)
    b = consensus(graph, runs=5, preferred_n=3, seed_base=11, n_jobs=2)
    assert a.clustering.assignment == b.clustering.assignment
    assert a.cooccurrence == b.cooccurrence


def test_consensus_threshold_range():
    with pytest.raises(ParameterError):
        consensus(planted_cliques(2, 3), runs=2, threshold=0.0)


def test_cooccurrence_diagonal_counts_runs(two_cliques):
    _, flow = two_cliques
    runs = seeded_runs(flow, 4, preferred_n=None, seed_base=0)
    matrix = cooccurrence_matrix(flow, runs).toarray()
    assert (np.diag(matrix) == 4).all()
    assert (matrix == matrix.T).all()
    with pytest.raises(ParameterError):
        seeded_runs(flow, 0, preferred_n=None, seed_base=0)


def test_run_variance_pairs(two_cliques):
    _, flow = two_cliques
    distribution = run_variance(flow, runs=4, preferred_n=None)
    assert len(distribution.nmi) == len(distribution.ari) == 6
    assert all(-1.0 <= value <= 1.0 for value in distribution.ari)


def test_clustering_files(tmp_path):
    result = consensus(planted_cliques(2, 4), runs=3, preferred_n=2)
    write_clustering_csv(result.clustering, tmp_path / "clusters.csv")
    write_consensus_json(result, tmp_path / "consensus.json")
    lines = (tmp_path / "clusters.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "node_id,cluster_id,seed"
    assert len(lines) == 9
    assert '"runs": 3' in (tmp_path / "consensus.json").read_text(encoding="utf-8")
