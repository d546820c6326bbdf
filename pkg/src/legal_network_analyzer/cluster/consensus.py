"""
Consensus clustering over seeded optimizer runs
"""
import csv
import logging
from collections import Counter
from itertools import combinations
from pathlib import Path
from typing import List, Optional

import networkx as nx
import numpy as np
from joblib import Parallel, delayed
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from ..errors import ParameterError
from ..models import Clustering, ConsensusReport, ConsensusResult, SimilarityDistribution
from ..stats.metrics import PartitionPair, ari, nmi
from .flow import FlowGraph, visit_rates
from .infomap import infomap_run
from .map_equation import codelength

logger = logging.getLogger(__name__)

# count >= threshold * runs, tolerant to float rounding of the product
_EPSILON = 1e-9


def _as_flow(graph: FlowGraph | nx.Graph, tau: float) -> FlowGraph:
    return graph if isinstance(graph, FlowGraph) else visit_rates(graph, tau=tau)


def seeded_runs(
    flow: FlowGraph,
    runs: int,
    preferred_n: Optional[int],
    seed_base: int,
    strength: float = 1.0,
    n_jobs: int = 1,
) -> List[Clustering]:
    """Runs with seeds seed_base .. seed_base + runs - 1, in seed order"""
    if runs < 1:
        raise ParameterError(f"At least one run required, got {runs}")
    return Parallel(n_jobs=n_jobs)(
        delayed(infomap_run)(flow, preferred_n, seed_base + r, strength) for r in range(runs)
    )


def cooccurrence_matrix(flow: FlowGraph, clusterings: List[Clustering]) -> sparse.csr_matrix:
    """C[u, v] = number of runs placing u and v in the same module"""
    n = flow.size
    total = sparse.csr_matrix((n, n), dtype=np.int64)
    rows = np.arange(n)
    for clustering in clusterings:
        modules = np.array([clustering.assignment[node] for node in flow.nodes])
        one_hot = sparse.csr_matrix(
            (np.ones(n, dtype=np.int64), (rows, modules)), shape=(n, int(modules.max()) + 1)
        )
        total = total + one_hot @ one_hot.T
    return total.tocsr()


def consensus(
    graph: FlowGraph | nx.Graph,
    runs: int = 1000,
    threshold: float = 0.95,
    preferred_n: Optional[int] = 100,
    seed_base: int = 0,
    tau: float = 0.15,
    strength: float = 1.0,
    n_jobs: int = 1,
) -> ConsensusResult:
    """Connected components of the graph of node pairs co-clustered in >= threshold of runs"""
    if not 0 < threshold <= 1:
        raise ParameterError(f"Threshold must lie in (0, 1], got {threshold}")
    flow = _as_flow(graph, tau)
    clusterings = seeded_runs(flow, runs, preferred_n, seed_base, strength, n_jobs)
    counts = cooccurrence_matrix(flow, clusterings)

    strong = counts.copy()
    strong.data = (strong.data >= threshold * runs - _EPSILON).astype(np.int8)
    strong.eliminate_zeros()
    _, labels = connected_components(strong, directed=False)

    relabel: dict = {}
    assignment = {
        node: relabel.setdefault(int(label), len(relabel)) for node, label in zip(flow.nodes, labels)
    }
    final = Clustering(snapshot_id=flow.name, assignment=assignment, seed=seed_base)
    final.codelength = codelength(flow, final)

    upper = sparse.triu(counts, k=1).tocoo()
    pairs = sorted(
        (flow.nodes[i], flow.nodes[j], int(c)) for i, j, c in zip(upper.row, upper.col, upper.data) if c
    )
    histogram = Counter(c.module_count for c in clusterings)
    logger.info(
        "Consensus of %d runs (threshold %.2f): %d modules", runs, threshold, final.module_count
    )
    return ConsensusResult(
        clustering=final,
        cooccurrence=pairs,
        runs=runs,
        threshold=threshold,
        preferred_n=preferred_n,
        seed_base=seed_base,
        module_count_histogram=dict(sorted(histogram.items())),
    )


def consensus_report(result: ConsensusResult) -> ConsensusReport:
    return ConsensusReport(
        snapshot_id=result.clustering.snapshot_id,
        runs=result.runs,
        threshold=result.threshold,
        preferred_n=result.preferred_n,
        seed_base=result.seed_base,
        module_count=result.clustering.module_count,
        codelength=result.clustering.codelength,
        module_count_histogram=result.module_count_histogram,
    )


def run_variance(
    graph: FlowGraph | nx.Graph,
    runs: int = 100,
    preferred_n: Optional[int] = 100,
    seed_base: int = 0,
    tau: float = 0.15,
    strength: float = 1.0,
    n_jobs: int = 1,
) -> SimilarityDistribution:
    """Pairwise NMI / ARI between individual runs"""
    flow = _as_flow(graph, tau)
    clusterings = seeded_runs(flow, runs, preferred_n, seed_base, strength, n_jobs)
    distribution = SimilarityDistribution(setting=f"runs={runs}")
    for a, b in combinations(clusterings, 2):
        pair = PartitionPair.from_clusterings(a, b)
        distribution.nmi.append(nmi(pair))
        distribution.ari.append(ari(pair))
    return distribution


def write_clustering_csv(clustering: Clustering, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["node_id", "cluster_id", "seed"])
        for node, cluster in clustering.assignment.items():
            writer.writerow([node, cluster, "" if clustering.seed is None else clustering.seed])


def write_consensus_json(result: ConsensusResult, path: str | Path) -> None:
    Path(path).write_text(consensus_report(result).model_dump_json(indent=2), encoding="utf-8")
