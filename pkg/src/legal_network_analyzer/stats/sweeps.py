"""
Sensitivity of consensus clusterings to the preferred module count, and their robustness
"""
import logging
import statistics
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Union

import networkx as nx

from ..cluster.consensus import consensus
from ..cluster.flow import FlowGraph, visit_rates
from ..models import Clustering, SimilarityDistribution, SweepResult
from .metrics import PartitionPair, ari, nmi

logger = logging.getLogger(__name__)

AUTO = "auto"
PREFERRED_SETTINGS: List[Union[int, str]] = [*range(10, 160, 10), 200, AUTO]

Graphs = Union[FlowGraph, nx.Graph, Mapping[int, Union[FlowGraph, nx.Graph]]]


def _per_year(graphs: Graphs, tau: float) -> Dict[int, FlowGraph]:
    if isinstance(graphs, (FlowGraph, nx.Graph)):
        graphs = {0: graphs}
    return {
        year: g if isinstance(g, FlowGraph) else visit_rates(g, tau=tau)
        for year, g in sorted(graphs.items())
    }


def _preferred(setting: Union[int, str]) -> Optional[int]:
    return None if setting == AUTO else int(setting)


def _compare(a: Clustering, b: Clustering) -> tuple:
    pair = PartitionPair.from_clusterings(a, b)
    return nmi(pair), ari(pair)


def sensitivity_sweep(
    graphs: Graphs,
    settings: Sequence[Union[int, str]] = PREFERRED_SETTINGS,
    baseline: Union[int, str] = 100,
    runs: int = 1000,
    threshold: float = 0.95,
    seed_base: int = 0,
    tau: float = 0.15,
    strength: float = 1.0,
    n_jobs: int = 1,
) -> SweepResult:
    """Consensus per preferred count compared against the baseline count, per year"""
    flows = _per_year(graphs, tau)
    run = lambda flow, setting: consensus(
        flow, runs=runs, threshold=threshold, preferred_n=_preferred(setting),
        seed_base=seed_base, strength=strength, n_jobs=n_jobs,
    ).clustering
    reference = {year: run(flow, baseline) for year, flow in flows.items()}

    result = SweepResult(kind="sensitivity", baseline=str(baseline))
    for setting in settings:
        distribution = SimilarityDistribution(setting=str(setting))
        for year, flow in flows.items():
            clustering = reference[year] if setting == baseline else run(flow, setting)
            value_nmi, value_ari = _compare(clustering, reference[year])
            distribution.nmi.append(value_nmi)
            distribution.ari.append(value_ari)
            distribution.per_year_nmi[year] = value_nmi
            distribution.per_year_ari[year] = value_ari
        logger.info("preferred=%s: median NMI %.3f", setting, distribution.median("nmi"))
        result.distributions.append(distribution)
    return result


def robustness_sweep(
    graphs: Graphs,
    consensus_sizes: Sequence[int] = (10, 100, 1000),
    repeats: int = 100,
    preferred_n: Optional[int] = 100,
    threshold: float = 0.95,
    seed_base: int = 0,
    seed_stride: Optional[int] = None,
    tau: float = 0.15,
    strength: float = 1.0,
    n_jobs: int = 1,
) -> SweepResult:
    """Pairwise similarity of repeated consensus clusterings with distinct seed bases

    Repeat r uses seed base ``seed_base + r * seed_stride``; the stride defaults to the
    consensus size so that repeats share no seeds.
    """
    flows = _per_year(graphs, tau)
    result = SweepResult(kind="robustness")
    for size in consensus_sizes:
        stride = size if seed_stride is None else seed_stride
        distribution = SimilarityDistribution(setting=str(size))
        for year, flow in flows.items():
            clusterings = [
                consensus(
                    flow, runs=size, threshold=threshold, preferred_n=preferred_n,
                    seed_base=seed_base + r * stride, strength=strength, n_jobs=n_jobs,
                ).clustering
                for r in range(repeats)
            ]
            year_nmi, year_ari = [], []
            for a, b in combinations(clusterings, 2):
                value_nmi, value_ari = _compare(a, b)
                year_nmi.append(value_nmi)
                year_ari.append(value_ari)
            distribution.nmi.extend(year_nmi)
            distribution.ari.extend(year_ari)
            if year_nmi:
                distribution.per_year_nmi[year] = statistics.median(year_nmi)
                distribution.per_year_ari[year] = statistics.median(year_ari)
        result.distributions.append(distribution)
    return result
