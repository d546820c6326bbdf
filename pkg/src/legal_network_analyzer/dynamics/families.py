"""
Cluster graphs, family graphs and cluster families across snapshots
"""
import csv
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, List, Mapping, Tuple

import networkx as nx

from ..errors import IntegrityError, StateError
from ..models import ClusterFamily, Clustering, FamilyReport, NodeAlignment

logger = logging.getLogger(__name__)

# subsequence node: (clustered node, tokens)
UnitIndex = Mapping[str, Tuple[str, int]]

_TOLERANCE = 1e-12


def cluster_label(year: int, cluster_id: int) -> str:
    return f"{year}-{cluster_id}"


def unit_index(subsequence: nx.Graph, clustered: nx.Graph) -> Dict[str, Tuple[str, int]]:
    """Clustered node and token count of every subsequence node"""
    element_node = clustered.graph.get("element_node", {})
    index = {}
    for node, data in subsequence.nodes(data=True):
        owner = element_node.get(node, node)
        if owner not in clustered:
            raise IntegrityError(f"Subsequence node {node!r} has no clustered node")
        index[node] = (owner, int(data.get("tokens", 0)))
    return index


def _rank(graph: nx.DiGraph, label: str) -> Tuple[int, int, int]:
    data = graph.nodes[label]
    return -data["tokens"], data["year"], data["cluster"]


def build_cluster_graph(
    clusterings: Mapping[int, Clustering],
    alignments: Mapping[int, NodeAlignment],
    units: Mapping[int, UnitIndex],
) -> nx.DiGraph:
    """Clusters of all years; arc weight = tokens of aligned images landing in the later cluster

    `alignments` is keyed by the earlier year of each adjacent pair.
    """
    years = sorted(clusterings)
    graph = nx.DiGraph(years=years)
    for year in years:
        assignment = clusterings[year].assignment
        sizes: Counter = Counter()
        for unit, (node, tokens) in units[year].items():
            if node not in assignment:
                raise IntegrityError(f"{year}: node {node!r} of unit {unit!r} is not clustered")
            sizes[assignment[node]] += tokens
        for cluster in sorted(set(assignment.values())):
            graph.add_node(cluster_label(year, cluster), year=year, cluster=cluster, tokens=sizes[cluster])

    for year, following in zip(years, years[1:]):
        if year not in alignments:
            raise StateError(f"No alignment between {year} and {following}")
        before, after = clusterings[year].assignment, clusterings[following].assignment
        weights: Counter = Counter()
        for v, w in alignments[year].mapping.items():
            if v not in units[year] or w not in units[following]:
                raise IntegrityError(f"Alignment {v!r} -> {w!r} names an unknown node")
            source = before[units[year][v][0]]
            target = after[units[following][w][0]]
            weights[(source, target)] += units[following][w][1]
        for (source, target), weight in sorted(weights.items()):
            if weight > 0:
                graph.add_edge(cluster_label(year, source), cluster_label(following, target), weight=weight)
    return graph


def chi(weight: float, size: int, other_size: int) -> float:
    """min(w / |c|, w / |c'|)"""
    return min(weight / size, weight / other_size)


def build_family_graph(cluster_graph: nx.DiGraph, gamma: float = 0.15) -> nx.DiGraph:
    """Cluster graph arcs carrying at least a gamma share of both endpoints' tokens"""
    family_graph = nx.DiGraph(**cluster_graph.graph, gamma=gamma)
    family_graph.add_nodes_from(cluster_graph.nodes(data=True))
    for u, v, data in cluster_graph.edges(data=True):
        size_u, size_v = cluster_graph.nodes[u]["tokens"], cluster_graph.nodes[v]["tokens"]
        if size_u <= 0 or size_v <= 0:
            raise IntegrityError(f"Empty cluster on arc {u} -> {v}")
        share = chi(data["weight"], size_u, size_v)
        if share >= gamma - _TOLERANCE:
            family_graph.add_edge(u, v, weight=data["weight"], chi=share)
    return family_graph


def family_size_series(family: ClusterFamily, cluster_graph: nx.DiGraph) -> Dict[int, int]:
    """Summed member tokens per year; zero for years without members"""
    sizes = {year: 0 for year in cluster_graph.graph.get("years", [])}
    for label in family.members:
        data = cluster_graph.nodes[label]
        sizes[data["year"]] = sizes.get(data["year"], 0) + data["tokens"]
    return dict(sorted(sizes.items()))


def cluster_families(family_graph: nx.DiGraph) -> List[ClusterFamily]:
    """Connected components, ordered by the token count of their leading cluster"""
    components = []
    for component in nx.connected_components(family_graph.to_undirected(as_view=True)):
        members = sorted(component, key=lambda n: (family_graph.nodes[n]["year"], family_graph.nodes[n]["cluster"]))
        leading = min(members, key=lambda n: _rank(family_graph, n))
        components.append((leading, members))
    components.sort(key=lambda item: _rank(family_graph, item[0]))

    families = []
    for index, (leading, members) in enumerate(components):
        family = ClusterFamily(
            index=index,
            members=members,
            leading=leading,
            leading_tokens=family_graph.nodes[leading]["tokens"],
        )
        family.sizes = family_size_series(family, family_graph)
        families.append(family)
    logger.info("%d cluster families", len(families))
    return families


def family_of(families: List[ClusterFamily]) -> Dict[str, int]:
    """Cluster label to family index"""
    return {label: family.index for family in families for label in family.members}


def write_cluster_graph_csv(graph: nx.DiGraph, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["source", "target", "weight", "source_tokens", "target_tokens"])
        for u, v, data in sorted(graph.edges(data=True), key=lambda e: (e[0], e[1])):
            writer.writerow([u, v, data["weight"], graph.nodes[u]["tokens"], graph.nodes[v]["tokens"]])


def write_family_report_json(families: List[ClusterFamily], gamma: float, years: List[int], path: str | Path) -> None:
    report = FamilyReport(gamma=gamma, years=list(years), families=families)
    Path(path).write_text(report.model_dump_json(indent=2), encoding="utf-8")
