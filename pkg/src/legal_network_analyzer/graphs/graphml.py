"""
GraphML export and quotient edge statistics
"""
from pathlib import Path
from typing import Any, Dict, List, Mapping

import networkx as nx

_SCALARS = (str, int, float, bool)


def _scalars(data: Mapping[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in data.items() if isinstance(v, _SCALARS)}


def graphml_ready(graph: nx.Graph) -> nx.Graph:
    """Copy of a graph with only GraphML-representable attributes"""
    clean = graph.__class__()
    clean.graph.update(_scalars(graph.graph))
    clean.add_nodes_from((n, _scalars(d)) for n, d in graph.nodes(data=True))
    if graph.is_multigraph():
        clean.add_edges_from((u, v, k, _scalars(d)) for u, v, k, d in graph.edges(keys=True, data=True))
    else:
        clean.add_edges_from((u, v, _scalars(d)) for u, v, d in graph.edges(data=True))
    return clean


def export_graphml(graph: nx.Graph, path: str | Path) -> Path:
    path = Path(path)
    nx.write_graphml(graphml_ready(graph), path, encoding="utf-8", prettyprint=True)
    return path


def multiplicity_range(graph: nx.DiGraph, include_self_loops: bool = False) -> Dict[str, Any]:
    """Minimum and maximum arc multiplicity of a quotient graph"""
    values = [d["multiplicity"] for u, v, d in graph.edges(data=True) if include_self_loops or u != v]
    return {
        "min": min(values) if values else None,
        "max": max(values) if values else None,
        "edges": len(values),
    }


def multiplicity_table(quotients: Mapping[int, nx.DiGraph]) -> List[Dict[str, Any]]:
    """One row per year: edge count and min/max multiplicity"""
    return [{"year": year, **multiplicity_range(graph)} for year, graph in sorted(quotients.items())]
