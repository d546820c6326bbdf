"""
Quotient graph drawings: token-sized nodes, multiplicity-scaled edge opacity
"""
import math
from collections import Counter
from pathlib import Path
from typing import Dict, Mapping, Optional

import networkx as nx

from ..dynamics.families import cluster_label
from ..models import Clustering, QuotientVizData, QuotientVizEdge, QuotientVizNode
from .alluvial import family_color
from .layout import fr_layout
from .svg import SvgCanvas

MAX_RADIUS = 0.6
MIN_OPACITY = 0.05
CANVAS = 800.0
PADDING = 40.0


def dominant_families(
    quotient: nx.DiGraph, clustering: Clustering, family_index: Mapping[str, int]
) -> Dict[str, Optional[int]]:
    """Family of the cluster holding most members of each quotient node (lowest cluster id on ties)"""
    year = quotient.graph.get("year")
    result: Dict[str, Optional[int]] = {}
    for node, data in quotient.nodes(data=True):
        clusters = Counter(clustering.assignment[m] for m in data["members"] if m in clustering.assignment)
        if not clusters:
            result[node] = None
            continue
        best = min(clusters, key=lambda c: (-clusters[c], c))
        result[node] = family_index.get(cluster_label(year, best))
    return result


def quotient_viz_export(
    quotient: nx.DiGraph,
    families: Optional[Mapping[str, Optional[int]]] = None,
    min_tokens: int = 5000,
    degree_label_threshold: int = 20,
    top_families: int = 20,
    k: float = 2.2,
    seed: int = 1234,
) -> QuotientVizData:
    """Nodes with >= min_tokens; labels on nodes whose drawn in+out degree reaches the threshold"""
    families = families or {}
    kept = [n for n, d in quotient.nodes(data=True) if d.get("tokens", 0) >= min_tokens]
    drawn = quotient.subgraph(kept).copy()
    drawn.remove_edges_from(list(nx.selfloop_edges(drawn)))
    data = QuotientVizData(min_tokens=min_tokens)
    if not kept:
        return data

    positions = fr_layout(drawn, k=k, seed=seed)
    largest = max(quotient.nodes[n]["tokens"] for n in kept) or 1
    for position, node in enumerate(sorted(kept)):
        tokens = quotient.nodes[node]["tokens"]
        family = families.get(node)
        degree = drawn.in_degree(node) + drawn.out_degree(node)
        x, y = positions[node]
        data.nodes.append(QuotientVizNode(
            id=node,
            tokens=tokens,
            x=round(x, 6),
            y=round(y, 6),
            radius=round(MAX_RADIUS * math.sqrt(tokens / largest), 6),
            family=family,
            color=family_color(family, position, top_families),
            label=node if degree >= degree_label_threshold else None,
        ))

    multiplicities = [d["multiplicity"] for _, _, d in drawn.edges(data=True)]
    if multiplicities:
        low, high = min(multiplicities), max(multiplicities)
        data.min_multiplicity, data.max_multiplicity = low, high
        for u, v, d in sorted(drawn.edges(data=True), key=lambda e: (e[0], e[1])):
            m = d["multiplicity"]
            opacity = 1.0 if high == low else MIN_OPACITY + (1 - MIN_OPACITY) * (m - low) / (high - low)
            data.edges.append(QuotientVizEdge(source=u, target=v, multiplicity=m, opacity=round(opacity, 6)))
    return data


def render_quotient_svg(data: QuotientVizData) -> SvgCanvas:
    canvas = SvgCanvas(CANVAS, CANVAS, title=f"Quotient graph (nodes >= {data.min_tokens} tokens)")
    if not data.nodes:
        return canvas
    xs = [n.x for n in data.nodes]
    ys = [n.y for n in data.nodes]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    factor = (CANVAS - 2 * PADDING) / span
    place = lambda x, y: (PADDING + (x - min(xs)) * factor, PADDING + (y - min(ys)) * factor)
    at = {n.id: place(n.x, n.y) for n in data.nodes}

    for edge in data.edges:
        canvas.line(*at[edge.source], *at[edge.target], opacity=edge.opacity)
    for node in data.nodes:
        x, y = at[node.id]
        canvas.circle(x, y, max(node.radius * factor, 1.0), node.color, title=f"{node.id}: {node.tokens} tokens")
        if node.label:
            canvas.text(x, y, node.label)
    return canvas


def write_quotient_viz(data: QuotientVizData, json_path: str | Path, svg_path: str | Path) -> None:
    Path(json_path).write_text(data.model_dump_json(indent=2), encoding="utf-8")
    render_quotient_svg(data).write(svg_path)
