"""
Seeded Fruchterman-Reingold layout
"""
import math
from typing import Dict, Tuple

import networkx as nx
import numpy as np

Position = Tuple[float, float]


def fr_layout(graph: nx.Graph, k: float = 2.2, seed: int = 1234, iterations: int = 50) -> Dict[str, Position]:
    """Force-directed positions with optimal distance k; identical for a fixed seed

    Nodes start uniformly in a square of side k * sqrt(n) and positions are not rescaled,
    so distances stay in units of k.
    """
    nodes = list(graph.nodes)
    if not nodes:
        return {}
    if len(nodes) == 1:
        return {nodes[0]: (0.0, 0.0)}

    rng = np.random.default_rng(seed)
    side = k * math.sqrt(len(nodes))
    initial = {node: rng.uniform(0.0, side, size=2) for node in nodes}
    positions = nx.spring_layout(
        graph.to_undirected(as_view=True), k=k, pos=initial, iterations=iterations,
        weight=None, scale=None, seed=seed,
    )
    return {node: (float(positions[node][0]), float(positions[node][1])) for node in nodes}
