"""
Stationary visit rates and link flows of a weighted directed graph
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..errors import ParameterError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12
MAX_ITERATIONS = 10_000


@dataclass(frozen=True, eq=False)
class FlowGraph:
    """Visit rates p_v and per-arc flows f_uv = p_u * w_uv / w_out(u)"""
    nodes: Tuple[str, ...]
    sources: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    visit: np.ndarray
    flow: np.ndarray
    tau: float
    iterations: int = 0
    residual: float = 0.0
    name: str = ""
    index: Dict[str, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.nodes)


def aggregate_arcs(graph: nx.Graph) -> Tuple[List[str], Dict[Tuple[int, int], float]]:
    """Node order and summed arc weights (weight x multiplicity over parallel arcs)"""
    nodes = list(graph.nodes)
    index = {n: i for i, n in enumerate(nodes)}
    arcs: Dict[Tuple[int, int], float] = {}
    edges = graph.edges(data=True)
    for u, v, data in edges:
        weight = float(data.get("weight", 1.0)) * data.get("multiplicity", 1)
        if weight <= 0:
            continue
        pairs = [(index[u], index[v])]
        if not graph.is_directed() and u != v:
            pairs.append((index[v], index[u]))
        for pair in pairs:
            arcs[pair] = arcs.get(pair, 0.0) + weight
    return nodes, arcs


def visit_rates(
    graph: nx.Graph,
    tau: float = 0.15,
    tolerance: float = TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> FlowGraph:
    """Power iteration with unrecorded teleportation; dangling nodes teleport uniformly"""
    if graph.number_of_nodes() == 0:
        raise ParameterError("Cannot compute visit rates of an empty graph")
    if not 0 <= tau < 1:
        raise ParameterError(f"Teleportation rate must lie in [0, 1), got {tau}")

    nodes, arcs = aggregate_arcs(graph)
    n = len(nodes)
    keys = sorted(arcs)
    sources = np.array([k[0] for k in keys], dtype=np.int64)
    targets = np.array([k[1] for k in keys], dtype=np.int64)
    weights = np.array([arcs[k] for k in keys], dtype=float)

    out_weight = np.bincount(sources, weights=weights, minlength=n)
    dangling = out_weight == 0
    transition = weights / out_weight[sources]
    matrix = sparse.csr_matrix((transition, (sources, targets)), shape=(n, n))

    p = np.full(n, 1.0 / n)
    residual = np.inf
    iterations = 0
    while iterations < max_iterations:
        iterations += 1
        spread = matrix.T @ p + p[dangling].sum() / n
        following = (1 - tau) * spread + tau / n
        following /= following.sum()
        residual = float(np.abs(following - p).sum())
        p = following
        if residual < tolerance:
            break
    else:
        logger.warning("Visit rates did not converge after %d iterations (residual %.3e)", iterations, residual)

    flow = p[sources] * transition if len(keys) else np.zeros(0)
    return FlowGraph(
        nodes=tuple(nodes),
        sources=sources,
        targets=targets,
        weights=weights,
        visit=p,
        flow=flow,
        tau=tau,
        iterations=iterations,
        residual=residual,
        name=str(graph.graph.get("snapshot", "")),
        index={node: i for i, node in enumerate(nodes)},
    )
