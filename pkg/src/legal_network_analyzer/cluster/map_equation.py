"""
Two-level map equation
"""
import math
from typing import Mapping, Optional, Sequence

import numpy as np

from ..errors import MappingError
from ..models import Clustering
from .flow import FlowGraph


def plogp(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def _plogp(values: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values, dtype=float)
    positive = values > 0
    out[positive] = values[positive] * np.log2(values[positive])
    return out


def module_array(flow: FlowGraph, partition: Clustering | Mapping[str, int] | Sequence[int]) -> np.ndarray:
    """Dense module index per flow node"""
    if isinstance(partition, Clustering):
        partition = partition.assignment
    if isinstance(partition, Mapping):
        missing = [n for n in flow.nodes if n not in partition]
        if missing:
            raise MappingError(f"Partition does not cover node(s) {missing[:5]}")
        labels = [partition[n] for n in flow.nodes]
    else:
        labels = list(partition)
    _, dense = np.unique(np.asarray(labels), return_inverse=True)
    return dense.reshape(-1)


def codelength(flow: FlowGraph, partition: Clustering | Mapping[str, int] | Sequence[int]) -> float:
    """L(M) = q H(Q) + sum_m p_m H(P_m), in bits"""
    modules = module_array(flow, partition)
    k = int(modules.max()) + 1 if modules.size else 0
    crossing = modules[flow.sources] != modules[flow.targets]
    exits = np.bincount(modules[flow.sources], weights=flow.flow * crossing, minlength=k)
    enters = np.bincount(modules[flow.targets], weights=flow.flow * crossing, minlength=k)
    module_flow = np.bincount(modules, weights=flow.visit, minlength=k)

    length = (
        plogp(float(enters.sum()))
        - _plogp(enters).sum()
        - _plogp(exits).sum()
        + _plogp(exits + module_flow).sum()
        - _plogp(flow.visit).sum()
    )
    return max(float(length), 0.0)


def one_level_codelength(flow: FlowGraph) -> float:
    """Entropy of the visit rates"""
    return float(-_plogp(flow.visit).sum())


def module_penalty(module_count: int, preferred_n: Optional[int], strength: float) -> float:
    """strength * |ln(m / preferred_n)|; zero without a preferred count"""
    if preferred_n is None or module_count == 0:
        return 0.0
    return strength * abs(math.log(module_count / preferred_n))
