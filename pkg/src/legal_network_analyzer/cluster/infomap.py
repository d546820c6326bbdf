"""
Map-equation optimizer: seeded node moves, aggregation and fine-tuning
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from ..models import Clustering
from .flow import FlowGraph
from .map_equation import codelength, module_penalty, plogp

logger = logging.getLogger(__name__)

MIN_IMPROVEMENT = 1e-12
MAX_SWEEPS = 100
MAX_ROUNDS = 20


class _Network:
    """Nodes with visit rates and inter-node flows; self flows dropped"""

    def __init__(self, visit: List[float], arcs: Dict[Tuple[int, int], float]):
        self.n = len(visit)
        self.visit = visit
        self.out_adj: List[List[Tuple[int, float]]] = [[] for _ in range(self.n)]
        self.in_adj: List[List[Tuple[int, float]]] = [[] for _ in range(self.n)]
        for (u, v), f in sorted(arcs.items()):
            if u == v or f <= 0:
                continue
            self.out_adj[u].append((v, f))
            self.in_adj[v].append((u, f))
        self.out_flow = [sum(f for _, f in adj) for adj in self.out_adj]
        self.in_flow = [sum(f for _, f in adj) for adj in self.in_adj]

    @classmethod
    def from_flow(cls, flow: FlowGraph) -> "_Network":
        arcs: Dict[Tuple[int, int], float] = {}
        for u, v, f in zip(flow.sources.tolist(), flow.targets.tolist(), flow.flow.tolist()):
            arcs[(u, v)] = arcs.get((u, v), 0.0) + f
        return cls(flow.visit.tolist(), arcs)

    def aggregate(self, modules: List[int]) -> "_Network":
        """One node per module; modules must be dense"""
        k = max(modules) + 1
        visit = [0.0] * k
        for v, m in enumerate(modules):
            visit[m] += self.visit[v]
        arcs: Dict[Tuple[int, int], float] = {}
        for u in range(self.n):
            for v, f in self.out_adj[u]:
                key = (modules[u], modules[v])
                arcs[key] = arcs.get(key, 0.0) + f
        return _Network(visit, arcs)


class _Modules:
    """Module flows and the running augmented objective"""

    def __init__(self, net: _Network, modules: List[int], preferred_n: Optional[int], strength: float):
        self.net = net
        self.preferred_n = preferred_n
        self.strength = strength
        self.module = list(modules)
        slots = net.n
        self.exit = [0.0] * slots
        self.enter = [0.0] * slots
        self.flow = [0.0] * slots
        self.size = [0] * slots
        for v, m in enumerate(self.module):
            self.flow[m] += net.visit[v]
            self.size[m] += 1
            for u, f in net.out_adj[v]:
                if self.module[u] != m:
                    self.exit[m] += f
                    self.enter[self.module[u]] += f
        self.count = sum(1 for s in self.size if s)
        self.empty = sorted(m for m in range(slots) if not self.size[m])
        self.node_log = sum(plogp(p) for p in net.visit)
        self.sum_enter = sum(self.enter)
        self.enter_log = sum(plogp(x) for x in self.enter)
        self.exit_log = sum(plogp(x) for x in self.exit)
        self.total_log = sum(plogp(x + p) for x, p in zip(self.exit, self.flow))

    def objective(self) -> float:
        return (
            plogp(self.sum_enter) - self.enter_log - self.exit_log + self.total_log - self.node_log
            + module_penalty(self.count, self.preferred_n, self.strength)
        )

    def _neighbour_flows(self, v: int) -> Tuple[Dict[int, float], Dict[int, float]]:
        out_to: Dict[int, float] = {}
        in_from: Dict[int, float] = {}
        for u, f in self.net.out_adj[v]:
            out_to[self.module[u]] = out_to.get(self.module[u], 0.0) + f
        for u, f in self.net.in_adj[v]:
            in_from[self.module[u]] = in_from.get(self.module[u], 0.0) + f
        return out_to, in_from

    def _after(self, v: int, a: int, b: int, out_to: Dict[int, float], in_from: Dict[int, float]):
        out_v, in_v, p_v = self.net.out_flow[v], self.net.in_flow[v], self.net.visit[v]
        exit_a = max(self.exit[a] - out_v + out_to.get(a, 0.0) + in_from.get(a, 0.0), 0.0)
        enter_a = max(self.enter[a] - in_v + in_from.get(a, 0.0) + out_to.get(a, 0.0), 0.0)
        exit_b = max(self.exit[b] + out_v - out_to.get(b, 0.0) - in_from.get(b, 0.0), 0.0)
        enter_b = max(self.enter[b] + in_v - in_from.get(b, 0.0) - out_to.get(b, 0.0), 0.0)
        flow_a = max(self.flow[a] - p_v, 0.0)
        flow_b = self.flow[b] + p_v
        count = self.count - (self.size[a] == 1) + (self.size[b] == 0)
        return exit_a, enter_a, exit_b, enter_b, flow_a, flow_b, count

    def delta(self, v: int, b: int, out_to: Dict[int, float], in_from: Dict[int, float]) -> float:
        a = self.module[v]
        exit_a, enter_a, exit_b, enter_b, flow_a, flow_b, count = self._after(v, a, b, out_to, in_from)
        sum_enter = self.sum_enter - self.enter[a] - self.enter[b] + enter_a + enter_b
        enter_log = self.enter_log - plogp(self.enter[a]) - plogp(self.enter[b]) + plogp(enter_a) + plogp(enter_b)
        exit_log = self.exit_log - plogp(self.exit[a]) - plogp(self.exit[b]) + plogp(exit_a) + plogp(exit_b)
        total_log = (
            self.total_log
            - plogp(self.exit[a] + self.flow[a]) - plogp(self.exit[b] + self.flow[b])
            + plogp(exit_a + flow_a) + plogp(exit_b + flow_b)
        )
        after = (
            plogp(sum_enter) - enter_log - exit_log + total_log - self.node_log
            + module_penalty(count, self.preferred_n, self.strength)
        )
        return after - self.objective()

    def move(self, v: int, b: int, out_to: Dict[int, float], in_from: Dict[int, float]) -> None:
        a = self.module[v]
        exit_a, enter_a, exit_b, enter_b, flow_a, flow_b, count = self._after(v, a, b, out_to, in_from)
        self.sum_enter += enter_a + enter_b - self.enter[a] - self.enter[b]
        self.enter_log += plogp(enter_a) + plogp(enter_b) - plogp(self.enter[a]) - plogp(self.enter[b])
        self.exit_log += plogp(exit_a) + plogp(exit_b) - plogp(self.exit[a]) - plogp(self.exit[b])
        self.total_log += (
            plogp(exit_a + flow_a) + plogp(exit_b + flow_b)
            - plogp(self.exit[a] + self.flow[a]) - plogp(self.exit[b] + self.flow[b])
        )
        if self.size[b] == 0:
            self.empty.remove(b)
        self.exit[a], self.enter[a], self.flow[a] = exit_a, enter_a, flow_a
        self.exit[b], self.enter[b], self.flow[b] = exit_b, enter_b, flow_b
        self.size[a] -= 1
        self.size[b] += 1
        if self.size[a] == 0:
            self.empty.append(a)
            self.empty.sort()
        self.count = count
        self.module[v] = b

    def sweep(self, rng: np.random.Generator) -> int:
        """One pass over all nodes in seeded order; returns the number of moves"""
        moves = 0
        for v in rng.permutation(self.net.n).tolist():
            a = self.module[v]
            out_to, in_from = self._neighbour_flows(v)
            candidates = sorted((set(out_to) | set(in_from)) - {a})
            if self.size[a] > 1 and self.empty:
                candidates = sorted(candidates + [self.empty[0]])
            best, best_delta = a, -MIN_IMPROVEMENT
            for b in candidates:
                gain = self.delta(v, b, out_to, in_from)
                if gain < best_delta:
                    best, best_delta = b, gain
            if best != a:
                self.move(v, best, out_to, in_from)
                moves += 1
        return moves


def _dense(labels: List[int]) -> List[int]:
    """Relabel to 0..k-1 in order of first appearance"""
    mapping: Dict[int, int] = {}
    return [mapping.setdefault(label, len(mapping)) for label in labels]


def _optimize(net: _Network, initial: List[int], rng: np.random.Generator,
              preferred_n: Optional[int], strength: float) -> Tuple[List[int], int]:
    state = _Modules(net, initial, preferred_n, strength)
    total = 0
    for _ in range(MAX_SWEEPS):
        moves = state.sweep(rng)
        total += moves
        if not moves:
            break
    return _dense(state.module), total


def _coarsen(base: _Network, modules: List[int], rng: np.random.Generator,
             preferred_n: Optional[int], strength: float) -> List[int]:
    """Repeated node moves on successively aggregated networks"""
    net = base.aggregate(modules)
    while net.n > 1:
        local, moves = _optimize(net, list(range(net.n)), rng, preferred_n, strength)
        if not moves:
            break
        modules = [local[m] for m in modules]
        net = net.aggregate(local)
    return modules


def _augmented(flow: FlowGraph, modules: List[int], preferred_n: Optional[int], strength: float) -> float:
    return codelength(flow, modules) + module_penalty(len(set(modules)), preferred_n, strength)


def infomap_run(
    flow: FlowGraph,
    preferred_n: Optional[int] = None,
    seed: int = 0,
    strength: float = 1.0,
) -> Clustering:
    """One seeded two-level optimization of the map equation"""
    if preferred_n is not None and preferred_n < 1:
        raise ParameterError(f"Preferred module count must be positive, got {preferred_n}")
    n = flow.size
    if n == 0:
        return Clustering(snapshot_id=flow.name, seed=seed, codelength=0.0)
    rng = np.random.default_rng(seed)
    base = _Network.from_flow(flow)

    modules = _coarsen(base, list(range(n)), rng, preferred_n, strength)
    for _ in range(MAX_ROUNDS):
        fine, moves = _optimize(base, modules, rng, preferred_n, strength)
        if not moves:
            break
        modules = _coarsen(base, fine, rng, preferred_n, strength)

    candidates = [_dense(modules), list(range(n)), [0] * n]
    scores = [_augmented(flow, c, preferred_n, strength) for c in candidates]
    best = candidates[int(np.argmin(scores))]
    assignment = dict(zip(flow.nodes, _dense(best)))
    result = Clustering(
        snapshot_id=flow.name, assignment=assignment, seed=seed, codelength=codelength(flow, best),
    )
    logger.debug("seed %d: %d modules, L = %.6f bits", seed, result.module_count, result.codelength)
    return result
