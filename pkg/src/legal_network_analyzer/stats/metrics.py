"""
Clustering comparison: normalized mutual information and adjusted Rand index
"""
from typing import List, Mapping

import numpy as np
from pydantic import BaseModel, Field, model_validator
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score
from sklearn.metrics.cluster import contingency_matrix

from ..errors import ParameterError
from ..models import Clustering


class PartitionPair(BaseModel):
    """Two labelings of the same universe, aligned by position"""
    universe: List[str] = Field(default_factory=list)
    x: List[int] = Field(default_factory=list)
    y: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _same_length(self) -> "PartitionPair":
        if not (len(self.universe) == len(self.x) == len(self.y)):
            raise ValueError("Partitions must label the same universe")
        return self

    @classmethod
    def from_assignments(cls, a: Mapping[str, int], b: Mapping[str, int]) -> "PartitionPair":
        if set(a) != set(b):
            raise ParameterError(
                f"Partitions cover different universes ({len(set(a) ^ set(b))} node(s) differ)"
            )
        universe = sorted(a)
        return cls(universe=universe, x=[a[n] for n in universe], y=[b[n] for n in universe])

    @classmethod
    def from_clusterings(cls, a: Clustering, b: Clustering) -> "PartitionPair":
        return cls.from_assignments(a.assignment, b.assignment)

    @classmethod
    def from_blocks(cls, a: List[List], b: List[List]) -> "PartitionPair":
        """From explicit blocks, e.g. [[1, 2], [3, 4]]"""
        as_map = lambda blocks: {str(e): i for i, block in enumerate(blocks) for e in block}
        return cls.from_assignments(as_map(a), as_map(b))

    def contingency(self) -> np.ndarray:
        return contingency_matrix(self.x, self.y)

    def identical(self) -> bool:
        """Equal up to relabeling"""
        forward, backward = {}, {}
        for a, b in zip(self.x, self.y):
            if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
                return False
        return True


def entropy(labels: List[int]) -> float:
    """Shannon entropy in nats"""
    n = len(labels)
    if n == 0:
        return 0.0
    _, counts = np.unique(labels, return_counts=True)
    p = counts / n
    return float(-(p * np.log(p)).sum())


def nmi(pair: PartitionPair) -> float:
    """I(X;Y) / sqrt(H(X) H(Y)); degenerate entropies give 1 for identical partitions, else 0"""
    if pair.identical():
        return 1.0
    if entropy(pair.x) == 0.0 or entropy(pair.y) == 0.0:
        return 0.0
    value = normalized_mutual_info_score(pair.x, pair.y, average_method="geometric")
    return float(min(max(value, 0.0), 1.0))


def ari(pair: PartitionPair) -> float:
    """Pair-counting Rand index adjusted for chance"""
    if pair.identical():
        return 1.0
    return float(adjusted_rand_score(pair.x, pair.y))

