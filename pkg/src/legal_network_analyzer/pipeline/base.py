"""
Base stage class and the state passed between stages
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import networkx as nx

from ..config import PipelineConfig
from ..errors import StateError
from ..models import ClusterFamily, ConsensusResult, ExtractionReport, NodeAlignment, Snapshot


@dataclass
class PipelineState:
    """Everything computed so far, keyed by snapshot year"""
    config: PipelineConfig
    snapshots: Dict[int, Snapshot] = field(default_factory=dict)
    reports: Dict[int, ExtractionReport] = field(default_factory=dict)
    refgraphs: Dict[int, nx.MultiDiGraph] = field(default_factory=dict)
    clustered: Dict[int, nx.MultiDiGraph] = field(default_factory=dict)
    subsequence: Dict[int, nx.MultiDiGraph] = field(default_factory=dict)
    quotients: Dict[int, nx.DiGraph] = field(default_factory=dict)
    consensus: Dict[int, ConsensusResult] = field(default_factory=dict)
    alignments: Dict[int, NodeAlignment] = field(default_factory=dict)  # keyed by the earlier year
    cluster_graph: Optional[nx.DiGraph] = None
    family_graph: Optional[nx.DiGraph] = None
    families: List[ClusterFamily] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def years(self) -> List[int]:
        return sorted(self.snapshots)

    def require(self, name: str) -> Any:
        value = getattr(self, name)
        if value is None or (hasattr(value, "__len__") and not value and name != "families"):
            raise StateError(f"'{name}' has not been computed yet")
        return value


class Stage(ABC):
    """Base class for all pipeline stages"""

    name: str = "base"

    def __init__(self, config: PipelineConfig):
        self.config = config

    @abstractmethod
    def run(self, state: PipelineState, out: Path) -> List[Path]:
        """Advance the state and return the artifacts written below `out`"""
        pass

    def directory(self, out: Path, name: str) -> Path:
        path = out / name
        path.mkdir(parents=True, exist_ok=True)
        return path
