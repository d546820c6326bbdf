"""
Pipeline configuration loaded from a single TOML or JSON file
"""
import json
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError
from .graphs.builders import DEFAULT_DECAY, WeightFunction, distance_weight
from .graphs.merge import resolve_selector

CACHE_ENV = "LEGAL_NETWORK_CACHE"
DEFAULT_CACHE = Path.home() / ".cache" / "legal-network-analyzer"


def default_cache_dir() -> str:
    return os.environ.get(CACHE_ENV) or str(DEFAULT_CACHE)


class ClusteringConfig(BaseModel):
    """Consensus clustering parameters"""
    model_config = ConfigDict(extra="forbid")

    runs: int = Field(default=1000, ge=1)
    threshold: float = Field(default=0.95, gt=0.0, le=1.0)
    preferred_n: Optional[int] = Field(default=100, ge=1)
    seed_base: int = Field(default=0, ge=0)
    tau: float = Field(default=0.15, ge=0.0, lt=1.0)
    strength: float = Field(default=1.0, ge=0.0)


class GraphConfig(BaseModel):
    """Merge condition and arc weights of the clustered graph"""
    model_config = ConfigDict(extra="forbid")

    rho: str = "chapter-or-title"
    alpha: float = Field(default=0.5, gt=0.0, le=1.0)
    decay: float = Field(default=DEFAULT_DECAY, gt=0.0)
    # None: references only for the "us" profile, sequence arcs otherwise
    sequence_arcs: Optional[bool] = None
    quotient: str = "document"

    @field_validator("rho", "quotient")
    @classmethod
    def _known_selector(cls, value: str) -> str:
        resolve_selector(value)
        return value

    def weight_function(self) -> WeightFunction:
        return distance_weight(self.decay)


class ExportConfig(BaseModel):
    """Figure and report parameters"""
    model_config = ConfigDict(extra="forbid")

    top_n: int = Field(default=50, ge=1)
    top_families: int = Field(default=20, ge=0, le=20)
    flow_threshold: float = Field(default=0.15, ge=0.0, le=1.0)
    min_tokens: int = Field(default=5000, ge=0)
    degree_label_threshold: int = Field(default=20, ge=0)
    layout_k: float = Field(default=2.2, gt=0.0)
    layout_seed: int = 1234
    tfidf_k: int = Field(default=10, ge=1)


class SweepConfig(BaseModel):
    """Optional clustering sweeps run by the stats stage"""
    model_config = ConfigDict(extra="forbid")

    sensitivity: bool = False
    robustness: bool = False
    consensus_sizes: List[int] = Field(default_factory=lambda: [10, 100, 1000])
    repeats: int = Field(default=100, ge=2)


class PipelineConfig(BaseModel):
    """Complete, validated parameter set of one pipeline run"""
    model_config = ConfigDict(extra="forbid")

    collection: str = "us"
    manifests: List[str] = Field(default_factory=list)
    importer: Optional[str] = None
    importer_options: Dict[str, Any] = Field(default_factory=dict)
    profile: str = "us"
    gamma: float = Field(default=0.15, ge=0.0, le=1.0)
    graph: GraphConfig = Field(default_factory=GraphConfig)
    clustering: ClusteringConfig = Field(default_factory=ClusteringConfig)
    export: ExportConfig = Field(default_factory=ExportConfig)
    sweeps: SweepConfig = Field(default_factory=SweepConfig)
    output: str = "bundle"
    cache_dir: str = Field(default_factory=default_cache_dir)
    n_jobs: int = Field(default=1, ge=1)
    years: List[int] = Field(default_factory=list)  # archives for `fetch`

    @model_validator(mode="after")
    def _has_source(self) -> "PipelineConfig":
        if not self.manifests and not self.importer:
            raise ValueError("no corpus: give at least one manifest or an importer")
        return self

    @model_validator(mode="after")
    def _profile_arcs(self) -> "PipelineConfig":
        if self.graph.sequence_arcs is None:
            self.graph = self.graph.model_copy(update={"sequence_arcs": self.profile != "us"})
        return self

    def resolved(self, base: Path) -> "PipelineConfig":
        """Copy with relative manifest and output paths anchored at `base`"""
        anchor = lambda p: str(Path(p) if Path(p).is_absolute() else (base / p).resolve())
        return self.model_copy(update={
            "manifests": [anchor(m) for m in self.manifests],
            "output": anchor(self.output),
        })


def parse_config(data: Dict[str, Any]) -> PipelineConfig:
    try:
        return PipelineConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


def load_config(path: str | Path) -> PipelineConfig:
    """Read a .toml or .json configuration; relative paths resolve against its folder"""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ConfigError(f"Cannot read configuration {path}: {e}") from e
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(raw.decode("utf-8"))
        elif path.suffix.lower() == ".json":
            data = json.loads(raw)
        else:
            raise ConfigError(f"Unsupported configuration format: {path.suffix or path.name}")
    except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigError(f"Malformed configuration {path}: {e}") from e
    return parse_config(data).resolved(path.parent.resolve())


def save_config(config: PipelineConfig, path: str | Path) -> None:
    """JSON only; TOML is read-only"""
    path = Path(path)
    if path.suffix.lower() != ".json":
        raise ConfigError("Configurations are written as JSON")
    path.write_text(config.model_dump_json(indent=2), encoding="utf-8")
