"""
JSON Schemas of bundle artifacts and bundle validation
"""
import json
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Dict, List, Optional, Type

from pydantic import BaseModel, ValidationError

from ..errors import IntegrityError, SchemaError
from ..fetch import sha256_file
from ..models import (
    AlluvialData,
    BundleManifest,
    ConsensusReport,
    ExtractionReport,
    FamilyReport,
    GrowthSeries,
    QuotientVizData,
    RegressionResult,
    SweepResult,
)

MANIFEST_NAME = "bundle.json"
SCHEMA_DIR = "schemas"

# artifact glob: model it must validate against
ARTIFACT_MODELS: Dict[str, Type[BaseModel]] = {
    MANIFEST_NAME: BundleManifest,
    "references/*-report.json": ExtractionReport,
    "clusterings/*-consensus.json": ConsensusReport,
    "dynamics/families.json": FamilyReport,
    "stats/growth.json": GrowthSeries,
    "stats/slope-size.json": RegressionResult,
    "stats/*-sweep.json": SweepResult,
    "figures/alluvial.json": AlluvialData,
    "figures/quotient-*.json": QuotientVizData,
}


def schema_name(model: Type[BaseModel]) -> str:
    return f"{model.__name__}.schema.json"


def model_for(relative_path: str) -> Optional[Type[BaseModel]]:
    for pattern, model in ARTIFACT_MODELS.items():
        if fnmatchcase(relative_path, pattern):
            return model
    return None


def write_schemas(bundle_dir: str | Path) -> List[Path]:
    """One JSON Schema file per artifact model"""
    target = Path(bundle_dir) / SCHEMA_DIR
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for model in sorted(set(ARTIFACT_MODELS.values()), key=lambda m: m.__name__):
        path = target / schema_name(model)
        path.write_text(json.dumps(model.model_json_schema(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    return written


def validate_bundle(bundle_dir: str | Path) -> BundleManifest:
    """Check every listed file's checksum and every JSON artifact against its model"""
    bundle_dir = Path(bundle_dir)
    manifest_path = bundle_dir / MANIFEST_NAME
    try:
        manifest = BundleManifest.model_validate_json(manifest_path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise SchemaError(f"Invalid bundle manifest {manifest_path}: {e}") from e

    listed = {entry.path for entry in manifest.files}
    for stage, paths in manifest.stages.items():
        unlisted = sorted(set(paths) - listed)
        if unlisted:
            raise IntegrityError(f"Stage {stage} artifacts missing from the manifest: {', '.join(unlisted)}")

    for entry in manifest.files:
        path = bundle_dir / entry.path
        if not path.exists():
            raise IntegrityError(f"Bundle file missing: {entry.path}")
        if sha256_file(path) != entry.sha256:
            raise IntegrityError(f"Checksum mismatch: {entry.path}")
        model = model_for(entry.path)
        if model is None:
            continue
        if not (bundle_dir / SCHEMA_DIR / schema_name(model)).exists():
            raise SchemaError(f"No schema shipped for {entry.path}")
        try:
            model.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise SchemaError(f"{entry.path} does not match {model.__name__}: {e}") from e
    return manifest
