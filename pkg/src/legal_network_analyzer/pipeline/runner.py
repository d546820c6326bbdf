"""
Runs stages in order into a scratch directory that replaces the bundle on success
"""
import logging
import shutil
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ..config import PipelineConfig
from ..errors import ConfigError, IntegrityError, PipelineError
from ..exporters.schemas import MANIFEST_NAME, write_schemas
from ..fetch import sha256_file
from ..models import BundleFile, BundleManifest
from .base import PipelineState
from .stages import STAGE_NAMES, STAGES

logger = logging.getLogger(__name__)

StageCallback = Callable[[str], None]


def _bundle_files(root: Path) -> List[BundleFile]:
    return [
        BundleFile(path=path.relative_to(root).as_posix(), sha256=sha256_file(path))
        for path in sorted(root.rglob("*"))
        if path.is_file() and path.name != MANIFEST_NAME
    ]


def _artifact_paths(root: Path, written: List[Path]) -> List[str]:
    paths = []
    for path in written:
        if not path.is_file():
            raise IntegrityError(f"Stage reported an artifact it did not write: {path}")
        paths.append(path.relative_to(root).as_posix())
    return sorted(paths)


def execute(
    config: PipelineConfig,
    until: str = "export",
    on_stage: Optional[StageCallback] = None,
) -> Tuple[BundleManifest, PipelineState]:
    """Run every stage up to and including `until`; the bundle appears only if all succeed"""
    if until not in STAGE_NAMES:
        raise ConfigError(f"Unknown stage {until!r}; choose from {', '.join(STAGE_NAMES)}")
    output = Path(config.output)
    scratch = output.parent / f".{output.name}.partial"
    if scratch.exists():
        shutil.rmtree(scratch)
    scratch.mkdir(parents=True)

    state = PipelineState(config=config)
    last = STAGE_NAMES.index(until)
    artifacts: Dict[str, List[str]] = {}
    try:
        for stage_class in STAGES[: last + 1]:
            stage = stage_class(config)
            if on_stage:
                on_stage(stage.name)
            logger.debug("Stage %s", stage.name)
            try:
                written = stage.run(state, scratch)
                artifacts[stage.name] = _artifact_paths(scratch, written)
            except Exception as e:
                raise PipelineError(stage.name, e) from e
            logger.debug("Stage %s wrote %d files", stage.name, len(written))
        write_schemas(scratch)
        manifest = BundleManifest(
            stage=until,
            files=_bundle_files(scratch),
            extraction=state.reports,
            stages=artifacts,
            extra={
                "years": state.years,
                "config": config.model_dump(mode="json", exclude={"manifests", "output", "cache_dir", "n_jobs"}),
            },
        )
        (scratch / MANIFEST_NAME).write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    except BaseException:
        shutil.rmtree(scratch, ignore_errors=True)
        raise

    if output.exists():
        shutil.rmtree(output)
    scratch.rename(output)
    logger.info("Bundle written to %s (%d files)", output, len(manifest.files))
    return manifest, state


def run_pipeline(config: PipelineConfig, until: str = "export") -> BundleManifest:
    return execute(config, until)[0]
