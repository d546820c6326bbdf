"""
Stage orchestration from corpus to artifact bundle
"""
from .base import PipelineState, Stage
from .runner import execute, run_pipeline
from .stages import STAGE_BY_NAME, STAGE_NAMES, STAGES

__all__ = [
    "PipelineState",
    "STAGES",
    "STAGE_BY_NAME",
    "STAGE_NAMES",
    "Stage",
    "execute",
    "run_pipeline",
]
