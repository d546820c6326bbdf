"""
Map-equation clustering and consensus over seeded runs
"""
from .consensus import (
    consensus,
    consensus_report,
    cooccurrence_matrix,
    run_variance,
    seeded_runs,
    write_clustering_csv,
    write_consensus_json,
)
from .flow import FlowGraph, visit_rates
from .infomap import infomap_run
from .map_equation import codelength, module_penalty, one_level_codelength

__all__ = [
    "FlowGraph",
    "codelength",
    "consensus",
    "consensus_report",
    "cooccurrence_matrix",
    "infomap_run",
    "module_penalty",
    "one_level_codelength",
    "run_variance",
    "seeded_runs",
    "visit_rates",
    "write_clustering_csv",
    "write_consensus_json",
]
