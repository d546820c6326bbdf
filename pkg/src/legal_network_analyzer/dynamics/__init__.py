"""
Node alignment across snapshots and cluster family assembly
"""
from .alignment import align_nodes, jaro_winkler, write_alignment_csv
from .families import (
    build_cluster_graph,
    build_family_graph,
    chi,
    cluster_families,
    cluster_label,
    family_of,
    family_size_series,
    unit_index,
    write_cluster_graph_csv,
    write_family_report_json,
)

__all__ = [
    "align_nodes",
    "build_cluster_graph",
    "build_family_graph",
    "chi",
    "cluster_families",
    "cluster_label",
    "family_of",
    "family_size_series",
    "jaro_winkler",
    "unit_index",
    "write_alignment_csv",
    "write_cluster_graph_csv",
    "write_family_report_json",
]
