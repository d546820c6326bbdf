"""
Graph views of a snapshot: hierarchy, reference, (sub)sequence and quotient graphs
"""
from .builders import (
    CONTAINMENT,
    META_ROOT,
    REFERENCE,
    SEQUENCE,
    build_hierarchy,
    build_reference,
    build_sequence,
    build_subsequence,
    default_weight,
    distance_weight,
    hierarchy_distance,
    quotient,
    reference_multiplicity,
)
from .graphml import export_graphml, multiplicity_range, multiplicity_table
from .merge import SELECTORS, resolve_selector

__all__ = [
    "CONTAINMENT",
    "META_ROOT",
    "REFERENCE",
    "SELECTORS",
    "SEQUENCE",
    "build_hierarchy",
    "build_reference",
    "build_sequence",
    "build_subsequence",
    "default_weight",
    "distance_weight",
    "export_graphml",
    "hierarchy_distance",
    "multiplicity_range",
    "multiplicity_table",
    "quotient",
    "reference_multiplicity",
    "resolve_selector",
]
