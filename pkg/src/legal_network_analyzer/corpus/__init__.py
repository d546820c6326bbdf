"""
Document model parsing and token/structure accounting
"""
from .parser import (
    SnapshotManifest,
    build_snapshot,
    check_series,
    load_series,
    load_snapshot,
    parse_document,
    serialize_document,
)
from .tokens import (
    citekey_sort_key,
    collapse_ws,
    count_tokens,
    make_cite_key,
    natural_sort_key,
    snapshot_stats,
    split_cite_key,
)

__all__ = [
    "SnapshotManifest",
    "build_snapshot",
    "check_series",
    "citekey_sort_key",
    "collapse_ws",
    "count_tokens",
    "load_series",
    "load_snapshot",
    "make_cite_key",
    "natural_sort_key",
    "parse_document",
    "serialize_document",
    "snapshot_stats",
    "split_cite_key",
]
