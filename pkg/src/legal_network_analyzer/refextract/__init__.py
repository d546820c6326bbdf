"""
Cross-reference extraction driven by declarative citation profiles
"""
from .extractor import align_keys, extract_all, find_references, parse_span, write_references_csv
from .patterns import BUILTIN_PROFILES, CitationProfile, ContextRule, load_profile

__all__ = [
    "BUILTIN_PROFILES",
    "CitationProfile",
    "ContextRule",
    "align_keys",
    "extract_all",
    "find_references",
    "load_profile",
    "parse_span",
    "write_references_csv",
]
