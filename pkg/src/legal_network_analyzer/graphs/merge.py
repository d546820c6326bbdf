"""
Merge conditions: selectors mapping a hierarchy node to the node it is merged into
"""
import re
from fnmatch import fnmatchcase
from typing import Callable, Dict, Optional

import networkx as nx

from ..errors import ConfigError

Selector = Callable[[nx.Graph, str], Optional[str]]

_ATTR = re.compile(r"attr:(?P<name>\w+)=(?P<value>.+)")
_CHAPTER = re.compile(r"\s*(chapter|kapitel)\b", re.IGNORECASE)
_BOOK = re.compile(r"\s*(book|buch)\b", re.IGNORECASE)


def _walk_up(hierarchy: nx.Graph, node: str):
    while node is not None:
        yield node
        node = hierarchy.nodes[node].get("parent")


def _nearest_heading_or_document(pattern: re.Pattern) -> Selector:
    def select(hierarchy: nx.Graph, node: str) -> Optional[str]:
        for candidate in _walk_up(hierarchy, node):
            data = hierarchy.nodes[candidate]
            if data["kind"] == "item" and pattern.match(data.get("heading") or ""):
                return candidate
            if data["kind"] == "document":
                return candidate
        return None
    return select


def none(hierarchy: nx.Graph, node: str) -> Optional[str]:
    return node


def document(hierarchy: nx.Graph, node: str) -> Optional[str]:
    for candidate in _walk_up(hierarchy, node):
        if hierarchy.nodes[candidate]["kind"] == "document":
            return candidate
    return None


chapter_or_title = _nearest_heading_or_document(_CHAPTER)
chapter_or_title.__name__ = "chapter-or-title"
book_or_law = _nearest_heading_or_document(_BOOK)
book_or_law.__name__ = "book-or-law"


def attribute(name: str, value: str) -> Selector:
    """Nearest ancestor-or-self whose attribute matches a glob pattern"""
    def select(hierarchy: nx.Graph, node: str) -> Optional[str]:
        for candidate in _walk_up(hierarchy, node):
            found = hierarchy.nodes[candidate].get(name)
            if found is not None and fnmatchcase(str(found), value):
                return candidate
        return None
    select.__name__ = f"attr:{name}={value}"
    return select


SELECTORS: Dict[str, Selector] = {
    "none": none,
    "chapter-or-title": chapter_or_title,
    "book-or-law": book_or_law,
    "document": document,
}


def resolve_selector(spec: str | Selector) -> Selector:
    """Selector by name, attr:<name>=<glob> expression, or callable"""
    if callable(spec):
        return spec
    if spec in SELECTORS:
        return SELECTORS[spec]
    match = _ATTR.fullmatch(spec)
    if match:
        return attribute(match.group("name"), match.group("value"))
    raise ConfigError(f"Unknown merge condition: {spec!r}")
