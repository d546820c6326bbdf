"""
Token, key-order and structure accounting over parsed snapshots
"""
import re
from typing import Callable, Dict, List, Tuple, Union

from ..errors import ParameterError, StateError
from ..models import ElementKind, Snapshot, SnapshotStats

_NATURAL_RUN = re.compile(r"(\d+)|(\D+)")

SortKey = Tuple[Tuple[int, Union[int, str]], ...]


def count_tokens(text: str) -> int:
    """Number of maximal runs of non-whitespace characters"""
    # str.split() without arguments splits on every Unicode whitespace class
    return len(text.split())


def collapse_ws(text: str) -> str:
    """Collapse whitespace runs to single spaces"""
    return " ".join(text.split())


def natural_sort_key(key: str) -> SortKey:
    """Mixed alphanumeric order: numeric runs compare numerically, 1437 < 1437f < 1438"""
    parts = []
    for number, letters in _NATURAL_RUN.findall(key):
        if number:
            parts.append((0, int(number)))
        else:
            parts.append((1, letters.lower()))
    return tuple(parts)


def lexicographic_sort_key(key: str) -> SortKey:
    return ((1, key),)


KEY_ORDERS: Dict[str, Callable[[str], SortKey]] = {
    "natural": natural_sort_key,
    "lexicographic": lexicographic_sort_key,
}


def citekey_sort_key(order: str = "natural") -> Callable[[str], SortKey]:
    """Comparator (as a sort key) for the configured key ordering"""
    try:
        return KEY_ORDERS[order]
    except KeyError:
        raise ParameterError(f"Unknown key order: {order}") from None


def make_cite_key(document_key: str, local_key: str) -> str:
    """Snapshot-unique cite key of a seqitem"""
    return f"{document_key}:{local_key.strip()}"


def split_cite_key(cite_key: str) -> Tuple[str, str]:
    document_key, _, local_key = cite_key.rpartition(":")
    return document_key, local_key


def ordered_cite_keys(snapshot: Snapshot, order: str = "natural") -> List[str]:
    """Seqitem cite keys sorted by (document key, local key) under the key order"""
    sort_key = citekey_sort_key(order)
    return sorted(
        snapshot.citekey_index,
        key=lambda k: (sort_key(split_cite_key(k)[0]), sort_key(split_cite_key(k)[1])),
    )


def document_order_cite_keys(snapshot: Snapshot) -> List[str]:
    return [
        e.cite_key
        for doc in snapshot.documents
        for e in doc.iter_nodes()
        if e.kind == ElementKind.SEQITEM and e.cite_key
    ]


def snapshot_stats(snapshot: Snapshot, include_references: bool = True) -> SnapshotStats:
    """Tokens (appendices excluded), structures (hierarchy nodes incl. meta root), references"""
    tokens = sum(
        count_tokens(e.text)
        for doc in snapshot.documents
        for e in doc.iter_nodes()
        if e.text and not e.appendix
    )
    structures = 1 + sum(doc.node_count for doc in snapshot.documents)

    references = None
    if include_references:
        if snapshot.references is None:
            raise StateError(
                f"References of {snapshot.label} requested before reference resolution"
            )
        references = len(snapshot.references)

    return SnapshotStats(tokens=tokens, structures=structures, references=references)
