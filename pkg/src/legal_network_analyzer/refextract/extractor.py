"""
Find / Parse / Align cross-reference extraction
"""
import csv
import logging
import re
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from ..models import (
    CiteKey, CiteKeySet, DocumentTree, ExtractionReport, ReferenceSpan, ResolvedReference,
    Snapshot, StructuralElement,
)
from .patterns import CitationProfile

logger = logging.getLogger(__name__)

UNKNOWN_LAW = "unknown-law"
MALFORMED_NUMERAL = "malformed-numeral"
MISSING_TARGET = "missing-target"

_WORDS = re.compile(r"[^\s,;]+")
_NUMBERED = re.compile(r"(\d+)([A-Za-z]?)")


def find_references(element: StructuralElement, profile: CitationProfile) -> List[ReferenceSpan]:
    """Maximal non-overlapping citation spans of the element text, left to right"""
    text = element.text
    if not text:
        return []
    candidates = []
    for order, pattern in enumerate(profile.find_patterns):
        for match in pattern.finditer(text):
            if match.end() > match.start():
                candidates.append((match.start(), -(match.end() - match.start()), order, match.end()))
    candidates.sort()

    spans = []
    last_end = 0
    for start, _, _, end in candidates:
        if start >= last_end:
            spans.append(ReferenceSpan(element_id=element.id, start=start, end=end, raw=text[start:end]))
            last_end = end
    return spans


def _normalize_number(number: str) -> str:
    match = re.match(r"0*(\d+)(.*)", number)
    if not match:
        return number
    return match.group(1) + match.group(2)


def _expand_range(first: str, last: str, max_range: int) -> List[str]:
    """Numbers strictly after `first` up to and including `last`"""
    a, b = _NUMBERED.fullmatch(first), _NUMBERED.fullmatch(last)
    if a and b:
        low, high = int(a.group(1)), int(b.group(1))
        if not a.group(2) and not b.group(2) and low < high and high - low <= max_range:
            return [str(n) for n in range(low + 1, high + 1)]
        suffix_a, suffix_b = a.group(2).lower(), b.group(2).lower()
        if low == high and suffix_a and suffix_b and suffix_a < suffix_b:
            return [f"{low}{chr(c)}" for c in range(ord(suffix_a) + 1, ord(suffix_b) + 1)]
    logger.debug("Range %s..%s not expanded", first, last)
    return [last]


def _resolve_context(
    raw: str, profile: CitationProfile, context: str, report: Optional[ExtractionReport]
) -> Tuple[Optional[str], str]:
    """Target document key of a span and the span text with the context phrase removed"""
    for rule, regex in zip(profile.contexts, profile.context_regexes):
        match = regex.search(raw)
        if not match:
            continue
        remainder = raw[: match.start()] + " " + raw[match.end():]
        if rule.kind == "same":
            return context, remainder
        named = match.group("context")
        if rule.kind == "law" or profile.law_name_index is not None:
            index = profile.law_name_index or {}
            if named not in index:
                logger.debug("Unresolvable law %r in %r", named, raw)
                if report is not None:
                    report.count(UNKNOWN_LAW)
                return None, remainder
            return index[named], remainder
        return named, remainder
    return context, raw


def parse_span(
    span: ReferenceSpan,
    profile: CitationProfile,
    context: str,
    report: Optional[ExtractionReport] = None,
) -> Optional[CiteKeySet]:
    """Derive cite keys from a span; None when the span cites a law outside the collection"""
    target, text = _resolve_context(span.raw, profile, context, report)
    if target is None:
        return None

    text = profile.locator_regex.sub(" ", text)
    marker = profile.marker_regex.search(text)
    if marker:
        text = text[marker.end():]

    numbers: List[str] = []
    pending_range = False
    for word in _WORDS.findall(text):
        lowered = word.lower()
        if lowered in profile.range_words:
            pending_range = bool(numbers)
        elif profile.numeral_regex.fullmatch(word):
            number = _normalize_number(word)
            if pending_range:
                numbers.extend(_expand_range(numbers[-1], number, profile.max_range))
            else:
                numbers.append(number)
            pending_range = False
        elif word[0].isdigit():
            logger.debug("Malformed numeral %r in %r", word, span.raw)
            if report is not None:
                report.count(MALFORMED_NUMERAL)

    if not numbers:
        return None
    return CiteKeySet(span=span, keys=[CiteKey(context=target, number=n) for n in numbers])


def align_keys(
    keys: CiteKeySet, snapshot: Snapshot, report: Optional[ExtractionReport] = None
) -> List[ResolvedReference]:
    """One reference per key occurrence that names a seqitem of the same snapshot"""
    resolved = []
    for key in keys.keys:
        target = snapshot.citekey_index.get(key.canonical)
        if target is None:
            if report is not None:
                report.count(MISSING_TARGET)
            continue
        resolved.append(ResolvedReference(source_id=keys.span.element_id, target_id=target, key=key.canonical))
    return resolved


def _extract_document(
    document: DocumentTree, snapshot: Snapshot, profile: CitationProfile
) -> Tuple[List[ResolvedReference], ExtractionReport]:
    report = ExtractionReport()
    references: List[ResolvedReference] = []
    for element in document.iter_nodes():
        if not element.text:
            continue
        report.elements += 1
        for span in find_references(element, profile):
            report.spans += 1
            keys = parse_span(span, profile, document.key, report)
            if keys is None:
                continue
            report.keys += len(keys.keys)
            found = align_keys(keys, snapshot, report)
            report.resolved += len(found)
            references.extend(found)
    return references, report


def extract_all(
    snapshot: Snapshot, profile: CitationProfile, n_jobs: int = 1
) -> Tuple[List[ResolvedReference], ExtractionReport]:
    """Run Find, Parse and Align over every text-bearing element of a snapshot"""
    profile = profile.with_law_index(snapshot)
    results = Parallel(n_jobs=n_jobs)(
        delayed(_extract_document)(doc, snapshot, profile) for doc in snapshot.documents
    )
    references: List[ResolvedReference] = []
    report = ExtractionReport()
    for found, partial in results:
        references.extend(found)
        report = report.merge(partial)

    if report.unresolved_total:
        logger.warning(
            "%s: %d of %d cite keys unresolved %s",
            snapshot.label, report.unresolved_total, report.keys + report.unresolved.get(UNKNOWN_LAW, 0),
            report.unresolved,
        )
    logger.info("%s: %d references resolved from %d spans", snapshot.label, report.resolved, report.spans)
    return references, report


def write_references_csv(references: Iterable[ResolvedReference], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["source_id", "target_id", "key"])
        for reference in references:
            writer.writerow([reference.source_id, reference.target_id, reference.key])
