"""
Canonical corpus XML reader/writer and snapshot manifests
"""
import datetime as dt
import json
import logging
from itertools import count
from pathlib import Path
from typing import Iterator, List, Optional, Sequence

from joblib import Parallel, delayed
from lxml import etree
from pydantic import BaseModel, Field, ValidationError

from ..errors import IntegrityError, ParseError, SchemaError, StructureError
from ..models import DocumentTree, ElementKind, Snapshot, StructuralElement
from .tokens import make_cite_key

logger = logging.getLogger(__name__)

KNOWN_TAGS = {kind.value for kind in ElementKind}
TEXT_BEARING = {ElementKind.SEQITEM, ElementKind.SUBSEQITEM}
ATTRIBUTES = {
    ElementKind.DOCUMENT: {"abbreviation", "heading", "date", "key", "id", "appendix"},
    ElementKind.ITEM: {"heading", "id", "appendix"},
    ElementKind.SEQITEM: {"citekey", "heading", "id", "appendix"},
    ElementKind.SUBSEQITEM: {"heading", "id", "appendix"},
}


class SnapshotManifest(BaseModel):
    """JSON manifest listing the document files of one snapshot"""
    collection_id: str
    date: dt.date
    files: List[str] = Field(default_factory=list)


def parse_date(value: Optional[str]) -> Optional[dt.date]:
    """ISO date, or a bare year meaning January 1"""
    if not value:
        return None
    value = value.strip()
    if value.isdigit() and len(value) == 4:
        return dt.date(int(value), 1, 1)
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise SchemaError(f"Invalid date attribute: {value!r}") from None


def _byte_offset(data: bytes, line: int, column: int) -> int:
    lines = data.split(b"\n")
    offset = sum(len(l) + 1 for l in lines[: max(line - 1, 0)])
    return offset + max(column - 1, 0)


def _direct_text(node: etree._Element) -> str:
    parts = [node.text or ""] + [child.tail or "" for child in node]
    return " ".join(p.strip() for p in parts if p.strip())


def _flag(node: etree._Element, name: str) -> bool:
    return (node.get(name) or "").strip().lower() in ("true", "1", "yes")


class _TreeBuilder:
    """Builds a frozen StructuralElement tree from an lxml element"""

    def __init__(self, document_key: str):
        self.document_key = document_key
        self.ordinal = count()
        self.seen_ids: set = set()
        self.seen_keys: set = set()

    def build(self, node: etree._Element, level: int, in_seqitem: bool, appendix: bool) -> StructuralElement:
        tag = node.tag
        if tag not in KNOWN_TAGS:
            raise SchemaError(f"Unknown element kind <{tag}> at line {node.sourceline}")
        kind = ElementKind(tag)
        if level == 0 and kind != ElementKind.DOCUMENT:
            raise SchemaError(f"Root element must be <document>, found <{tag}>")
        if level > 0 and kind == ElementKind.DOCUMENT:
            raise StructureError(f"Nested <document> at line {node.sourceline}")
        if kind == ElementKind.SUBSEQITEM and not in_seqitem:
            raise StructureError(f"<subseqitem> outside <seqitem> at line {node.sourceline}")
        if in_seqitem and kind in (ElementKind.SEQITEM, ElementKind.ITEM):
            raise StructureError(f"<{tag}> nested inside <seqitem> at line {node.sourceline}")

        unknown = set(node.attrib) - ATTRIBUTES[kind]
        if unknown:
            raise SchemaError(f"Unknown attribute(s) {sorted(unknown)} on <{tag}>")

        ordinal = next(self.ordinal)
        element_id = node.get("id") or f"{self.document_key}:{ordinal}"
        if element_id in self.seen_ids:
            raise IntegrityError(f"Duplicate element id {element_id!r}")
        self.seen_ids.add(element_id)

        text = _direct_text(node)
        if text and kind not in TEXT_BEARING:
            raise SchemaError(f"Text content inside <{tag}> at line {node.sourceline}")

        cite_key = local_key = None
        if kind == ElementKind.SEQITEM:
            local_key = (node.get("citekey") or "").strip()
            if not local_key:
                raise SchemaError(f"<seqitem> without citekey at line {node.sourceline}")
            cite_key = make_cite_key(self.document_key, local_key)
            if cite_key in self.seen_keys:
                raise IntegrityError(f"Duplicate cite key {cite_key!r}")
            self.seen_keys.add(cite_key)

        appendix = appendix or _flag(node, "appendix")
        inside = in_seqitem or kind == ElementKind.SEQITEM
        children = tuple(
            self.build(child, level + 1, inside, appendix)
            for child in node
            if isinstance(child.tag, str)
        )
        return StructuralElement(
            id=element_id,
            kind=kind,
            level=level,
            heading=node.get("heading"),
            cite_key=cite_key,
            local_key=local_key,
            abbreviation=node.get("abbreviation") if kind == ElementKind.DOCUMENT else None,
            text=text,
            appendix=appendix,
            children=children,
        )


def parse_document(xml_bytes: bytes, key: Optional[str] = None) -> DocumentTree:
    """Parse one canonical corpus XML document"""
    parser = etree.XMLParser(remove_comments=True, remove_pis=True, resolve_entities=False, no_network=True)
    try:
        root = etree.fromstring(xml_bytes, parser)
    except etree.XMLSyntaxError as e:
        line, column = e.position if e.position else (0, 0)
        raise ParseError(f"Malformed XML: {e.msg}", _byte_offset(xml_bytes, line, column)) from e

    document_key = root.get("abbreviation") or root.get("key") or key or "doc"
    tree = _TreeBuilder(document_key).build(root, 0, False, False)
    date = parse_date(root.get("date"))
    if date is None:
        raise SchemaError(f"<document> {document_key!r} without date attribute")
    return DocumentTree(key=document_key, root=tree, date=date)


def _write_element(element: StructuralElement, parent: Optional[etree._Element], parent_appendix: bool) -> etree._Element:
    tag = element.kind.value
    node = etree.Element(tag) if parent is None else etree.SubElement(parent, tag)
    node.set("id", element.id)
    if element.kind == ElementKind.SEQITEM and element.local_key:
        node.set("citekey", element.local_key)
    if element.abbreviation:
        node.set("abbreviation", element.abbreviation)
    if element.heading is not None:
        node.set("heading", element.heading)
    if element.appendix and not parent_appendix:
        node.set("appendix", "true")
    if element.text:
        node.text = element.text
    for child in element.children:
        _write_element(child, node, element.appendix)
    return node


def serialize_document(tree: DocumentTree) -> bytes:
    """Write a document tree as canonical corpus XML"""
    root = _write_element(tree.root, None, False)
    if not tree.root.abbreviation:
        root.set("key", tree.key)
    if tree.date is not None:
        root.set("date", tree.date.isoformat())
    return etree.tostring(root, xml_declaration=True, encoding="UTF-8", pretty_print=True)


def build_snapshot(collection_id: str, date: dt.date, documents: Sequence[DocumentTree]) -> Snapshot:
    """Assemble a snapshot and its cite-key index"""
    index = {}
    for doc in documents:
        for element in doc.seqitems():
            if element.cite_key in index:
                raise IntegrityError(f"Cite key {element.cite_key!r} occurs in more than one document")
            index[element.cite_key] = element.id
    return Snapshot(collection_id=collection_id, date=date, documents=tuple(documents), citekey_index=index)


def _parse_file(path: Path) -> DocumentTree:
    return parse_document(path.read_bytes(), key=path.stem)


def load_manifest(manifest_path: str | Path) -> SnapshotManifest:
    path = Path(manifest_path)
    try:
        return SnapshotManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise SchemaError(f"Invalid snapshot manifest {path}: {e}") from e


def load_snapshot(manifest_path: str | Path, n_jobs: int = 1) -> Snapshot:
    """Parse every document listed in a snapshot manifest"""
    path = Path(manifest_path)
    manifest = load_manifest(path)
    files = [path.parent / name for name in manifest.files]
    logger.info("Parsing %d document(s) of %s %s", len(files), manifest.collection_id, manifest.date)

    documents = Parallel(n_jobs=n_jobs)(delayed(_parse_file)(f) for f in files)
    return build_snapshot(manifest.collection_id, manifest.date, documents)


def check_series(snapshots: Sequence[Snapshot]) -> None:
    """Snapshot dates of one series must be strictly increasing"""
    for before, after in zip(snapshots, snapshots[1:]):
        if after.date <= before.date:
            raise IntegrityError(f"Snapshot dates not increasing: {before.date} then {after.date}")


def load_series(manifests: Sequence[str | Path], n_jobs: int = 1) -> List[Snapshot]:
    snapshots = [load_snapshot(m, n_jobs=n_jobs) for m in manifests]
    check_series(snapshots)
    return snapshots


def iter_text_elements(snapshot: Snapshot) -> Iterator[StructuralElement]:
    for doc in snapshot.documents:
        for element in doc.iter_nodes():
            if element.text:
                yield element
