"""
Synthetic legislative corpora with controlled year-over-year evolution
"""
import datetime as dt
from itertools import count
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ...models import DocumentTree, ElementKind, Snapshot, StructuralElement
from ..parser import build_snapshot
from ..tokens import make_cite_key
from .base import CorpusImporter

_ONSETS = ["b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "pr", "st", "tr"]
_VOWELS = ["a", "e", "i", "o", "u", "ei", "au"]
_CODAS = ["", "", "n", "r", "s", "t", "nd", "ng"]


class SyntheticShape(BaseModel):
    """Size parameters of a generated snapshot"""
    documents: int = Field(default=2, ge=1)
    chapters: int = Field(default=3, ge=1)
    sections: int = Field(default=5, ge=1)
    min_subsections: int = Field(default=2, ge=0)
    max_subsections: int = Field(default=4, ge=0)
    min_words: int = Field(default=14, ge=1)
    max_words: int = Field(default=30, ge=1)
    citation_rate: float = Field(default=0.3, ge=0.0, le=1.0)
    vocabulary: int = Field(default=3000, ge=10)


class EvolutionRates(BaseModel):
    """Per-node probabilities applied when deriving the next snapshot"""
    edit: float = Field(default=0.05, ge=0.0, le=1.0)
    insert: float = Field(default=0.03, ge=0.0, le=1.0)
    delete: float = Field(default=0.02, ge=0.0, le=1.0)
    rekey: float = Field(default=0.10, ge=0.0, le=1.0)
    char_edit_share: float = Field(default=0.04, ge=0.0, le=0.1)


def _vocabulary(rng: np.random.Generator, size: int) -> List[str]:
    words = set()
    while len(words) < size:
        syllables = rng.integers(1, 4)
        word = "".join(
            _ONSETS[rng.integers(len(_ONSETS))] + _VOWELS[rng.integers(len(_VOWELS))] + _CODAS[rng.integers(len(_CODAS))]
            for _ in range(syllables)
        )
        words.add(word)
    return sorted(words)


def _sentence(rng: np.random.Generator, vocabulary: List[str], shape: SyntheticShape) -> str:
    length = int(rng.integers(shape.min_words, shape.max_words + 1))
    words = [vocabulary[i] for i in rng.integers(len(vocabulary), size=length)]
    return " ".join(words).capitalize() + "."


def generate_synthetic_snapshot(
    seed: int = 0,
    shape: Optional[SyntheticShape] = None,
    collection_id: str = "synthetic",
    date: dt.date = dt.date(1994, 1, 1),
) -> Snapshot:
    """Generate a US-style snapshot: numeric Titles, Chapters, Sections and subsections"""
    shape = shape or SyntheticShape()
    rng = np.random.default_rng(seed)
    vocabulary = _vocabulary(rng, shape.vocabulary)

    layout = []  # (title, chapter, [section numbers])
    for title in range(1, shape.documents + 1):
        for chapter in range(1, shape.chapters + 1):
            layout.append((title, chapter, [chapter * 100 + s for s in range(1, shape.sections + 1)]))
    all_sections = [(title, number) for title, _, numbers in layout for number in numbers]

    def citation(title: int) -> str:
        target_title, number = all_sections[rng.integers(len(all_sections))]
        where = "this title" if target_title == title else f"title {target_title}"
        return f" This applies as provided in section {number} of {where}."

    documents = []
    for title in range(1, shape.documents + 1):
        key = str(title)
        ordinal = count()
        root_id = f"{key}:{next(ordinal)}"
        chapters = []
        for _, chapter, numbers in (entry for entry in layout if entry[0] == title):
            chapter_id = f"{key}:{next(ordinal)}"
            sections = []
            for number in numbers:
                section_id = f"{key}:{next(ordinal)}"
                subsections = []
                for _ in range(int(rng.integers(shape.min_subsections, shape.max_subsections + 1))):
                    text = _sentence(rng, vocabulary, shape)
                    if rng.random() < shape.citation_rate:
                        text += citation(title)
                    subsections.append(StructuralElement(
                        id=f"{key}:{next(ordinal)}", kind=ElementKind.SUBSEQITEM, level=3, text=text,
                    ))
                sections.append(StructuralElement(
                    id=section_id,
                    kind=ElementKind.SEQITEM,
                    level=2,
                    heading=f"Section {number}",
                    local_key=str(number),
                    cite_key=make_cite_key(key, str(number)),
                    text="" if subsections else _sentence(rng, vocabulary, shape),
                    children=tuple(subsections),
                ))
            chapters.append(StructuralElement(
                id=chapter_id, kind=ElementKind.ITEM, level=1, heading=f"CHAPTER {chapter}",
                children=tuple(sections),
            ))
        root = StructuralElement(
            id=root_id, kind=ElementKind.DOCUMENT, level=0, heading=f"TITLE {title}",
            abbreviation=key, children=tuple(chapters),
        )
        documents.append(DocumentTree(key=key, root=root, date=date))

    return build_snapshot(collection_id, date, documents)


def _edit_text(rng: np.random.Generator, text: str, share: float) -> str:
    """Substitute a small share of characters, keeping the first four intact"""
    chars = list(text)
    editable = list(range(4, len(chars)))
    if not editable:
        return text
    n_edits = min(max(1, int(len(chars) * share)), len(editable))
    for position in rng.choice(editable, size=n_edits, replace=False):
        chars[position] = "x" if chars[position] != "x" else "y"
    return "".join(chars)


def evolve_snapshot(
    snapshot: Snapshot,
    rates: Optional[EvolutionRates] = None,
    seed: int = 0,
    date: Optional[dt.date] = None,
) -> Tuple[Snapshot, Dict[str, Optional[str]]]:
    """Derive the next snapshot; returns it with the planted ground truth

    The ground truth maps every subsequence-level node (subseqitems, or seqitems
    without subseqitems) of the input to its counterpart, or None if deleted.
    """
    rates = rates or EvolutionRates()
    rng = np.random.default_rng(seed)
    date = date or snapshot.date.replace(year=snapshot.date.year + 1)
    truth: Dict[str, Optional[str]] = {}
    fresh = count()
    pool = [e.text for e in snapshot.elements.values() if e.kind == ElementKind.SUBSEQITEM and e.text]

    def new_text() -> str:
        if not pool:
            return "Inserted provision without counterpart in the previous edition."
        words = " ".join(pool[rng.integers(len(pool))] for _ in range(2)).split()
        rng.shuffle(words)
        return " ".join(words)

    def evolve(element: StructuralElement, document_key: str) -> StructuralElement:
        if element.kind == ElementKind.SEQITEM:
            update = {}
            if rng.random() < rates.rekey:
                local_key = f"{element.local_key}a"
                update = {"local_key": local_key, "cite_key": make_cite_key(document_key, local_key)}
            children = []
            for child in element.children:
                if rng.random() < rates.delete:
                    truth[child.id] = None
                else:
                    text = child.text
                    if rng.random() < rates.edit:
                        text = _edit_text(rng, text, rates.char_edit_share)
                    children.append(child.model_copy(update={"text": text}))
                    truth[child.id] = child.id
                if rng.random() < rates.insert:
                    children.append(StructuralElement(
                        id=f"{document_key}:new{next(fresh)}",
                        kind=ElementKind.SUBSEQITEM,
                        level=child.level,
                        text=new_text(),
                    ))
            if not element.children:
                truth[element.id] = element.id
            update["children"] = tuple(children)
            return element.model_copy(update=update)
        return element.model_copy(update={"children": tuple(evolve(c, document_key) for c in element.children)})

    documents = [
        DocumentTree(key=doc.key, root=evolve(doc.root, doc.key), date=date)
        for doc in snapshot.documents
    ]
    return build_snapshot(snapshot.collection_id, date, documents), truth


class SyntheticImporter(CorpusImporter):
    """Generates an evolving series instead of reading a raw source"""

    name = "synthetic"

    def __init__(
        self,
        years: int = 3,
        seed: int = 0,
        shape: Optional[SyntheticShape | dict] = None,
        rates: Optional[EvolutionRates | dict] = None,
        start: dt.date | str = dt.date(1994, 1, 1),
    ):
        super().__init__(None)
        self.years = years
        self.seed = seed
        # options may arrive as plain config tables
        self.shape = SyntheticShape.model_validate(shape or {})
        self.rates = EvolutionRates.model_validate(rates or {})
        self.start = dt.date.fromisoformat(start) if isinstance(start, str) else start
        self.truths: List[Dict[str, Optional[str]]] = []

    def import_series(self) -> List[Snapshot]:
        series = [generate_synthetic_snapshot(self.seed, self.shape, date=self.start)]
        self.truths = []
        for offset in range(1, self.years):
            snapshot, truth = evolve_snapshot(series[-1], self.rates, seed=self.seed + offset)
            series.append(snapshot)
            self.truths.append(truth)
        return series
