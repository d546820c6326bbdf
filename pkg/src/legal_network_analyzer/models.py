"""
Data models for legislative corpora, extraction results, clusterings and dynamics
"""
import datetime as dt
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class ElementKind(str, Enum):
    """Structural element types of the document model"""
    DOCUMENT = "document"
    ITEM = "item"
    SEQITEM = "seqitem"
    SUBSEQITEM = "subseqitem"


class StructuralElement(BaseModel):
    """One node of a legal document tree"""
    model_config = ConfigDict(frozen=True)

    id: str
    kind: ElementKind
    level: int = Field(ge=0)
    heading: Optional[str] = None
    cite_key: Optional[str] = None  # snapshot-unique, seqitems only
    local_key: Optional[str] = None  # citekey attribute as written in the file
    abbreviation: Optional[str] = None
    text: str = ""
    appendix: bool = False
    children: Tuple["StructuralElement", ...] = ()

    def iter_subtree(self) -> Iterator["StructuralElement"]:
        """Yield this element and its descendants in document order"""
        stack = [self]
        while stack:
            element = stack.pop()
            yield element
            stack.extend(reversed(element.children))

    @property
    def subtree_text(self) -> str:
        return " ".join(e.text for e in self.iter_subtree() if e.text)


class DocumentTree(BaseModel):
    """A single statute (US Title, German law) as a rooted tree"""
    model_config = ConfigDict(frozen=True)

    key: str  # abbreviation or file stem; prefix of all cite keys
    root: StructuralElement
    date: Optional[dt.date] = None

    def iter_nodes(self) -> Iterator[StructuralElement]:
        return self.root.iter_subtree()

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    def seqitems(self) -> List[StructuralElement]:
        return [e for e in self.iter_nodes() if e.kind == ElementKind.SEQITEM]


class ReferenceSpan(BaseModel):
    """Part of an element's text that contains a potential reference"""
    element_id: str
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    raw: str


class CiteKey(BaseModel):
    """Normalized reference target: (Title, Section) or (law, § / Article)"""
    model_config = ConfigDict(frozen=True)

    context: str
    number: str

    @property
    def canonical(self) -> str:
        return f"{self.context}:{self.number}"


class CiteKeySet(BaseModel):
    """All cite keys parsed from one reference span"""
    span: ReferenceSpan
    keys: List[CiteKey] = Field(default_factory=list)


class ResolvedReference(BaseModel):
    """One key occurrence aligned to a seqitem of the same snapshot"""
    model_config = ConfigDict(frozen=True)

    source_id: str
    target_id: str
    key: str


class ExtractionReport(BaseModel):
    """Counters of the Find/Parse/Align steps"""
    elements: int = 0
    spans: int = 0
    keys: int = 0
    resolved: int = 0
    unresolved: Dict[str, int] = Field(default_factory=dict)  # reason: count

    @property
    def unresolved_total(self) -> int:
        return sum(self.unresolved.values())

    def count(self, reason: str, amount: int = 1) -> None:
        self.unresolved[reason] = self.unresolved.get(reason, 0) + amount

    def merge(self, other: "ExtractionReport") -> "ExtractionReport":
        merged = ExtractionReport(
            elements=self.elements + other.elements,
            spans=self.spans + other.spans,
            keys=self.keys + other.keys,
            resolved=self.resolved + other.resolved,
            unresolved=dict(self.unresolved),
        )
        for reason, amount in other.unresolved.items():
            merged.count(reason, amount)
        merged.unresolved = dict(sorted(merged.unresolved.items()))
        return merged


class Snapshot(BaseModel):
    """One country-year document collection plus derived indexes"""
    model_config = ConfigDict(frozen=True)

    collection_id: str
    date: dt.date
    documents: Tuple[DocumentTree, ...] = ()
    citekey_index: Dict[str, str] = Field(default_factory=dict)  # cite_key: element id
    references: Optional[Tuple[ResolvedReference, ...]] = None

    @property
    def year(self) -> int:
        return self.date.year

    @property
    def label(self) -> str:
        return f"{self.collection_id}-{self.date.isoformat()}"

    @cached_property
    def elements(self) -> Dict[str, StructuralElement]:
        return {e.id: e for doc in self.documents for e in doc.iter_nodes()}

    @cached_property
    def parents(self) -> Dict[str, Optional[str]]:
        """Element id to parent id; document roots map to None"""
        parents: Dict[str, Optional[str]] = {}
        for doc in self.documents:
            parents[doc.root.id] = None
            for element in doc.iter_nodes():
                for child in element.children:
                    parents[child.id] = element.id
        return parents

    @cached_property
    def document_of(self) -> Dict[str, str]:
        """Element id to document key"""
        return {e.id: doc.key for doc in self.documents for e in doc.iter_nodes()}

    def with_references(self, references: List[ResolvedReference]) -> "Snapshot":
        return self.model_copy(update={"references": tuple(references)})


class SnapshotStats(BaseModel):
    """Table-1 style statistics of one snapshot"""
    tokens: int
    structures: int
    references: Optional[int] = None


class Clustering(BaseModel):
    """Partition of clustered nodes of one snapshot"""
    snapshot_id: str = ""
    assignment: Dict[str, int] = Field(default_factory=dict)  # node: cluster id
    seed: Optional[int] = None
    codelength: Optional[float] = None

    @property
    def module_count(self) -> int:
        return len(set(self.assignment.values()))

    def modules(self) -> List[List[str]]:
        """Member lists indexed by cluster id"""
        members: List[List[str]] = [[] for _ in range(self.module_count)]
        for node, cluster in self.assignment.items():
            members[cluster].append(node)
        return members


class ConsensusResult(BaseModel):
    """Final clustering formed from a thresholded co-occurrence graph"""
    clustering: Clustering
    cooccurrence: List[Tuple[str, str, int]] = Field(default_factory=list)
    runs: int
    threshold: float
    preferred_n: Optional[int] = None
    seed_base: int = 0
    module_count_histogram: Dict[int, int] = Field(default_factory=dict)


class ConsensusReport(BaseModel):
    """Parameters and summary of a consensus clustering"""
    snapshot_id: str = ""
    runs: int
    threshold: float
    preferred_n: Optional[int] = None
    seed_base: int = 0
    module_count: int
    codelength: Optional[float] = None
    module_count_histogram: Dict[int, int] = Field(default_factory=dict)


PASS_NAMES = {
    1: "exact-text",
    2: "key+text",
    3: "containment",
    4: "neighborhood-similarity",
}


class NodeAlignment(BaseModel):
    """Partial injective map between subsequence nodes of adjacent snapshots"""
    source_label: str = ""
    target_label: str = ""
    mapping: Dict[str, str] = Field(default_factory=dict)
    provenance: Dict[str, int] = Field(default_factory=dict)  # source node: pass
    unmatched_source: List[str] = Field(default_factory=list)
    unmatched_target: List[str] = Field(default_factory=list)

    @property
    def match_rate(self) -> float:
        total = len(self.mapping) + len(self.unmatched_source)
        return len(self.mapping) / total if total else 1.0

    def pass_counts(self) -> Dict[str, int]:
        counts = {name: 0 for name in PASS_NAMES.values()}
        for pass_no in self.provenance.values():
            counts[PASS_NAMES[pass_no]] += 1
        return counts


class ClusterFamily(BaseModel):
    """Connected component of the family graph"""
    index: int
    members: List[str] = Field(default_factory=list)  # cluster labels "YEAR-ID"
    leading: str
    leading_tokens: int
    sizes: Dict[int, int] = Field(default_factory=dict)  # year: tokens


class FamilyReport(BaseModel):
    """Cluster families of one collection, largest first"""
    gamma: float
    years: List[int] = Field(default_factory=list)
    families: List[ClusterFamily] = Field(default_factory=list)


class GrowthPoint(BaseModel):
    year: int
    tokens: int
    structures: int
    references: int
    relative_tokens: Optional[float] = 1.0  # None when the first year is zero
    relative_structures: Optional[float] = 1.0
    relative_references: Optional[float] = 1.0


class GrowthSeries(BaseModel):
    """Per-year growth statistics, absolute and relative to the first year"""
    points: List[GrowthPoint] = Field(default_factory=list)


class UnitBreakdown(BaseModel):
    """Statistics of one structural unit (e.g. a Title) in one snapshot"""
    unit: str
    tokens: int = 0
    structures: int = 0
    out_refs: int = 0
    in_refs: int = 0
    internal_refs: int = 0


class RegressionResult(BaseModel):
    """Simple OLS of value on year with a Wald t-test on the slope"""
    slope: float
    intercept: float
    stderr: Optional[float] = None
    t_statistic: Optional[float] = None
    p_value: Optional[float] = None
    n: int
    degenerate: bool = False

    def predict(self, x: float) -> float:
        return self.intercept + self.slope * x


class FamilyGrowth(BaseModel):
    """Regression row of one cluster family"""
    family: int
    label: str
    mean_size: float
    expected_last: float
    regression: RegressionResult


class SimilarityDistribution(BaseModel):
    """NMI / ARI samples of one sweep setting"""
    setting: str
    nmi: List[float] = Field(default_factory=list)
    ari: List[float] = Field(default_factory=list)
    per_year_nmi: Dict[int, float] = Field(default_factory=dict)
    per_year_ari: Dict[int, float] = Field(default_factory=dict)

    def median(self, metric: str = "nmi") -> float:
        values = sorted(getattr(self, metric))
        if not values:
            return float("nan")
        middle = len(values) // 2
        if len(values) % 2:
            return values[middle]
        return (values[middle - 1] + values[middle]) / 2


class SweepResult(BaseModel):
    """Collection of similarity distributions keyed by setting"""
    kind: str
    baseline: Optional[str] = None
    distributions: List[SimilarityDistribution] = Field(default_factory=list)


class AlluvialBlock(BaseModel):
    cluster: str  # cluster label, or "YEAR-misc"
    tokens: int
    family: Optional[int] = None
    color: str
    x: float = 0.0
    width: float = 0.0
    misc: bool = False
    condensed: List[str] = Field(default_factory=list)


class AlluvialYear(BaseModel):
    year: int
    blocks: List[AlluvialBlock] = Field(default_factory=list)

    @property
    def tokens(self) -> int:
        return sum(b.tokens for b in self.blocks)


class AlluvialSpline(BaseModel):
    source: str
    target: str
    source_year: int
    tokens: int
    color: str


class AlluvialData(BaseModel):
    """Figure data of the alluvial plot"""
    top_n: int
    top_families: int
    flow_threshold: float
    scale: float  # width units per token
    years: List[AlluvialYear] = Field(default_factory=list)
    splines: List[AlluvialSpline] = Field(default_factory=list)


class QuotientVizNode(BaseModel):
    id: str
    tokens: int
    x: float
    y: float
    radius: float
    family: Optional[int] = None
    color: str
    label: Optional[str] = None


class QuotientVizEdge(BaseModel):
    source: str
    target: str
    multiplicity: int
    opacity: float


class QuotientVizData(BaseModel):
    """Figure data of a quotient graph drawing"""
    min_tokens: int
    min_multiplicity: Optional[int] = None
    max_multiplicity: Optional[int] = None
    nodes: List[QuotientVizNode] = Field(default_factory=list)
    edges: List[QuotientVizEdge] = Field(default_factory=list)


class CompositionRow(BaseModel):
    """Share of one summarised element (Chapter, law, Book) in a cluster"""
    cluster: str
    path: str
    tokens: int
    share: float  # percent of the cluster's tokens


class FamilySummary(BaseModel):
    """Report section of one cluster family"""
    family: ClusterFamily
    terms: List[Tuple[str, float]] = Field(default_factory=list)
    composition: Dict[str, List[CompositionRow]] = Field(default_factory=dict)  # cluster label: rows


class SnapshotSummary(BaseModel):
    """Ingest summary row of one snapshot"""
    year: int
    label: str
    documents: int
    tokens: int
    structures: int


class FetchEntry(BaseModel):
    year: int
    url: str
    file: str
    sha256: str
    size: int


class FetchManifest(BaseModel):
    """Checksums of downloaded archives, keyed by year"""
    entries: Dict[int, FetchEntry] = Field(default_factory=dict)


class BundleFile(BaseModel):
    path: str
    sha256: str


class BundleManifest(BaseModel):
    """Index of every artifact written by one pipeline run"""
    stage: str
    files: List[BundleFile] = Field(default_factory=list)
    extraction: Dict[int, ExtractionReport] = Field(default_factory=dict)
    stages: Dict[str, List[str]] = Field(default_factory=dict)  # artifacts reported by each stage
    extra: Dict[str, Any] = Field(default_factory=dict)
