"""
Four-pass node alignment between subsequence graphs of adjacent snapshots
"""
import csv
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, List, Set

import networkx as nx
from rapidfuzz.distance import JaroWinkler

from ..models import NodeAlignment

logger = logging.getLogger(__name__)

MIN_UNIQUE_TEXT = 50
NEIGHBOURHOOD_HOPS = 5
MIN_SIMILARITY = 0.9


def jaro_winkler(a: str, b: str) -> float:
    """Jaro similarity with Winkler's prefix boost (prefix <= 4, scaling 0.1)"""
    return JaroWinkler.similarity(a, b, prefix_weight=0.1)


class _Aligner:
    def __init__(self, source: nx.Graph, target: nx.Graph):
        self.source = source
        self.target = target
        self.text = {n: d.get("text", "") for n, d in source.nodes(data=True)}
        self.target_text = {n: d.get("text", "") for n, d in target.nodes(data=True)}
        self.mapping: Dict[str, str] = {}
        self.provenance: Dict[str, int] = {}
        self.claimed: Set[str] = set()

    def unmatched_source(self) -> List[str]:
        return [n for n in self.source if n not in self.mapping]

    def unmatched_target(self) -> List[str]:
        return [n for n in self.target if n not in self.claimed]

    def match(self, v: str, w: str, pass_no: int) -> None:
        self.mapping[v] = w
        self.provenance[v] = pass_no
        self.claimed.add(w)

    def unique_text(self) -> None:
        """Pass 1: identical long text occurring once on each side"""
        sources = self.unmatched_source()
        targets = self.unmatched_target()
        source_counts = Counter(self.text[v] for v in sources)
        target_counts = Counter(self.target_text[w] for w in targets)
        by_text = {self.target_text[w]: w for w in targets}
        for v in sources:
            text = self.text[v]
            if len(text) >= MIN_UNIQUE_TEXT and source_counts[text] == 1 and target_counts[text] == 1:
                self.match(v, by_text[text], 1)

    def key_and_text(self) -> None:
        """Pass 2: identical cite key and identical text"""
        by_key = {self.target.nodes[w].get("citekey"): w for w in self.unmatched_target()}
        for v in self.unmatched_source():
            w = by_key.get(self.source.nodes[v].get("citekey"))
            if w is not None and w not in self.claimed and self.target_text[w] == self.text[v]:
                self.match(v, w, 2)

    def containment(self) -> None:
        """Pass 3: exactly one text containing, or contained in, the source text by a majority"""
        for v in self.unmatched_source():
            text = self.text[v]
            if not text:
                continue
            candidates = []
            for w in self.unmatched_target():
                other = self.target_text[w]
                if not other:
                    continue
                shorter, longer = sorted((len(text), len(other)))
                inside = text in other if len(text) <= len(other) else other in text
                if inside and longer - shorter < shorter:
                    candidates.append(w)
                    if len(candidates) > 1:
                        break
            if len(candidates) == 1:
                self.match(v, candidates[0], 3)

    def neighbourhood(self) -> None:
        """Pass 4: most similar text near the images of matched neighbours, repeated to a fixpoint"""
        source_view = self.source.to_undirected(as_view=True)
        target_view = self.target.to_undirected(as_view=True)
        reach: Dict[str, List[str]] = {}

        def near_target(w: str) -> List[str]:
            if w not in reach:
                reach[w] = list(nx.single_source_shortest_path_length(target_view, w, cutoff=NEIGHBOURHOOD_HOPS))
            return reach[w]

        while True:
            added = 0
            for v in self.unmatched_source():
                text = self.text[v]
                if not text:
                    continue
                anchors = [
                    u for u in nx.single_source_shortest_path_length(source_view, v, cutoff=NEIGHBOURHOOD_HOPS)
                    if u in self.mapping
                ]
                candidates = sorted({
                    w for u in anchors for w in near_target(self.mapping[u]) if w not in self.claimed
                })
                best, best_similarity = None, MIN_SIMILARITY
                for w in candidates:
                    similarity = jaro_winkler(text, self.target_text[w])
                    if similarity > best_similarity:
                        best, best_similarity = w, similarity
                if best is not None:
                    self.match(v, best, 4)
                    added += 1
            if not added:
                break


def align_nodes(source: nx.Graph, target: nx.Graph) -> NodeAlignment:
    """Partial injective map from nodes of `source` to nodes of `target`"""
    aligner = _Aligner(source, target)
    aligner.unique_text()
    aligner.key_and_text()
    aligner.containment()
    aligner.neighbourhood()

    alignment = NodeAlignment(
        source_label=str(source.graph.get("snapshot", "")),
        target_label=str(target.graph.get("snapshot", "")),
        mapping=aligner.mapping,
        provenance=aligner.provenance,
        unmatched_source=aligner.unmatched_source(),
        unmatched_target=aligner.unmatched_target(),
    )
    logger.info(
        "Aligned %s -> %s: %.1f%% matched %s",
        alignment.source_label, alignment.target_label, 100 * alignment.match_rate, alignment.pass_counts(),
    )
    return alignment


def write_alignment_csv(alignment: NodeAlignment, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["source_id", "target_id", "pass"])
        for v, w in alignment.mapping.items():
            writer.writerow([v, w, alignment.provenance[v]])
