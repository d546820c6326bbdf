"""
Family reports: cluster composition by summarised element, TF-IDF terms, HTML and CSV output
"""
import csv
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Mapping

import networkx as nx
from markdown_it import MarkdownIt

from ..dynamics.families import cluster_label
from ..graphs.builders import META_ROOT, ancestors
from ..models import ClusterFamily, Clustering, CompositionRow, FamilySummary
from ..stats.tfidf import tfidf_top_terms
from .html_template import render_page


def element_path(hierarchy: nx.Graph, node: str) -> str:
    """Document key followed by the headings (or cite keys) down to the node"""
    if node not in hierarchy:
        return node
    parts = []
    for step in reversed(ancestors(hierarchy, node)):
        if step == META_ROOT:
            continue
        data = hierarchy.nodes[step]
        if data["kind"] == "document":
            parts.append(data["document"])
        else:
            parts.append(data.get("heading") or data.get("citekey") or step)
    return " / ".join(parts)


def cluster_composition(clustered: nx.Graph, clustering: Clustering, year: int) -> Dict[str, List[CompositionRow]]:
    """Rows per cluster label, largest element first; shares in percent of the cluster"""
    hierarchy = clustered.graph.get("hierarchy", clustered)
    tokens: Dict[str, Dict[str, int]] = defaultdict(lambda: defaultdict(int))
    for node, cluster in clustering.assignment.items():
        path = element_path(hierarchy, node)
        tokens[cluster_label(year, cluster)][path] += clustered.nodes[node].get("tokens", 0)

    result = {}
    for label, paths in tokens.items():
        total = sum(paths.values())
        rows = [
            CompositionRow(
                cluster=label,
                path=path,
                tokens=count,
                share=100.0 * count / total if total else 100.0 / len(paths),
            )
            for path, count in paths.items()
        ]
        result[label] = sorted(rows, key=lambda r: (-r.tokens, r.path))
    return result


def family_summaries(
    families: List[ClusterFamily],
    clusterings: Mapping[int, Clustering],
    clustered: Mapping[int, nx.Graph],
    k: int = 10,
) -> List[FamilySummary]:
    composition: Dict[str, List[CompositionRow]] = {}
    members: Dict[str, List[str]] = defaultdict(list)
    for year, clustering in clusterings.items():
        composition.update(cluster_composition(clustered[year], clustering, year))
        for node, cluster in clustering.assignment.items():
            members[cluster_label(year, cluster)].append(clustered[year].nodes[node].get("text", ""))

    texts = {
        family.index: " ".join(text for label in family.members for text in members[label])
        for family in families
    }
    terms = tfidf_top_terms(texts, k=k)
    return [
        FamilySummary(
            family=family,
            terms=terms[family.index],
            composition={label: composition.get(label, []) for label in family.members},
        )
        for family in families
    ]


class ReportGenerator:
    """Markdown sections per family, rendered to one HTML page"""

    @staticmethod
    def overview(summaries: List[FamilySummary]) -> str:
        lines = [
            "## Cluster families",
            "",
            "| Family | Leading cluster | Leading tokens | Years | Top terms |",
            "|---|---|---|---|---|",
        ]
        for summary in summaries:
            family = summary.family
            present = [str(year) for year, size in family.sizes.items() if size > 0]
            terms = ", ".join(term for term, _ in summary.terms[:5]) or "-"
            years = f"{present[0]}-{present[-1]}" if present else "-"
            lines.append(f"| {family.index} | `{family.leading}` | {family.leading_tokens} | {years} | {terms} |")
        return "\n".join(lines) + "\n"

    @staticmethod
    def family_section(summary: FamilySummary) -> str:
        family = summary.family
        lines = [f"## Family {family.index} (leading cluster `{family.leading}`)", ""]
        lines += ["| Year | Tokens |", "|---|---|"]
        lines += [f"| {year} | {size} |" for year, size in family.sizes.items()]
        lines.append("")
        if summary.terms:
            lines.append("**Top terms:** " + ", ".join(f"{term} ({score:.2f})" for term, score in summary.terms))
            lines.append("")
        for label, rows in summary.composition.items():
            lines += [f"### Cluster `{label}`", "", "| Element | Tokens | Share |", "|---|---|---|"]
            lines += [f"| {row.path} | {row.tokens} | {row.share:.1f}% |" for row in rows]
            lines.append("")
        return "\n".join(lines)

    @staticmethod
    def render_html(summaries: List[FamilySummary], collection: str, top: int = 20) -> str:
        md = MarkdownIt("commonmark", {"html": False}).enable("table")
        sections = {"Overview": md.render(ReportGenerator.overview(summaries))}
        for summary in summaries[:top]:
            sections[f"Family {summary.family.index}"] = md.render(ReportGenerator.family_section(summary))
        return render_page("Cluster family report", f"Collection: {collection}", sections)


def family_report_export(
    summaries: List[FamilySummary], html_path: str | Path, csv_path: str | Path, collection: str = "", top: int = 20
) -> None:
    Path(html_path).write_text(ReportGenerator.render_html(summaries, collection, top), encoding="utf-8")
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["family", "cluster", "path", "tokens", "share"])
        for summary in summaries:
            for label, rows in summary.composition.items():
                for row in rows:
                    writer.writerow([summary.family.index, label, row.path, row.tokens, f"{row.share:.4f}"])
