"""
The pipeline stages: ingest, extract, graph, cluster, align, dynamics, stats, export
"""
import logging
from pathlib import Path
from typing import Dict, List, Type

from ..cluster import consensus, visit_rates, write_clustering_csv, write_consensus_json
from ..corpus import load_series, snapshot_stats
from ..corpus.importers import IMPORTERS
from ..dynamics import (
    align_nodes,
    build_cluster_graph,
    build_family_graph,
    cluster_families,
    family_of,
    unit_index,
    write_alignment_csv,
    write_cluster_graph_csv,
    write_family_report_json,
)
from ..errors import ConfigError, IntegrityError, ParameterError
from ..exporters import (
    alluvial_export,
    dominant_families,
    family_report_export,
    family_summaries,
    quotient_viz_export,
    write_alluvial,
    write_multiplicity_csv,
    write_quotient_viz,
    write_snapshot_table,
    write_unit_stacks_csv,
)
from ..graphs import (
    build_hierarchy,
    build_reference,
    build_sequence,
    build_subsequence,
    export_graphml,
    multiplicity_table,
    quotient,
)
from ..models import SnapshotSummary
from ..refextract import extract_all, load_profile, write_references_csv
from ..stats import family_growth_table, growth_series, per_unit_breakdown, slope_size_regression, write_regression_csv
from ..stats.sweeps import robustness_sweep, sensitivity_sweep
from .base import PipelineState, Stage

logger = logging.getLogger(__name__)


class IngestStage(Stage):
    """Load or import the snapshot series"""

    name = "ingest"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        config = self.config
        if config.manifests:
            snapshots = load_series(config.manifests, n_jobs=config.n_jobs)
        else:
            if config.importer not in IMPORTERS:
                raise ConfigError(f"Unknown importer: {config.importer!r}")
            try:
                importer = IMPORTERS[config.importer](**config.importer_options)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid options for importer {config.importer!r}: {e}") from e
            snapshots = importer.import_series()

        summaries = []
        for snapshot in snapshots:
            if snapshot.year in state.snapshots:
                raise IntegrityError(f"Two snapshots dated {snapshot.year}")
            state.snapshots[snapshot.year] = snapshot
            stats = snapshot_stats(snapshot, include_references=False)
            summaries.append(SnapshotSummary(
                year=snapshot.year, label=snapshot.label, documents=len(snapshot.documents),
                tokens=stats.tokens, structures=stats.structures,
            ))
        state.summary["snapshots"] = summaries
        path = self.directory(out, "corpus") / "snapshots.csv"
        write_snapshot_table(summaries, path)
        return [path]


class ExtractStage(Stage):
    """Find, parse and align cross-references per snapshot"""

    name = "extract"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        profile = load_profile(self.config.profile)
        target = self.directory(out, "references")
        written = []
        for year in state.years:
            references, report = extract_all(state.snapshots[year], profile, n_jobs=self.config.n_jobs)
            state.snapshots[year] = state.snapshots[year].with_references(references)
            state.reports[year] = report
            write_references_csv(references, target / f"{year}.csv")
            (target / f"{year}-report.json").write_text(report.model_dump_json(indent=2), encoding="utf-8")
            written += [target / f"{year}.csv", target / f"{year}-report.json"]
        return written


class GraphStage(Stage):
    """Reference, clustered (sequence), subsequence and quotient graphs"""

    name = "graph"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        settings = self.config.graph
        target = self.directory(out, "graphs")
        written = []
        for year in state.years:
            snapshot = state.snapshots[year]
            refgraph = build_reference(build_hierarchy(snapshot), snapshot.references or ())
            weight = settings.weight_function()
            clustered = build_sequence(
                refgraph, settings.rho, w=weight, alpha=settings.alpha, sequence_arcs=settings.sequence_arcs,
            )
            state.refgraphs[year] = refgraph
            state.clustered[year] = clustered
            # alignment neighbourhoods always walk sequence arcs
            state.subsequence[year] = build_subsequence(refgraph, "none", w=weight, alpha=settings.alpha)
            state.quotients[year] = quotient(clustered, settings.quotient)
            for name, graph in (("reference", refgraph), ("sequence", clustered), ("quotient", state.quotients[year])):
                written.append(export_graphml(graph, target / f"{year}-{name}.graphml"))
        write_multiplicity_csv(multiplicity_table(state.quotients), target / "multiplicity.csv")
        written.append(target / "multiplicity.csv")
        return written


class ClusterStage(Stage):
    """Consensus clustering of every clustered graph"""

    name = "cluster"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        settings = self.config.clustering
        target = self.directory(out, "clusterings")
        written = []
        for year in state.years:
            result = consensus(
                state.require("clustered")[year],
                runs=settings.runs,
                threshold=settings.threshold,
                preferred_n=settings.preferred_n,
                seed_base=settings.seed_base,
                tau=settings.tau,
                strength=settings.strength,
                n_jobs=self.config.n_jobs,
            )
            state.consensus[year] = result
            write_clustering_csv(result.clustering, target / f"{year}.csv")
            write_consensus_json(result, target / f"{year}-consensus.json")
            written += [target / f"{year}.csv", target / f"{year}-consensus.json"]
        return written


class AlignStage(Stage):
    """Node alignment between the subsequence graphs of adjacent years"""

    name = "align"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        subsequence = state.require("subsequence")
        target = self.directory(out, "alignments")
        written = []
        for year, following in zip(state.years, state.years[1:]):
            alignment = align_nodes(subsequence[year], subsequence[following])
            state.alignments[year] = alignment
            path = target / f"{year}-{following}.csv"
            write_alignment_csv(alignment, path)
            written.append(path)
        return written


class DynamicsStage(Stage):
    """Cluster graph, family graph and cluster families"""

    name = "dynamics"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        clusterings = {year: result.clustering for year, result in state.require("consensus").items()}
        units = {year: unit_index(state.subsequence[year], state.clustered[year]) for year in state.years}
        state.cluster_graph = build_cluster_graph(clusterings, state.alignments, units)
        state.family_graph = build_family_graph(state.cluster_graph, gamma=self.config.gamma)
        state.families = cluster_families(state.family_graph)

        target = self.directory(out, "dynamics")
        write_cluster_graph_csv(state.cluster_graph, target / "cluster-graph.csv")
        export_graphml(state.cluster_graph, target / "cluster-graph.graphml")
        export_graphml(state.family_graph, target / "family-graph.graphml")
        write_family_report_json(state.families, self.config.gamma, state.years, target / "families.json")
        return [target / name for name in ("cluster-graph.csv", "cluster-graph.graphml", "family-graph.graphml", "families.json")]


class StatsStage(Stage):
    """Growth series, per-unit breakdowns, family regressions and optional sweeps"""

    name = "stats"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        target = self.directory(out, "stats")
        written = []

        (target / "growth.json").write_text(
            growth_series(list(state.snapshots.values())).model_dump_json(indent=2), encoding="utf-8"
        )
        breakdowns = {year: per_unit_breakdown(state.refgraphs[year]) for year in state.years}
        write_unit_stacks_csv(breakdowns, target / "units.csv")
        written += [target / "growth.json", target / "units.csv"]

        table = family_growth_table(state.families)
        write_regression_csv(table, target / "family-growth.csv")
        written.append(target / "family-growth.csv")
        try:
            scatter = slope_size_regression(table)
        except ParameterError as e:
            logger.info("No slope-size regression: %s", e)
        else:
            (target / "slope-size.json").write_text(scatter.model_dump_json(indent=2), encoding="utf-8")
            written.append(target / "slope-size.json")

        written += self._sweeps(state, target)
        return written

    def _sweeps(self, state: PipelineState, target: Path) -> List[Path]:
        sweeps, settings = self.config.sweeps, self.config.clustering
        if not (sweeps.sensitivity or sweeps.robustness):
            return []
        flows = {year: visit_rates(state.clustered[year], tau=settings.tau) for year in state.years}
        common = dict(threshold=settings.threshold, seed_base=settings.seed_base,
                      strength=settings.strength, n_jobs=self.config.n_jobs)
        results = {}
        if sweeps.sensitivity:
            baseline = settings.preferred_n if settings.preferred_n is not None else "auto"
            results["sensitivity"] = sensitivity_sweep(flows, baseline=baseline, runs=settings.runs, **common)
        if sweeps.robustness:
            results["robustness"] = robustness_sweep(
                flows, consensus_sizes=sweeps.consensus_sizes, repeats=sweeps.repeats,
                preferred_n=settings.preferred_n, **common,
            )
        written = []
        for kind, result in results.items():
            path = target / f"{kind}-sweep.json"
            path.write_text(result.model_dump_json(indent=2), encoding="utf-8")
            written.append(path)
        return written


class ExportStage(Stage):
    """Alluvial data, quotient drawings and family reports"""

    name = "export"

    def run(self, state: PipelineState, out: Path) -> List[Path]:
        settings = self.config.export
        figures = self.directory(out, "figures")
        reports = self.directory(out, "reports")
        written = []

        alluvial = alluvial_export(
            state.require("cluster_graph"), state.families,
            top_n=settings.top_n, top_families=settings.top_families, flow_threshold=settings.flow_threshold,
        )
        write_alluvial(alluvial, figures / "alluvial.json", figures / "alluvial.svg")
        written += [figures / "alluvial.json", figures / "alluvial.svg"]

        index = family_of(state.families)
        for year in state.years:
            drawing = quotient_viz_export(
                state.quotients[year],
                dominant_families(state.quotients[year], state.consensus[year].clustering, index),
                min_tokens=settings.min_tokens,
                degree_label_threshold=settings.degree_label_threshold,
                top_families=settings.top_families,
                k=settings.layout_k,
                seed=settings.layout_seed,
            )
            write_quotient_viz(drawing, figures / f"quotient-{year}.json", figures / f"quotient-{year}.svg")
            written += [figures / f"quotient-{year}.json", figures / f"quotient-{year}.svg"]

        summaries = family_summaries(
            state.families,
            {year: result.clustering for year, result in state.consensus.items()},
            state.clustered,
            k=settings.tfidf_k,
        )
        family_report_export(
            summaries, reports / "families.html", reports / "composition.csv",
            collection=self.config.collection, top=settings.top_families,
        )
        written += [reports / "families.html", reports / "composition.csv"]
        return written


STAGES: List[Type[Stage]] = [
    IngestStage,
    ExtractStage,
    GraphStage,
    ClusterStage,
    AlignStage,
    DynamicsStage,
    StatsStage,
    ExportStage,
]
STAGE_NAMES: List[str] = [stage.name for stage in STAGES]
STAGE_BY_NAME: Dict[str, Type[Stage]] = {stage.name: stage for stage in STAGES}
