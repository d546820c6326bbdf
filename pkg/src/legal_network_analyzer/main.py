"""
Pipeline coordinator and command line interface
"""
import argparse
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .config import PipelineConfig, default_cache_dir, load_config
from .errors import ConfigError, exit_code_for
from .exporters.schemas import validate_bundle
from .fetch import fetch_uscode
from .models import BundleManifest
from .pipeline import STAGE_NAMES, PipelineState, execute

STAGE_TITLES = {
    "ingest": "📚 Loading snapshots...",
    "extract": "🔗 Extracting cross-references...",
    "graph": "🕸  Building graphs...",
    "cluster": "🧩 Clustering...",
    "align": "↔  Aligning adjacent snapshots...",
    "dynamics": "🌊 Assembling cluster families...",
    "stats": "📈 Computing statistics...",
    "export": "🖼  Writing figures and reports...",
}


def setup_logging(verbose: bool = False, console: Optional[Console] = None) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console or Console(stderr=True), show_path=verbose)],
        force=True,
    )


def demo_config_path() -> Path:
    return Path(str(resources.files("legal_network_analyzer") / "data" / "minicorpus" / "config.toml"))


class NetworkAnalyzer:
    """Runs the pipeline for one configuration and reports on the result"""

    def __init__(self, config: PipelineConfig, console: Optional[Console] = None):
        self.config = config
        self.console = console or Console()

    def run(self, until: str = "export") -> tuple[BundleManifest, PipelineState]:
        """Run all stages up to `until` and write the bundle"""
        return execute(
            self.config, until,
            on_stage=lambda name: self.console.print(Panel.fit(STAGE_TITLES[name], style="blue")),
        )

    def display_summary(self, manifest: BundleManifest, state: PipelineState) -> None:
        """Print snapshot, clustering and family tables"""
        self.console.print("\n")
        self.console.print(Panel.fit(
            f"[bold blue]Collection: {self.config.collection}[/bold blue]\n"
            f"📅 Snapshots: {', '.join(map(str, state.years)) or 'none'}\n"
            f"🏁 Last stage: {manifest.stage}\n"
            f"📦 Files: {len(manifest.files)} in {self.config.output}"
        ))

        snapshots = Table(show_header=True, header_style="bold", title="Snapshots")
        for column in ("Year", "Documents", "Tokens", "Structures", "References", "Unresolved", "Modules"):
            snapshots.add_column(column)
        for summary in state.summary.get("snapshots", []):
            report = state.reports.get(summary.year)
            result = state.consensus.get(summary.year)
            snapshots.add_row(
                str(summary.year),
                str(summary.documents),
                str(summary.tokens),
                str(summary.structures),
                str(report.resolved) if report else "-",
                str(report.unresolved_total) if report else "-",
                str(result.clustering.module_count) if result else "-",
            )
        self.console.print(snapshots)

        if state.alignments:
            alignments = Table(show_header=True, header_style="bold", title="Alignments")
            alignments.add_column("Years")
            alignments.add_column("Matched")
            for name in ("exact-text", "key+text", "containment", "neighborhood-similarity"):
                alignments.add_column(name)
            for year, alignment in sorted(state.alignments.items()):
                counts = alignment.pass_counts()
                alignments.add_row(
                    f"{year} → {state.years[state.years.index(year) + 1]}",
                    f"{100 * alignment.match_rate:.1f}%",
                    *(str(c) for c in counts.values()),
                )
            self.console.print(alignments)

        if state.families:
            families = Table(show_header=True, header_style="bold", title="Largest cluster families")
            families.add_column("Family")
            families.add_column("Leading cluster")
            families.add_column("Tokens")
            families.add_column("Clusters")
            for family in state.families[:10]:
                families.add_row(str(family.index), family.leading, str(family.leading_tokens), str(len(family.members)))
            self.console.print(families)

        self.console.print(f"\n💾 Bundle saved to: {self.config.output}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legal-network-analyzer",
        description="Network analysis of evolving legislative corpora",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    fetch = commands.add_parser("fetch", help="download US Code annual archives")
    fetch.add_argument("years", nargs="*", type=int, help="archive years (default: config years)")
    fetch.add_argument("--config", help="TOML or JSON configuration")
    fetch.add_argument("--cache-dir", help="archive cache (default: $LEGAL_NETWORK_CACHE)")

    for stage in [*STAGE_NAMES, "all"]:
        sub = commands.add_parser(stage, help=f"run the pipeline up to {stage}" if stage != "all" else "run every stage")
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--config", help="TOML or JSON configuration")
        source.add_argument("--demo", action="store_true", help="use the bundled mini-corpus")
        sub.add_argument("-o", "--output", help="bundle directory")
        sub.add_argument("--runs", type=int, help="clustering runs per consensus")
        sub.add_argument("--seed-base", type=int, help="seed of the first clustering run")
        sub.add_argument("--jobs", type=int, help="parallel workers")
        sub.add_argument("--profile", help="citation profile name or JSON path")

    check = commands.add_parser("validate", help="verify checksums and schemas of a bundle")
    check.add_argument("bundle", help="bundle directory")
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    """Configuration file overridden by command line flags"""
    config = load_config(demo_config_path() if args.demo else args.config)
    overrides = {}
    if args.output or args.demo:
        # the demo never writes into the installed package
        overrides["output"] = str(Path(args.output or "bundle").resolve())
    if args.jobs is not None:
        overrides["n_jobs"] = args.jobs
    if args.profile:
        overrides["profile"] = args.profile
    clustering = {}
    if args.runs is not None:
        clustering["runs"] = args.runs
    if args.seed_base is not None:
        clustering["seed_base"] = args.seed_base
    if clustering:
        overrides["clustering"] = config.clustering.model_copy(update=clustering)
    # re-validate so overrides obey the same ranges as the file
    try:
        return PipelineConfig.model_validate({**config.model_dump(), **{
            k: v.model_dump() if hasattr(v, "model_dump") else v for k, v in overrides.items()
        }})
    except ValueError as e:
        raise ConfigError(f"Invalid command line override: {e}") from e


def run_fetch(args: argparse.Namespace, console: Console) -> None:
    years: List[int] = list(args.years)
    cache_dir = args.cache_dir
    if args.config:
        config = load_config(args.config)
        years = years or config.years
        cache_dir = cache_dir or config.cache_dir
    if not years:
        raise ConfigError("No years to fetch")
    console.print(Panel.fit(f"⬇  Fetching US Code archives {', '.join(map(str, years))}...", style="blue"))
    paths = fetch_uscode(years, cache_dir or default_cache_dir())
    table = Table(show_header=True, header_style="bold")
    table.add_column("Year")
    table.add_column("Archive")
    for year, path in paths.items():
        table.add_row(str(year), str(path))
    console.print(table)


def main(argv: Optional[List[str]] = None) -> None:
    """CLI entry point"""
    console = Console()
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    try:
        if args.command == "fetch":
            run_fetch(args, console)
        elif args.command == "validate":
            manifest = validate_bundle(args.bundle)
            console.print(f"[green]✔ {len(manifest.files)} files valid[/green]")
        else:
            analyzer = NetworkAnalyzer(config_from_args(args), console)
            manifest, state = analyzer.run("export" if args.command == "all" else args.command)
            analyzer.display_summary(manifest, state)
    except Exception as e:
        console.print(f"[red]Error: {str(e)}[/red]")
        sys.exit(exit_code_for(e))


if __name__ == '__main__':
    main()
