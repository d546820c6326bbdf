"""
Growth accounting per snapshot and per structural unit
"""
from typing import Dict, List, Mapping, Optional, Sequence

import networkx as nx

from ..corpus.tokens import snapshot_stats
from ..errors import MappingError
from ..graphs.builders import META_ROOT, REFERENCE
from ..graphs.merge import Selector, resolve_selector
from ..models import GrowthPoint, GrowthSeries, Snapshot, SnapshotStats, UnitBreakdown


def _relative(value: int, base: int) -> Optional[float]:
    if base == 0:
        return 1.0 if value == 0 else None
    return value / base


def growth_series_from_stats(stats: Mapping[int, SnapshotStats]) -> GrowthSeries:
    """Absolute and first-year-relative statistics, ordered by year"""
    years = sorted(stats)
    if not years:
        return GrowthSeries()
    first = stats[years[0]]
    points = []
    for year in years:
        s = stats[year]
        references = s.references or 0
        points.append(GrowthPoint(
            year=year,
            tokens=s.tokens,
            structures=s.structures,
            references=references,
            relative_tokens=_relative(s.tokens, first.tokens),
            relative_structures=_relative(s.structures, first.structures),
            relative_references=_relative(references, first.references or 0),
        ))
    return GrowthSeries(points=points)


def growth_series(snapshots: Sequence[Snapshot]) -> GrowthSeries:
    return growth_series_from_stats({s.year: snapshot_stats(s) for s in snapshots})


def _unit_name(graph: nx.Graph, unit: str) -> str:
    data = graph.nodes[unit]
    return data["document"] if data.get("kind") == "document" else unit


def per_unit_breakdown(refgraph: nx.MultiDiGraph, selector: str | Selector = "document") -> List[UnitBreakdown]:
    """Tokens, structures and cross-unit / internal references per unit"""
    select = resolve_selector(selector)
    unit_of: Dict[str, str] = {}
    rows: Dict[str, UnitBreakdown] = {}
    for node, data in refgraph.nodes(data=True):
        if node == META_ROOT:
            continue
        unit = select(refgraph, node)
        if unit is None:
            raise MappingError(f"Unit selector undefined for node {node!r}")
        unit_of[node] = unit
        row = rows.setdefault(unit, UnitBreakdown(unit=_unit_name(refgraph, unit)))
        row.tokens += data.get("tokens", 0)
        row.structures += 1

    for u, v, key, data in refgraph.edges(keys=True, data=True):
        if key != REFERENCE:
            continue
        a, b = unit_of[u], unit_of[v]
        if a == b:
            rows[a].internal_refs += data["multiplicity"]
        else:
            rows[a].out_refs += data["multiplicity"]
            rows[b].in_refs += data["multiplicity"]
    return list(rows.values())


def unit_stacks(breakdowns: Mapping[int, List[UnitBreakdown]]) -> List[Dict[str, object]]:
    """Flat per-year, per-unit rows for stacked growth plots"""
    rows = []
    for year in sorted(breakdowns):
        for row in sorted(breakdowns[year], key=lambda r: r.unit):
            rows.append({"year": year, **row.model_dump()})
    return rows

