"""
Alluvial figure data: per-year cluster blocks and the flows between adjacent years
"""
import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ..dynamics.families import chi, family_of
from ..models import AlluvialBlock, AlluvialData, AlluvialSpline, AlluvialYear, ClusterFamily
from .svg import SvgCanvas

logger = logging.getLogger(__name__)

FAMILY_COLORS = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231",
    "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe",
    "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000",
    "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080",
]
GREYS = ["#5f5f5f", "#8c8c8c"]
MISC_COLOR = "#d3d3d3"
FULL_WIDTH = 1000.0
ROW_HEIGHT = 120.0
BLOCK_HEIGHT = 18.0
MARGIN = 40.0

_TOLERANCE = 1e-12


def misc_label(year: int) -> str:
    return f"{year}-misc"


def family_color(family: Optional[int], position: int, top_families: int) -> str:
    """Palette color for the largest families, alternating greys otherwise"""
    if family is not None and family < min(top_families, len(FAMILY_COLORS)):
        return FAMILY_COLORS[family]
    return GREYS[position % len(GREYS)]


def _year_blocks(
    graph: nx.DiGraph, year: int, top_n: int, families: Dict[str, int], top_families: int
) -> Tuple[AlluvialYear, Dict[str, str]]:
    clusters = sorted(
        (n for n, d in graph.nodes(data=True) if d["year"] == year),
        key=lambda n: (-graph.nodes[n]["tokens"], graph.nodes[n]["cluster"]),
    )
    drawn, rest = clusters[:top_n], clusters[top_n:]
    block_of = {label: label for label in drawn}
    entry = AlluvialYear(year=year)
    for position, label in enumerate(drawn):
        family = families.get(label)
        entry.blocks.append(AlluvialBlock(
            cluster=label,
            tokens=graph.nodes[label]["tokens"],
            family=family,
            color=family_color(family, position, top_families),
        ))
    if rest:
        misc = misc_label(year)
        block_of.update({label: misc for label in rest})
        entry.blocks.append(AlluvialBlock(
            cluster=misc,
            tokens=sum(graph.nodes[label]["tokens"] for label in rest),
            color=MISC_COLOR,
            misc=True,
            condensed=rest,
        ))
    return entry, block_of


def alluvial_export(
    cluster_graph: nx.DiGraph,
    families: List[ClusterFamily],
    top_n: int = 50,
    top_families: int = 20,
    flow_threshold: float = 0.15,
) -> AlluvialData:
    """Blocks ordered by tokens with a trailing misc block; splines carrying >= flow_threshold of both ends"""
    years = list(cluster_graph.graph.get("years") or sorted({d["year"] for _, d in cluster_graph.nodes(data=True)}))
    index = family_of(families)
    per_year: List[AlluvialYear] = []
    block_of: Dict[str, str] = {}
    for year in years:
        entry, mapping = _year_blocks(cluster_graph, year, top_n, index, top_families)
        per_year.append(entry)
        block_of.update(mapping)

    widest = max((entry.tokens for entry in per_year), default=0)
    scale = FULL_WIDTH / widest if widest else 0.0
    for entry in per_year:
        x = 0.0
        for block in entry.blocks:
            block.x = x
            block.width = block.tokens * scale
            x += block.width

    colors = {block.cluster: block.color for entry in per_year for block in entry.blocks}
    successor = dict(zip(years, years[1:]))
    flows: Dict[Tuple[str, str], int] = defaultdict(int)
    source_year: Dict[Tuple[str, str], int] = {}
    for u, v, data in cluster_graph.edges(data=True):
        year_u = cluster_graph.nodes[u]["year"]
        if successor.get(year_u) != cluster_graph.nodes[v]["year"]:
            continue
        size_u, size_v = cluster_graph.nodes[u]["tokens"], cluster_graph.nodes[v]["tokens"]
        if size_u <= 0 or size_v <= 0:
            continue
        if chi(data["weight"], size_u, size_v) < flow_threshold - _TOLERANCE:
            continue
        key = (block_of[u], block_of[v])
        flows[key] += int(data["weight"])
        source_year[key] = year_u

    splines = [
        AlluvialSpline(source=s, target=t, source_year=source_year[(s, t)], tokens=tokens, color=colors[s])
        for (s, t), tokens in sorted(flows.items(), key=lambda item: (source_year[item[0]], item[0]))
    ]
    logger.info("Alluvial data: %d years, %d splines", len(per_year), len(splines))
    return AlluvialData(
        top_n=top_n,
        top_families=top_families,
        flow_threshold=flow_threshold,
        scale=scale,
        years=per_year,
        splines=splines,
    )


def render_alluvial_svg(data: AlluvialData) -> SvgCanvas:
    """Years top to bottom, blocks left to right, splines stacked inside their blocks"""
    height = 2 * MARGIN + max(len(data.years) - 1, 0) * ROW_HEIGHT + BLOCK_HEIGHT
    canvas = SvgCanvas(FULL_WIDTH + 2 * MARGIN, height, title="Cluster families over time")
    blocks: Dict[str, Tuple[float, float]] = {}
    for row, entry in enumerate(data.years):
        y = MARGIN + row * ROW_HEIGHT
        canvas.text(2.0, y + BLOCK_HEIGHT - 4, str(entry.year))
        for block in entry.blocks:
            canvas.rect(MARGIN + block.x, y, block.width, BLOCK_HEIGHT, block.color,
                        title=f"{block.cluster}: {block.tokens} tokens")
            blocks[block.cluster] = (MARGIN + block.x, y)

    out_offset: Dict[str, float] = defaultdict(float)
    in_offset: Dict[str, float] = defaultdict(float)
    for spline in data.splines:
        width = spline.tokens * data.scale
        sx, sy = blocks[spline.source]
        tx, ty = blocks[spline.target]
        canvas.band(
            sx + out_offset[spline.source], sy + BLOCK_HEIGHT,
            tx + in_offset[spline.target], ty,
            width, spline.color,
        )
        out_offset[spline.source] += width
        in_offset[spline.target] += width
    return canvas


def write_alluvial(data: AlluvialData, json_path: str | Path, svg_path: str | Path) -> None:
    Path(json_path).write_text(data.model_dump_json(indent=2), encoding="utf-8")
    render_alluvial_svg(data).write(svg_path)
