"""
CSV tables for snapshot summaries, per-unit stacks and quotient multiplicities
"""
import csv
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence

from ..models import SnapshotSummary, UnitBreakdown
from ..stats.growth import unit_stacks


def write_rows_csv(rows: Sequence[Mapping[str, Any]], path: str | Path, columns: Sequence[str]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: "" if row.get(c) is None else row.get(c) for c in columns})


def write_snapshot_table(summaries: List[SnapshotSummary], path: str | Path) -> None:
    write_rows_csv([s.model_dump() for s in summaries], path, list(SnapshotSummary.model_fields))


def write_unit_stacks_csv(breakdowns: Mapping[int, List[UnitBreakdown]], path: str | Path) -> None:
    """Per-year, per-unit tokens, structures and references for stacked growth plots"""
    write_rows_csv(unit_stacks(breakdowns), path, ["year", *UnitBreakdown.model_fields])


def write_multiplicity_csv(table: List[Dict[str, Any]], path: str | Path) -> None:
    write_rows_csv(table, path, ["year", "min", "max", "edges"])
