"""
Figure data, SVG drawings, reports, tables and schemas written into a bundle
"""
from .alluvial import alluvial_export, render_alluvial_svg, write_alluvial
from .layout import fr_layout
from .quotient_viz import dominant_families, quotient_viz_export, render_quotient_svg, write_quotient_viz
from .reports import ReportGenerator, cluster_composition, family_report_export, family_summaries
from .schemas import validate_bundle, write_schemas
from .tables import write_multiplicity_csv, write_rows_csv, write_snapshot_table, write_unit_stacks_csv

__all__ = [
    "ReportGenerator",
    "alluvial_export",
    "cluster_composition",
    "dominant_families",
    "family_report_export",
    "family_summaries",
    "fr_layout",
    "quotient_viz_export",
    "render_alluvial_svg",
    "render_quotient_svg",
    "validate_bundle",
    "write_alluvial",
    "write_multiplicity_csv",
    "write_quotient_viz",
    "write_rows_csv",
    "write_schemas",
    "write_snapshot_table",
    "write_unit_stacks_csv",
]
