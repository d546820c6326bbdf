"""
Growth accounting, regressions, clustering comparison and term statistics

Parameter sweeps live in ``stats.sweeps``; they drive the clustering package.
"""
from .growth import growth_series, growth_series_from_stats, per_unit_breakdown, unit_stacks
from .metrics import PartitionPair, ari, entropy, nmi
from .regression import (
    family_growth_table,
    ols,
    ols_slope,
    slope_size_regression,
    t_cdf,
    write_regression_csv,
)
from .tfidf import STRUCTURAL_TERMS, tfidf_top_terms

__all__ = [
    "PartitionPair",
    "STRUCTURAL_TERMS",
    "ari",
    "entropy",
    "family_growth_table",
    "growth_series",
    "growth_series_from_stats",
    "nmi",
    "ols",
    "ols_slope",
    "per_unit_breakdown",
    "slope_size_regression",
    "t_cdf",
    "tfidf_top_terms",
    "unit_stacks",
    "write_regression_csv",
]
