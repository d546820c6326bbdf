"""
Simple OLS with a two-sided Wald t-test on the slope
"""
import csv
import logging
import math
from pathlib import Path
from typing import Iterable, List, Mapping, Optional

import numpy as np
from scipy.special import stdtr

from ..errors import ParameterError
from ..models import ClusterFamily, FamilyGrowth, RegressionResult

logger = logging.getLogger(__name__)

_EXACT_FIT = 1e-12


def t_cdf(t: float, dof: float) -> float:
    """Student t distribution function (regularized incomplete beta)"""
    return float(stdtr(dof, t))


def ols(x: Iterable[float], y: Iterable[float]) -> RegressionResult:
    """Closed-form y = intercept + slope * x"""
    x = np.asarray(list(x), dtype=float)
    y = np.asarray(list(y), dtype=float)
    n = len(x)
    if n != len(y):
        raise ParameterError("x and y differ in length")
    if n < 2:
        raise ParameterError(f"At least two observations required, got {n}")
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        raise ParameterError("Regressor has zero variance")
    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    if n < 3:
        return RegressionResult(slope=slope, intercept=intercept, n=n)

    residuals = y - (intercept + slope * x)
    sse = float(residuals @ residuals)
    scale = max(1.0, float(np.abs(y).max()))
    if sse <= n * (_EXACT_FIT * scale) ** 2:
        return RegressionResult(slope=slope, intercept=intercept, stderr=0.0, p_value=0.0, n=n, degenerate=True)

    dof = n - 2
    stderr = math.sqrt(sse / dof / sxx)
    t = slope / stderr
    p = 2.0 * t_cdf(-abs(t), dof)
    return RegressionResult(
        slope=slope, intercept=intercept, stderr=stderr, t_statistic=t, p_value=min(max(p, 0.0), 1.0), n=n,
    )


def ols_slope(series: Mapping[int, float]) -> RegressionResult:
    """Regression of a per-year series on the year"""
    years = sorted(series)
    return ols(years, [series[year] for year in years])


def family_growth_table(families: List[ClusterFamily]) -> List[FamilyGrowth]:
    """Per-family slope of size over time, with the fitted size at the last year"""
    table = []
    for family in families:
        years = sorted(family.sizes)
        if len(years) < 2:
            logger.debug("Family %d spans fewer than two years; no regression", family.index)
            continue
        regression = ols_slope(family.sizes)
        table.append(FamilyGrowth(
            family=family.index,
            label=family.leading,
            mean_size=sum(family.sizes.values()) / len(years),
            expected_last=regression.predict(years[-1]),
            regression=regression,
        ))
    return table


def slope_size_regression(table: List[FamilyGrowth], top: Optional[int] = 20) -> RegressionResult:
    """Slope against mean family size over the largest families"""
    rows = table[:top] if top else table
    return ols([r.mean_size for r in rows], [r.regression.slope for r in rows])


def write_regression_csv(table: List[FamilyGrowth], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([
            "family", "label", "slope", "intercept", "stderr", "t", "p_value", "n", "mean_size", "expected_last",
        ])
        for row in table:
            r = row.regression
            writer.writerow([
                row.family, row.label, r.slope, r.intercept,
                "" if r.stderr is None else r.stderr,
                "" if r.t_statistic is None else r.t_statistic,
                "" if r.p_value is None else r.p_value,
                r.n, row.mean_size, row.expected_last,
            ])
