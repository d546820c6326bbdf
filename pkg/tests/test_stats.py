import math
from itertools import combinations

import numpy as np
import pytest
from scipy import stats as scipy_stats

from conftest import planted_cliques
from legal_network_analyzer.errors import ParameterError
from legal_network_analyzer.models import SnapshotStats
from legal_network_analyzer.stats import (
    PartitionPair,
    ari,
    growth_series,
    growth_series_from_stats,
    nmi,
    ols,
    ols_slope,
    per_unit_breakdown,
    t_cdf,
    tfidf_top_terms,
    unit_stacks,
)
from legal_network_analyzer.stats.sweeps import AUTO, robustness_sweep, sensitivity_sweep


def same_blocks(x, y):
    blocks = lambda labels: {frozenset(i for i, l in enumerate(labels) if l == label) for label in set(labels)}
    return blocks(x) == blocks(y)


def nmi_oracle(x, y):
    if same_blocks(x, y):
        return 1.0
    n = len(x)
    px = {a: x.count(a) / n for a in set(x)}
    py = {b: y.count(b) / n for b in set(y)}
    joint = {}
    for a, b in zip(x, y):
        joint[a, b] = joint.get((a, b), 0) + 1 / n
    mutual = sum(p * math.log(p / (px[a] * py[b])) for (a, b), p in joint.items())
    hx = -sum(p * math.log(p) for p in px.values())
    hy = -sum(p * math.log(p) for p in py.values())
    if hx == 0 or hy == 0:
        return 0.0
    return mutual / math.sqrt(hx * hy)


def ari_oracle(x, y):
    if same_blocks(x, y):
        return 1.0
    pairs = list(combinations(range(len(x)), 2))
    same_x = [x[i] == x[j] for i, j in pairs]
    same_y = [y[i] == y[j] for i, j in pairs]
    both = sum(a and b for a, b in zip(same_x, same_y))
    expected = sum(same_x) * sum(same_y) / len(pairs)
    maximum = (sum(same_x) + sum(same_y)) / 2
    return (both - expected) / (maximum - expected)


def test_crossed_partitions():
    pair = PartitionPair.from_blocks([[1, 2], [3, 4]], [[1, 3], [2, 4]])
    assert nmi(pair) == pytest.approx(0.0, abs=1e-12)
    assert ari(pair) == pytest.approx(-0.5)


def test_identical_up_to_relabeling():
    pair = PartitionPair.from_assignments({"a": 0, "b": 0, "c": 1}, {"a": 5, "b": 5, "c": 2})
    assert nmi(pair) == 1.0
    assert ari(pair) == 1.0


def test_single_cluster_against_a_split():
    pair = PartitionPair.from_blocks([[1, 2, 3, 4]], [[1, 2], [3, 4]])
    assert nmi(pair) == 0.0
    assert nmi(PartitionPair.from_blocks([[1, 2, 3]], [[1, 2, 3]])) == 1.0


def test_metrics_match_oracles_and_are_symmetric():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(2, 11))
        x = rng.integers(0, int(rng.integers(1, 5)), size=n).tolist()
        y = rng.integers(0, int(rng.integers(1, 5)), size=n).tolist()
        universe = [str(i) for i in range(n)]
        pair = PartitionPair(universe=universe, x=x, y=y)
        swapped = PartitionPair(universe=universe, x=y, y=x)
        assert nmi(pair) == pytest.approx(nmi_oracle(x, y), abs=1e-12)
        assert ari(pair) == pytest.approx(ari_oracle(x, y), abs=1e-12)
        assert nmi(pair) == pytest.approx(nmi(swapped))
        assert ari(pair) == pytest.approx(ari(swapped))


def test_partitions_must_share_a_universe():
    with pytest.raises(ParameterError):
        PartitionPair.from_assignments({"a": 0}, {"b": 0})


def test_exact_fit_is_degenerate():
    result = ols([0, 1, 2, 3, 4], [3, 5, 7, 9, 11])
    assert result.slope == pytest.approx(2.0)
    assert result.intercept == pytest.approx(3.0)
    assert result.degenerate
    assert result.p_value == 0.0
    assert result.stderr == 0.0


def test_ols_closed_form():
    x, y = [1, 2, 3, 4, 5], [2, 4, 5, 4, 5]
    result = ols(x, y)
    assert result.slope == pytest.approx(0.6)
    assert result.intercept == pytest.approx(2.2)
    assert result.stderr == pytest.approx(math.sqrt(0.08))
    assert result.t_statistic == pytest.approx(0.6 / math.sqrt(0.08))
    assert result.p_value == pytest.approx(2 * scipy_stats.t.sf(result.t_statistic, 3))
    assert not result.degenerate

    residuals = np.array(y) - np.array([result.predict(v) for v in x])
    assert residuals.sum() == pytest.approx(0.0, abs=1e-12)
    assert residuals @ np.array(x) == pytest.approx(0.0, abs=1e-12)


def test_ols_on_years():
    result = ols_slope({2002: 9.0, 2000: 5.0, 2001: 8.0})
    assert result.slope == pytest.approx(2.0)
    assert result.n == 3


def test_two_points_have_no_test():
    result = ols([0, 1], [1, 4])
    assert result.slope == pytest.approx(3.0)
    assert result.p_value is None


@pytest.mark.parametrize("x,y", [([1], [1]), ([2, 2, 2], [1, 2, 3]), ([1, 2], [1])])
def test_ols_rejects(x, y):
    with pytest.raises(ParameterError):
        ols(x, y)


def test_t_cdf():
    assert t_cdf(0.0, 5) == pytest.approx(0.5)
    assert t_cdf(2.0, 10) == pytest.approx(scipy_stats.t.cdf(2.0, 10))


def test_reference_growth_ratio():
    series = growth_series_from_stats({
        2018: SnapshotStats(tokens=2, structures=2, references=139_100),
        1994: SnapshotStats(tokens=1, structures=1, references=76_900),
    })
    assert [p.year for p in series.points] == [1994, 2018]
    assert series.points[1].relative_references == pytest.approx(1.81, abs=0.01)


def test_growth_from_zero():
    series = growth_series_from_stats({
        1: SnapshotStats(tokens=0, structures=1, references=0),
        2: SnapshotStats(tokens=5, structures=1, references=0),
    })
    assert series.points[1].relative_tokens is None
    assert series.points[1].relative_references == 1.0


def test_minicorpus_growth(mini_series):
    points = growth_series(mini_series).points
    assert [p.references for p in points] == [3, 4, 6]
    assert points[2].relative_references == pytest.approx(2.0)


def test_per_unit_breakdown(mini_2000, mini_refgraph):
    rows = {row.unit: row for row in per_unit_breakdown(mini_refgraph)}
    assert set(rows) == {"12", "42"}
    assert (rows["12"].structures, rows["42"].structures) == (12, 11)
    assert (rows["12"].internal_refs, rows["12"].out_refs, rows["12"].in_refs) == (1, 1, 1)
    assert (rows["42"].internal_refs, rows["42"].out_refs, rows["42"].in_refs) == (0, 1, 1)
    assert sum(row.tokens for row in rows.values()) == sum(
        d["tokens"] for _, d in mini_refgraph.nodes(data=True)
    )
    stacks = unit_stacks({2000: list(rows.values())})
    assert [row["unit"] for row in stacks] == ["12", "42"]


def test_tfidf_ranking():
    terms = tfidf_top_terms({
        0: "bank bank deposit section",
        1: "deposit insurance",
        2: "welfare health",
    }, k=2)
    assert terms[0] == [("bank", pytest.approx(2 * math.log(3))), ("deposit", pytest.approx(math.log(1.5)))]
    assert [t for t, _ in terms[2]] == ["health", "welfare"]
    assert all(term != "section" for ranked in terms.values() for term, _ in ranked)


def test_tfidf_drops_ubiquitous_terms():
    terms = tfidf_top_terms({0: "fee rule", 1: "fee law"}, k=5)
    assert [t for t, _ in terms[0]] == ["rule"]
    assert tfidf_top_terms({0: "", 1: "  "}) == {0: [], 1: []}


def test_sensitivity_baseline_matches_itself():
    graph = planted_cliques(3, 4)
    result = sensitivity_sweep(graph, settings=[2, 3, AUTO], baseline=3, runs=3)
    assert [d.setting for d in result.distributions] == ["2", "3", "auto"]
    baseline = result.distributions[1]
    assert baseline.nmi == [1.0]
    assert baseline.ari == [1.0]
    assert all(0.0 <= v <= 1.0 for d in result.distributions for v in d.nmi)


def test_robustness_pairs_repeats():
    result = robustness_sweep({2000: planted_cliques(3, 4)}, consensus_sizes=(2,), repeats=3, preferred_n=3)
    distribution = result.distributions[0]
    assert distribution.setting == "2"
    assert len(distribution.nmi) == 3
    assert set(distribution.per_year_nmi) == {2000}
