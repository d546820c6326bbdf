import datetime as dt
import itertools
from pathlib import Path

import networkx as nx
import pytest

from legal_network_analyzer.config import load_config
from legal_network_analyzer.corpus import load_series, parse_document
from legal_network_analyzer.graphs import build_hierarchy, build_reference
from legal_network_analyzer.main import demo_config_path
from legal_network_analyzer.refextract import extract_all, load_profile


@pytest.fixture(scope="session")
def minicorpus_dir() -> Path:
    return demo_config_path().parent


@pytest.fixture(scope="session")
def mini_series(minicorpus_dir):
    """The three bundled snapshots with their references resolved"""
    profile = load_profile("us")
    snapshots = load_series([minicorpus_dir / str(year) / "manifest.json" for year in (2000, 2001, 2002)])
    return [s.with_references(extract_all(s, profile)[0]) for s in snapshots]


@pytest.fixture(scope="session")
def mini_2000(mini_series):
    return mini_series[0]


@pytest.fixture(scope="session")
def mini_refgraph(mini_2000):
    return build_reference(build_hierarchy(mini_2000), mini_2000.references)


@pytest.fixture
def mini_config(tmp_path):
    """Demo configuration writing into a temporary bundle"""
    config = load_config(demo_config_path())
    return config.model_copy(update={"output": str(tmp_path / "bundle")})


def document(xml: str, key: str = "doc"):
    return parse_document(xml.encode("utf-8"), key=key)


def planted_cliques(cliques: int, size: int, ring: bool = True) -> nx.Graph:
    """Cliques of `size` nodes joined by single edges, optionally closed to a ring"""
    graph = nx.Graph(snapshot="planted")
    for c in range(cliques):
        members = [f"c{c}n{i}" for i in range(size)]
        graph.add_edges_from(itertools.combinations(members, 2))
    links = cliques if ring else cliques - 1
    for c in range(links):
        graph.add_edge(f"c{c}n{size - 1}", f"c{(c + 1) % cliques}n0")
    return graph


def planted_partition(graph: nx.Graph) -> dict:
    return {node: int(node[1:node.index("n")]) for node in graph}


def set_partitions(items):
    """Every partition of `items` as a label list (restricted growth strings)"""
    n = len(items)

    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))

    if n == 0:
        yield []
        return
    yield from grow([0], 0)


FIXED_DATE = dt.date(2000, 1, 1)
