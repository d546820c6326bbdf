from collections import Counter

import networkx as nx
import pytest

from conftest import FIXED_DATE, document
from legal_network_analyzer.corpus import build_snapshot
from legal_network_analyzer.errors import ConfigError, IntegrityError, MappingError, ParameterError
from legal_network_analyzer.graphs import (
    CONTAINMENT,
    META_ROOT,
    REFERENCE,
    SEQUENCE,
    build_hierarchy,
    build_reference,
    build_sequence,
    build_subsequence,
    default_weight,
    distance_weight,
    export_graphml,
    multiplicity_table,
    quotient,
    reference_multiplicity,
    resolve_selector,
)
from legal_network_analyzer.models import ResolvedReference

TWO_CHAPTERS = """
<document date="1990-01-01" key="7">
  <item id="ch1" heading="CHAPTER 1">
    <seqitem id="s1" citekey="1">One.</seqitem>
    <seqitem id="s2" citekey="2">Two.</seqitem>
    <seqitem id="s3" citekey="3">Three.</seqitem>
  </item>
  <item id="ch2" heading="CHAPTER 2">
    <seqitem id="s4" citekey="4">Four.</seqitem>
    <seqitem id="s5" citekey="5">Five.</seqitem>
    <seqitem id="s6" citekey="6">Six.</seqitem>
  </item>
</document>
"""


def snapshot_of(*xml: str):
    return build_snapshot("test", FIXED_DATE, [document(x) for x in xml])


def refgraph_of(snapshot, pairs=()):
    references = [ResolvedReference(source_id=s, target_id=t, key=t) for s, t in pairs]
    return build_reference(build_hierarchy(snapshot), references)


def arcs(graph, kind):
    return [(u, v, d) for u, v, k, d in graph.edges(keys=True, data=True) if k == kind]


def test_hierarchy_counts():
    snapshot = snapshot_of(
        '<document date="1990-01-01" key="a"><seqitem citekey="1"><subseqitem>x</subseqitem></seqitem></document>',
        '<document date="1990-01-01" key="b"><seqitem citekey="2">y</seqitem></document>',
    )
    hierarchy = build_hierarchy(snapshot)
    assert hierarchy.number_of_nodes() == 6
    assert hierarchy.number_of_edges() == 5


def test_empty_hierarchy():
    hierarchy = build_hierarchy(build_snapshot("x", FIXED_DATE, []))
    assert list(hierarchy.nodes) == [META_ROOT]
    assert hierarchy.number_of_edges() == 0


def test_minicorpus_hierarchy_matches_parent_pointers(mini_2000):
    hierarchy = build_hierarchy(mini_2000)
    expected = {(parent or META_ROOT, child) for child, parent in mini_2000.parents.items()}
    assert set(hierarchy.edges()) == expected
    assert nx.is_arborescence(hierarchy)
    assert [n for n, level in hierarchy.nodes(data="level") if level == -1] == [META_ROOT]


def test_identical_references_add_multiplicity():
    graph = refgraph_of(snapshot_of(TWO_CHAPTERS), [("s1", "s4"), ("s1", "s4")])
    assert graph.edges["s1", "s4", REFERENCE]["multiplicity"] == 2
    assert reference_multiplicity(graph) == 2


def test_reference_graph_without_references_is_hierarchy():
    snapshot = snapshot_of(TWO_CHAPTERS)
    graph = refgraph_of(snapshot)
    assert sorted(graph.edges()) == sorted(build_hierarchy(snapshot).edges())


def test_minicorpus_reference_edge_count(mini_2000, mini_refgraph):
    hierarchy = build_hierarchy(mini_2000)
    assert mini_refgraph.number_of_edges() == hierarchy.number_of_edges() + len(mini_2000.references)
    without = mini_refgraph.copy()
    without.remove_edges_from([(u, v, k) for u, v, k in mini_refgraph.edges(keys=True) if k == REFERENCE])
    assert sorted(without.edges()) == sorted(hierarchy.edges())


def test_reference_leaving_snapshot_rejected():
    with pytest.raises(IntegrityError):
        refgraph_of(snapshot_of(TWO_CHAPTERS), [("s1", "elsewhere")])


def test_default_weight_decreases_with_distance():
    assert default_weight(2) == 1.0
    assert default_weight(4) == 0.5
    assert default_weight(6) < default_weight(4)


def test_distance_weight_decay(mini_refgraph):
    assert distance_weight() is default_weight
    steep = distance_weight(1.0)
    assert (steep(2), steep(3), steep(4)) == (1.0, 0.5, 0.25)
    graph = build_sequence(mini_refgraph, w=steep)
    assert graph.edges["t12-s1812", "t12-s1813", SEQUENCE]["weight"] == 0.25
    with pytest.raises(ParameterError):
        distance_weight(0.0)


def test_sibling_sequence_arcs():
    graph = build_sequence(refgraph_of(snapshot_of(
        '<document date="1990-01-01" key="1"><item heading="CHAPTER 1">'
        '<seqitem citekey="1">a</seqitem><seqitem citekey="2">b</seqitem><seqitem citekey="3">c</seqitem>'
        '</item></document>'
    )))
    sequence = arcs(graph, SEQUENCE)
    assert len(sequence) == 4
    assert {d["weight"] for _, _, d in sequence} == {1.0}


def test_chapter_boundary_weighs_less(mini_refgraph):
    graph = build_sequence(mini_refgraph)
    assert graph.edges["t12-s1811", "t12-s1812", SEQUENCE]["weight"] == 1.0
    assert graph.edges["t12-s1812", "t12-s1813", SEQUENCE]["weight"] == 0.5


def test_sequence_invariants(mini_refgraph):
    graph = build_sequence(mini_refgraph, alpha=0.5)
    for u, v, data in arcs(graph, SEQUENCE):
        assert graph.edges[v, u, SEQUENCE]["weight"] == data["weight"]
    assert all(d["weight"] > 0 for _, _, d in graph.edges(data=True))
    assert {d["weight"] for _, _, d in arcs(graph, REFERENCE)} == {0.5 * default_weight(2)}
    assert sum(d["multiplicity"] for _, _, d in arcs(graph, REFERENCE)) == reference_multiplicity(mini_refgraph)


def test_chapter_merge_makes_self_references():
    refgraph = refgraph_of(snapshot_of(TWO_CHAPTERS), [("s1", "s2"), ("s1", "s4")])
    graph = build_sequence(refgraph, "chapter-or-title")
    assert sorted(graph.nodes) == ["ch1", "ch2"]
    assert graph.edges["ch1", "ch1", REFERENCE]["multiplicity"] == 1
    assert graph.edges["ch1", "ch2", REFERENCE]["multiplicity"] == 1
    assert graph.nodes["ch1"]["members"] == ("s1", "s2", "s3")
    assert graph.nodes["ch1"]["text"] == "One. Two. Three."


def test_nonpositive_weight_rejected(mini_refgraph):
    with pytest.raises(ParameterError):
        build_sequence(mini_refgraph, w=lambda d: 1.0 if d == 2 else 0.0)
    with pytest.raises(ParameterError):
        build_sequence(mini_refgraph, alpha=0.0)


def test_subsequence_nodes(mini_refgraph):
    graph = build_subsequence(mini_refgraph)
    assert graph.number_of_nodes() == 12
    # references land on the first subseqitem of their target
    assert graph.has_edge("t12-s1812-a", "t12-s1813-a", REFERENCE)


def test_seqitem_without_subseqitems_stays():
    graph = build_subsequence(refgraph_of(snapshot_of(
        '<document date="1990-01-01" key="1"><seqitem id="a" citekey="1"><subseqitem id="a1">x</subseqitem>'
        '<subseqitem id="a2">y</subseqitem><subseqitem id="a3">z</subseqitem></seqitem>'
        '<seqitem id="b" citekey="2">w</seqitem></document>'
    )))
    assert sorted(graph.nodes) == ["a1", "a2", "a3", "b"]


def test_quotient_identity_and_constant():
    graph = nx.DiGraph([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])
    assert nx.is_isomorphic(quotient(graph, "none"), graph)
    single = quotient(graph, lambda hierarchy, node: "all")
    assert list(single.nodes) == ["all"]
    assert single.edges["all", "all"]["multiplicity"] == graph.number_of_edges()
    assert single.nodes["all"]["size"] == 3


def test_chapter_quotient_of_minicorpus(mini_refgraph):
    clustered = build_sequence(mini_refgraph)
    graph = quotient(clustered, "chapter-or-title")
    select = resolve_selector("chapter-or-title")
    expected = Counter()
    for u, v, data in clustered.edges(data=True):
        expected[(select(mini_refgraph, u), select(mini_refgraph, v))] += data["multiplicity"]
    assert {(u, v): d["multiplicity"] for u, v, d in graph.edges(data=True)} == dict(expected)
    assert graph.edges["t12-ch16", "t12-ch17"]["multiplicity"] == 2
    assert graph.edges["t42-ch7", "t42-ch7"]["multiplicity"] == 4
    assert sum(d["size"] for _, d in graph.nodes(data=True)) == clustered.number_of_nodes()
    assert multiplicity_table({2000: graph}) == [{"year": 2000, "min": 1, "max": 2, "edges": 5}]


def test_selectors(mini_refgraph):
    chapter = resolve_selector("attr:heading=CHAPTER 16*")
    assert chapter(mini_refgraph, "t12-s1812-b") == "t12-ch16"
    assert chapter(mini_refgraph, "t42-s301") is None
    assert resolve_selector("document")(mini_refgraph, "t42-s301-a") == "t42"
    with pytest.raises(MappingError):
        build_sequence(mini_refgraph, "attr:heading=CHAPTER 16*")
    with pytest.raises(ConfigError):
        resolve_selector("paragraph")


def test_graphml_export(tmp_path, mini_refgraph):
    graph = build_sequence(mini_refgraph)
    path = export_graphml(graph, tmp_path / "sequence.graphml")
    loaded = nx.read_graphml(path)
    assert loaded.number_of_nodes() == graph.number_of_nodes()
    assert loaded.number_of_edges() == graph.number_of_edges()
    assert loaded.nodes["t12-s1811"]["kind"] == "seqitem"
    assert loaded.nodes["t12-s1811"]["citekey"] == "12:1811"
    assert {d["edge_type"] for _, _, d in loaded.edges(data=True)} == {REFERENCE, SEQUENCE}
    reference = export_graphml(mini_refgraph, tmp_path / "reference.graphml")
    assert CONTAINMENT in reference.read_text(encoding="utf-8")
