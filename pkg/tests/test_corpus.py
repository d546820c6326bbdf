import datetime as dt

import pytest

from conftest import FIXED_DATE, document
from legal_network_analyzer.corpus import (
    build_snapshot,
    collapse_ws,
    count_tokens,
    load_series,
    natural_sort_key,
    parse_document,
    serialize_document,
    snapshot_stats,
)
from legal_network_analyzer.corpus.importers import SyntheticImporter, evolve_snapshot, generate_synthetic_snapshot
from legal_network_analyzer.corpus.tokens import document_order_cite_keys, ordered_cite_keys
from legal_network_analyzer.errors import IntegrityError, ParseError, SchemaError, StateError, StructureError
from legal_network_analyzer.models import ElementKind

NESTED = """
<document date="1990-01-01" key="12">
  <item heading="CHAPTER 1">
    <seqitem citekey="1"><subseqitem>First.</subseqitem><subseqitem>Second.</subseqitem></seqitem>
    <seqitem citekey="2"><subseqitem>Third.</subseqitem><subseqitem>Fourth.</subseqitem></seqitem>
  </item>
</document>
"""


def test_minimal_document():
    tree = document('<document date="1990-01-01" key="BGB"><seqitem citekey="2">Majority begins at the age of eighteen.</seqitem></document>')
    nodes = list(tree.iter_nodes())
    assert len(nodes) == 2
    seqitem = nodes[1]
    assert seqitem.kind == ElementKind.SEQITEM
    assert seqitem.level == 1
    assert seqitem.cite_key == "BGB:2"
    assert seqitem.text == "Majority begins at the age of eighteen."


def test_empty_document_has_only_root():
    tree = document('<document date="1990-01-01" key="x"/>')
    assert tree.node_count == 1
    assert tree.seqitems() == []


def test_levels_follow_depth():
    tree = document(NESTED)
    assert tree.node_count == 8
    assert sorted({e.level for e in tree.iter_nodes()}) == [0, 1, 2, 3]
    for element in tree.iter_nodes():
        for child in element.children:
            assert child.level == element.level + 1


def test_document_key_prefers_abbreviation():
    tree = parse_document(b'<document date="1990-01-01" abbreviation="BGB" key="ignored"><seqitem citekey="1">x</seqitem></document>', key="file")
    assert tree.key == "BGB"
    assert parse_document(b'<document date="1990-01-01"><seqitem citekey="1">x</seqitem></document>', key="file").key == "file"


def test_malformed_xml_reports_offset():
    with pytest.raises(ParseError) as info:
        parse_document(b'<document date="1990-01-01" key="x"><seqitem citekey="1">text</document>')
    assert info.value.offset is not None


@pytest.mark.parametrize("xml, error", [
    ('<document date="1990-01-01" key="x"><chapter/></document>', SchemaError),
    ('<document date="1990-01-01" key="x"><subseqitem>t</subseqitem></document>', StructureError),
    ('<document date="1990-01-01" key="x"><seqitem citekey="1">a</seqitem><seqitem citekey="1">b</seqitem></document>', IntegrityError),
    ('<document date="1990-01-01" key="x"><seqitem>no key</seqitem></document>', SchemaError),
    ('<document date="1990-01-01" key="x"><item>stray text</item></document>', SchemaError),
    ('<document key="x"><seqitem citekey="1">undated</seqitem></document>', SchemaError),
    ('<document date="soon" key="x"/>', SchemaError),
])
def test_schema_violations(xml, error):
    with pytest.raises(error):
        document(xml)


def test_appendix_flag_is_inherited():
    tree = document('<document date="1990-01-01" key="x"><item appendix="true"><seqitem citekey="1">a b c</seqitem></item></document>')
    assert all(e.appendix for e in tree.iter_nodes() if e.level > 0)


def test_serialized_document_reparses_identically():
    tree = document(NESTED)
    assert parse_document(serialize_document(tree)) == tree


@pytest.mark.parametrize("text, expected", [
    ("", 0),
    ("An owner of eligible low-income housing", 6),
    ("a\tb\nc", 3),
    ("a b c", 3),
])
def test_count_tokens(text, expected):
    assert count_tokens(text) == expected
    assert count_tokens(collapse_ws(text)) == expected


def test_natural_key_order():
    keys = ["1438", "1437f", "2", "1437"]
    assert sorted(keys, key=natural_sort_key) == ["2", "1437", "1437f", "1438"]


def test_stats_of_empty_snapshot():
    snapshot = build_snapshot("x", FIXED_DATE, []).with_references([])
    stats = snapshot_stats(snapshot)
    assert (stats.tokens, stats.structures, stats.references) == (0, 1, 0)


def test_stats_require_resolved_references():
    with pytest.raises(StateError):
        snapshot_stats(build_snapshot("x", FIXED_DATE, []))
    assert snapshot_stats(build_snapshot("x", FIXED_DATE, []), include_references=False).references is None


def test_appendix_tokens_excluded():
    tree = document('<document date="1990-01-01" key="x"><seqitem citekey="1">one two</seqitem>'
                    '<item appendix="true"><seqitem citekey="2">three four five</seqitem></item></document>')
    stats = snapshot_stats(build_snapshot("x", FIXED_DATE, [tree]), include_references=False)
    assert stats.tokens == 2


def test_minicorpus_stats(mini_2000):
    stats = snapshot_stats(mini_2000)
    assert len(mini_2000.documents) == 2
    assert len(mini_2000.citekey_index) == 6
    assert stats.references == 3

    def walk(element):
        return 1 + sum(walk(child) for child in element.children)

    assert stats.structures == 1 + sum(walk(doc.root) for doc in mini_2000.documents)


def test_minicorpus_cite_keys_in_key_order(mini_series):
    for snapshot in mini_series:
        for doc in snapshot.documents:
            keys = [e.local_key for e in doc.seqitems()]
            assert keys == sorted(keys, key=natural_sort_key)
    assert document_order_cite_keys(mini_series[0]) == ordered_cite_keys(mini_series[0])


def test_cite_key_shared_across_documents_rejected():
    a = document('<document date="1990-01-01" key="x"><seqitem citekey="1">a</seqitem></document>')
    with pytest.raises(IntegrityError):
        build_snapshot("c", FIXED_DATE, [a, a])


def test_series_dates_must_increase(minicorpus_dir):
    manifest = minicorpus_dir / "2000" / "manifest.json"
    with pytest.raises(IntegrityError):
        load_series([manifest, manifest])


def test_synthetic_generation_is_seeded():
    assert generate_synthetic_snapshot(seed=3) == generate_synthetic_snapshot(seed=3)
    assert generate_synthetic_snapshot(seed=3) != generate_synthetic_snapshot(seed=4)


def test_evolution_truth_covers_every_subseqitem():
    snapshot = generate_synthetic_snapshot(seed=1)
    evolved, truth = evolve_snapshot(snapshot, seed=2)
    subseqitems = {e.id for e in snapshot.elements.values() if e.kind == ElementKind.SUBSEQITEM}
    assert set(truth) == subseqitems
    assert evolved.date == dt.date(1995, 1, 1)
    survivors = {v for v in truth.values() if v is not None}
    assert survivors <= set(evolved.elements)


def test_synthetic_importer_accepts_plain_options():
    importer = SyntheticImporter(years=2, seed=5, shape={"documents": 1, "chapters": 2}, start="2010-01-01")
    series = importer.import_series()
    assert [s.year for s in series] == [2010, 2011]
    assert len(series[0].documents) == 1
    assert len(importer.truths) == 1
