import random

import pytest

from conftest import FIXED_DATE, document
from legal_network_analyzer.corpus import build_snapshot
from legal_network_analyzer.errors import ConfigError
from legal_network_analyzer.models import (
    CiteKey, CiteKeySet, ElementKind, ExtractionReport, ReferenceSpan, StructuralElement,
)
from legal_network_analyzer.refextract import align_keys, extract_all, find_references, load_profile, parse_span

US = load_profile("us")
DE = load_profile("de")


def element(text: str, element_id: str = "e1") -> StructuralElement:
    return StructuralElement(id=element_id, kind=ElementKind.SUBSEQITEM, level=3, text=text)


def keys_of(text: str, profile, context: str):
    spans = find_references(element(text), profile)
    assert len(spans) == 1
    return [(k.context, k.number) for k in parse_span(spans[0], profile, context).keys]


def test_us_span():
    text = "An owner of eligible low-income housing shall act in accordance with section 4114 of this title."
    spans = find_references(element(text), US)
    assert [s.raw for s in spans] == ["section 4114 of this title"]
    assert text[spans[0].start:spans[0].end] == spans[0].raw


def test_no_citation_no_span():
    assert find_references(element("The legal capacity of a human being begins on the completion of birth."), DE) == []


def test_german_sample_yields_two_spans():
    spans = find_references(element("The provisions of § 26 (2) sentence 1, § 27 (1) and (3) apply accordingly."), DE)
    assert [s.raw for s in spans] == ["§ 26 (2) sentence 1", "§ 27 (1) and (3)"]


@pytest.mark.parametrize("text, profile, context, expected", [
    ("section 1437f(c) of title 42", US, "12", [("42", "1437f")]),
    ("paragraph (1) or (2) of section 4104(b) of this title", US, "12", [("12", "4104")]),
    ("sections 32, 33 and 38", DE, "BGB", [("BGB", "32"), ("BGB", "33"), ("BGB", "38")]),
    ("sections 1811 through 1814 of this title", US, "12", [("12", "1811"), ("12", "1812"), ("12", "1813"), ("12", "1814")]),
    ("§§ 5 bis 7", DE, "BGB", [("BGB", "5"), ("BGB", "6"), ("BGB", "7")]),
])
def test_parse_expands_enumerations(text, profile, context, expected):
    assert keys_of(text, profile, context) == expected


def test_unknown_law_is_counted_and_dropped():
    index_profile = US.model_copy(update={"law_name_index": {"12": "12"}})
    span = find_references(element("section 1401 of title 26"), index_profile)[0]
    report = ExtractionReport()
    assert parse_span(span, index_profile, "12", report) is None
    assert report.unresolved == {"unknown-law": 1}


def test_align_counts_missing_targets():
    tree = document('<document date="1990-01-01" key="12"><seqitem citekey="4114">x</seqitem></document>')
    snapshot = build_snapshot("us", FIXED_DATE, [tree])
    span = ReferenceSpan(element_id="12:0", start=0, end=1, raw="x")
    report = ExtractionReport()
    found = align_keys(
        CiteKeySet(span=span, keys=[CiteKey(context="12", number="4114"), CiteKey(context="12", number="9999")]),
        snapshot, report,
    )
    assert [(r.target_id, r.key) for r in found] == [("12:1", "12:4114")]
    assert report.unresolved == {"missing-target": 1}


def test_duplicate_citations_keep_multiplicity():
    tree = document(
        '<document date="1990-01-01" key="12"><seqitem citekey="4113">An owner shall act in accordance with section 4114 of this title, '
        'and shall certify compliance with section 4114 of this title.</seqitem>'
        '<seqitem citekey="4114">Target.</seqitem></document>'
    )
    references, report = extract_all(build_snapshot("us", FIXED_DATE, [tree]), US)
    assert len(references) == 2
    assert {r.key for r in references} == {"12:4114"}
    assert report.resolved == 2 and report.unresolved_total == 0


def test_empty_snapshot():
    references, report = extract_all(build_snapshot("us", FIXED_DATE, []), US)
    assert references == []
    assert (report.spans, report.keys, report.resolved, report.unresolved_total) == (0, 0, 0, 0)


def test_minicorpus_references(mini_series):
    expected = {
        ("t12-s1812-a", "t12-s1813"),
        ("t12-s1813-b", "t42-s301"),
        ("t42-s302-a", "t12-s1811"),
    }
    assert {(r.source_id, r.target_id) for r in mini_series[0].references} == expected
    assert len(mini_series[1].references) == 4
    assert len(mini_series[2].references) == 6
    listed = {(r.source_id, r.target_id) for r in mini_series[2].references}
    assert {("t12-s1831-a", "t12-s1811"), ("t12-s1831-a", "t12-s1812")} <= listed


def test_minicorpus_report(mini_series):
    _, report = extract_all(mini_series[0], US)
    assert report.resolved == 3
    assert report.unresolved == {"unknown-law": 1}


def test_extraction_is_deterministic_across_workers(mini_series):
    sequential = extract_all(mini_series[2], US, n_jobs=1)
    parallel = extract_all(mini_series[2], US, n_jobs=2)
    assert sequential[0] == parallel[0]
    assert sequential[1] == parallel[1]


def test_resolved_targets_exist(mini_series):
    for snapshot in mini_series:
        targets = set(snapshot.citekey_index.values())
        assert all(r.target_id in targets for r in snapshot.references)


def test_injected_citations_are_found():
    rng = random.Random(11)
    filler = ["the", "owner", "shall", "report", "annually", "to", "board", "under", "rules"]
    for _ in range(20):
        words, planted = [], 0
        for _ in range(rng.randint(3, 8)):
            words += rng.choices(filler, k=rng.randint(2, 6))
            if rng.random() < 0.5:
                words += ["section", str(rng.randint(1, 9999)), "of", "this", "title"]
                planted += 1
        text = " ".join(words)
        spans = find_references(element(text), US)
        assert len(spans) == planted
        for before, after in zip(spans, spans[1:]):
            assert before.end <= after.start


def test_unknown_profile():
    with pytest.raises(ConfigError):
        load_profile("fr")


def test_profile_with_unknown_fragment(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "broken", "patterns": ["<NOPE> <NUM>"], "fragments": {"NUM": "\\\\d+"}}')
    with pytest.raises(ConfigError):
        load_profile(path)
