from pathlib import Path

import pytest

from legal_network_analyzer.config import CACHE_ENV, default_cache_dir, load_config, parse_config, save_config
from legal_network_analyzer.errors import ConfigError
from legal_network_analyzer.main import build_parser, config_from_args, demo_config_path

MINIMAL = """
manifests = ["1994/manifest.json"]
output = "out"

[clustering]
runs = 10
"""


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def test_demo_config():
    config = load_config(demo_config_path())
    assert config.collection == "us-mini"
    assert config.graph.rho == "none"
    assert config.clustering.preferred_n == 3
    assert all(Path(m).is_file() for m in config.manifests)


def test_paths_resolve_against_the_file(tmp_path):
    config = load_config(write(tmp_path / "corpus.toml", MINIMAL))
    assert config.manifests == [str((tmp_path / "1994" / "manifest.json").resolve())]
    assert config.output == str((tmp_path / "out").resolve())
    assert config.clustering.runs == 10
    assert config.clustering.threshold == 0.95
    assert config.graph.rho == "chapter-or-title"


def test_json_round_trip(tmp_path):
    config = load_config(write(tmp_path / "corpus.toml", MINIMAL))
    save_config(config, tmp_path / "saved.json")
    assert load_config(tmp_path / "saved.json") == config
    with pytest.raises(ConfigError):
        save_config(config, tmp_path / "saved.toml")


@pytest.mark.parametrize("name,text", [
    ("unknown.toml", MINIMAL + "\nunknown_key = 1\n"),
    ("range.toml", MINIMAL.replace("runs = 10", "runs = 0")),
    ("rho.toml", MINIMAL + '\n[graph]\nrho = "paragraph"\n'),
    ("broken.toml", "manifests = [\n"),
    ("broken.json", "{"),
    ("corpus.yaml", "manifests: []"),
    ("empty.toml", ""),
])
def test_invalid_configurations(tmp_path, name, text):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path / name, text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.toml")


def test_importer_is_a_source():
    config = parse_config({"importer": "synthetic", "importer_options": {"years": 2}})
    assert config.manifests == []
    with pytest.raises(ConfigError):
        parse_config({"gamma": 2.0, "importer": "synthetic"})


def test_cache_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_dir() == str(tmp_path)
    monkeypatch.delenv(CACHE_ENV)
    assert default_cache_dir().endswith("legal-network-analyzer")


def test_command_line_overrides(tmp_path):
    args = build_parser().parse_args([
        "cluster", "--demo", "--runs", "5", "--seed-base", "7", "--jobs", "2", "-o", str(tmp_path / "b"),
    ])
    config = config_from_args(args)
    assert (config.clustering.runs, config.clustering.seed_base, config.n_jobs) == (5, 7, 2)
    assert config.clustering.preferred_n == 3
    assert config.output == str((tmp_path / "b").resolve())


def test_us_profile_clusters_on_references_only():
    assert parse_config({"importer": "synthetic"}).graph.sequence_arcs is False
    assert parse_config({"importer": "synthetic", "profile": "de"}).graph.sequence_arcs is True
    explicit = parse_config({"importer": "synthetic", "graph": {"sequence_arcs": True}})
    assert explicit.graph.sequence_arcs is True
    assert load_config(demo_config_path()).graph.sequence_arcs is False


def test_weight_decay_setting():
    config = parse_config({"importer": "synthetic", "graph": {"decay": 1.0}})
    assert config.graph.weight_function()(4) == 0.25
    assert parse_config({"importer": "synthetic"}).graph.weight_function()(4) == 0.5
    with pytest.raises(ConfigError):
        parse_config({"importer": "synthetic", "graph": {"decay": 0}})
