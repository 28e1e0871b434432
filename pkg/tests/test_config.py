"""Config file and environment handling."""

from __future__ import annotations

import json

import pytest

from talentmatch.config import ConfigError, ServiceConfig, load_config, load_weights_file
from talentmatch.matching import InvalidWeightsError, MatchWeights


def test_defaults():
    config = load_config(None, env={})
    assert config == ServiceConfig()
    assert config.host == "127.0.0.1"
    assert config.port == 8000
    assert config.storage_dir is None
    assert config.weights == MatchWeights()


def test_file_values(tmp_path):
    path = tmp_path / "service.json"
    path.write_text(json.dumps({
        "host": "0.0.0.0",
        "port": 9100,
        "storage_dir": str(tmp_path / "data"),
        "weights": {"skills": 0.40, "personality": 0.20, "salary": 0.15,
                    "location": 0.10, "employment": 0.05, "age": 0.05,
                    "gender": 0.05},
        "as_of": "2026-01-01",
    }), encoding="utf-8")
    config = load_config(path, env={})
    assert config.port == 9100
    assert config.as_of is not None and config.as_of.year == 2026


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "service.json"
    path.write_text('{"hots": "0.0.0.0"}', encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path, env={})


def test_env_overrides_file(tmp_path):
    path = tmp_path / "service.json"
    path.write_text('{"port": 9100}', encoding="utf-8")
    config = load_config(path, env={"TALENTMATCH_PORT": "9200"})
    assert config.port == 9200


def test_weights_file_must_cover_all_criteria(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text('{"skills": 1.0}', encoding="utf-8")
    with pytest.raises(InvalidWeightsError):
        load_weights_file(path)


def test_weights_file_happy(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text(json.dumps(MatchWeights().as_mapping()), encoding="utf-8")
    assert load_weights_file(path) == MatchWeights()
