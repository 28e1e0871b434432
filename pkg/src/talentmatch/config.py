"""Service configuration: file, environment, defaults (in that order
of increasing precedence for the environment overrides).

Config file is JSON:

    {
      "host": "127.0.0.1",
      "port": 8000,
      "storage_dir": "./data",
      "weights": {"skills": 0.40, "personality": 0.20, "salary": 0.15,
                  "location": 0.10, "employment": 0.05, "age": 0.05,
                  "gender": 0.05},
      "quiz_bank": "./quiz_bank.json",
      "ui_dir": "./frontend/dist",
      "as_of": "2026-01-01"
    }

Environment variables: TALENTMATCH_HOST, TALENTMATCH_PORT,
TALENTMATCH_STORAGE_DIR, TALENTMATCH_WEIGHTS_FILE (path to a JSON file
holding the seven weights), TALENTMATCH_QUIZ_BANK, TALENTMATCH_UI_DIR.
A weights file must name all seven criteria; there is no partial
override because the weights must still sum to 1.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Mapping, Optional

from .matching import MatchWeights


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    storage_dir: Optional[str] = None  # None -> in-memory store
    weights: MatchWeights = field(default_factory=MatchWeights)
    quiz_bank_path: Optional[str] = None  # None -> packaged bank
    ui_dir: Optional[str] = None
    as_of: Optional[date] = None  # None -> today, evaluated per request


def load_weights_file(path) -> MatchWeights:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read weights file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"weights file is not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise ConfigError("weights file must hold a JSON object")
    return MatchWeights.from_mapping(doc)


def load_config(path=None, env: Optional[Mapping[str, str]] = None) -> ServiceConfig:
    env = os.environ if env is None else env
    doc: dict = {}
    if path is not None:
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(doc) - {
            "host", "port", "storage_dir", "weights", "quiz_bank", "ui_dir", "as_of",
        }
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    host = env.get("TALENTMATCH_HOST", doc.get("host", "127.0.0.1"))
    try:
        port = int(env.get("TALENTMATCH_PORT", doc.get("port", 8000)))
    except ValueError as exc:
        raise ConfigError("port must be an integer") from exc
    storage_dir = env.get("TALENTMATCH_STORAGE_DIR", doc.get("storage_dir"))
    quiz_bank = env.get("TALENTMATCH_QUIZ_BANK", doc.get("quiz_bank"))
    ui_dir = env.get("TALENTMATCH_UI_DIR", doc.get("ui_dir"))

    weights = MatchWeights()
    if "weights" in doc:
        if not isinstance(doc["weights"], Mapping):
            raise ConfigError("config key 'weights' must be an object")
        weights = MatchWeights.from_mapping(doc["weights"])
    weights_file = env.get("TALENTMATCH_WEIGHTS_FILE")
    if weights_file:
        weights = load_weights_file(weights_file)

    as_of: Optional[date] = None
    if doc.get("as_of") is not None:
        try:
            as_of = date.fromisoformat(doc["as_of"])
        except (TypeError, ValueError) as exc:
            raise ConfigError("as_of must be a YYYY-MM-DD date") from exc

    return ServiceConfig(
        host=host,
        port=port,
        storage_dir=storage_dir,
        weights=weights,
        quiz_bank_path=quiz_bank,
        ui_dir=ui_dir,
        as_of=as_of,
    )
