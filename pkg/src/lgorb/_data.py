"""Location of the JSON fixtures (overridable with LGORB_DATA)."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import CorruptFixture

SCHEMA_VERSION = 1


def data_dir() -> Path:
    env = os.environ.get("LGORB_DATA")
    return Path(env) if env else Path(__file__).with_name("data")


def load_json(name: str) -> dict:
    path = data_dir() / name
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptFixture(f"cannot read fixture {path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise CorruptFixture(f"fixture {path} has an unsupported schema version")
    return data
