import json
from pathlib import Path

import pytest

import models
from errors import InvalidData

SCHEMAS = sorted(Path(__file__).parent.joinpath("schemas").glob("*.json"))


def load(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.mark.parametrize("path", [p for p in SCHEMAS if p.stem != "error"], ids=lambda p: p.stem)
def test_schema_matches_model(path):
    schema = load(path)
    model = getattr(models, schema["title"])
    assert set(schema["properties"]) == set(model.model_fields)
    required = {name for name, info in model.model_fields.items() if info.is_required()}
    assert set(schema["required"]) == required


def test_error_schema_matches_payload():
    schema = load(Path(__file__).parent / "schemas" / "error.json")
    payload = InvalidData("x", {"k": 1}).to_dict()
    assert set(payload) == set(schema["required"]) == set(schema["properties"])
