"""atomech - Output Schemas

JSON Schema files for every JSON artifact the CLI writes, and validation
helpers. Payloads carry ``schema_version``; a breaking change bumps it and
the file suffix.
"""

from __future__ import annotations

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from atomech.errors import AtomechError

logger = logging.getLogger(__name__)

SCHEMAS_DIR = Path(__file__).parent
SCHEMA_VERSION = "1.0.0"
SCHEMA_NAMES = ("rates", "steady_state", "cool_curve", "optimize", "verification")


class SchemaValidationError(AtomechError):
    """Artifact payload does not match its declared schema"""


def schema_path(name: str) -> Path:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}; expected one of {SCHEMA_NAMES}")
    return SCHEMAS_DIR / f"{name}.v1.schema.json"


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict[str, Any]:
    with open(schema_path(name), "r", encoding="utf-8") as f:
        return json.load(f)


def validation_errors(payload: dict[str, Any], name: str) -> list[str]:
    validator = Draft202012Validator(load_schema(name))
    return [f"{e.message} at {list(e.path)}" for e in validator.iter_errors(payload)]


def validate_payload(payload: dict[str, Any], name: str) -> None:
    """Raises SchemaValidationError listing every violation."""
    errors = validation_errors(payload, name)
    if errors:
        raise SchemaValidationError(f"{name} payload invalid: " + "; ".join(errors))


__all__ = [
    "SCHEMA_NAMES",
    "SCHEMA_VERSION",
    "SCHEMAS_DIR",
    "SchemaValidationError",
    "load_schema",
    "schema_path",
    "validate_payload",
    "validation_errors",
]
