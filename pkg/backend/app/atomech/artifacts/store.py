"""atomech - Artifact Store

Every file is written to a temporary sibling and moved into place with
os.replace, so a failed run leaves no partial artifact. JSON goes through
orjson with sorted keys; non-finite floats become null.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import orjson

from atomech.governance.repro import RunManifest
from atomech.schemas import SCHEMA_VERSION, validate_payload

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY


def _atomic_write_bytes(path: Path, data: bytes) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def dumps(payload: Any) -> bytes:
    return orjson.dumps(payload, option=JSON_OPTIONS) + b"\n"


def write_json_atomic(path: Path, payload: dict[str, Any], schema: Optional[str] = None) -> Path:
    """Write ``payload`` with ``schema_version`` embedded; validate first when a schema is named."""
    payload = {**payload, "schema_version": SCHEMA_VERSION}
    if schema is not None:
        # round-trip so numpy scalars and NaN look as they will on disk
        validate_payload(orjson.loads(dumps(payload)), schema)
    return _atomic_write_bytes(path, dumps(payload))


def write_csv_atomic(path: Path, rows: Iterable[dict[str, Any]], fieldnames: Sequence[str]) -> Path:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in fieldnames})
    return _atomic_write_bytes(path, buf.getvalue().encode("utf-8"))


def read_json(path: Path) -> Any:
    return orjson.loads(path.read_bytes())


def manifest_path_for(path: Path) -> Path:
    return path.with_name(f"{path.stem}.manifest.json")


class ArtifactWriter:
    """Writes artifacts of one run into ``out_dir``, each with its manifest sidecar."""

    def __init__(self, out_dir: Path, manifest: RunManifest):
        self.out_dir = Path(out_dir)
        self.manifest = manifest
        self.written: list[Path] = []

    def _sidecar(self, path: Path) -> None:
        data = self.manifest.model_dump(mode="json")
        _atomic_write_bytes(manifest_path_for(path), dumps(data))

    def json(self, name: str, payload: dict[str, Any], schema: Optional[str] = None) -> Path:
        path = write_json_atomic(self.out_dir / name, payload, schema)
        self._sidecar(path)
        self.written.append(path)
        logger.info("wrote %s", path)
        return path

    def csv(self, name: str, rows: Iterable[dict[str, Any]], fieldnames: Sequence[str]) -> Path:
        path = write_csv_atomic(self.out_dir / name, rows, fieldnames)
        self._sidecar(path)
        self.written.append(path)
        logger.info("wrote %s", path)
        return path

    def text(self, name: str, content: str) -> Path:
        path = _atomic_write_bytes(self.out_dir / name, content.encode("utf-8"))
        self._sidecar(path)
        self.written.append(path)
        return path
