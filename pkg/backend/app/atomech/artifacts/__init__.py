"""atomech - Artifacts"""

from atomech.artifacts.store import (
    ArtifactWriter,
    manifest_path_for,
    read_json,
    write_csv_atomic,
    write_json_atomic,
)

__all__ = [
    "ArtifactWriter",
    "manifest_path_for",
    "read_json",
    "write_csv_atomic",
    "write_json_atomic",
]
