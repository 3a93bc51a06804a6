"""atomech - Run Manifest

Reproducibility metadata written next to every artifact as
``<name>.manifest.json``.

Contents:
- config path and SHA256
- subcommand, flags and convention settings
- tool version, UTC timestamp
- git SHA, Python version, platform, dependency fingerprint
"""

from __future__ import annotations

import hashlib
import logging
import os
import platform
import re
import subprocess
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from atomech import __version__

PACKAGE_DIR = Path(__file__).resolve().parent.parent
# checked in order; a pinned revision wins over the CI commit
SOURCE_SHA_ENV = ("ATOMECH_SOURCE_SHA", "GITHUB_SHA")
_SHA_RE = re.compile(r"^[0-9a-f]{40}$")

logger = logging.getLogger(__name__)


class RunManifest(BaseModel):
    """Reproducibility record of one CLI invocation."""

    subcommand: str = Field(..., description="CLI subcommand")
    config_path: Optional[str] = Field(default=None, description="TOML config that was read")
    config_sha256: Optional[str] = Field(default=None, description="sha256 of the config bytes")
    options: dict[str, Any] = Field(default_factory=dict, description="Flags as parsed")
    conventions: dict[str, Any] = Field(default_factory=dict, description="Area / Rabi conventions in force")
    tool_version: str = Field(default=__version__)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    git_sha: Optional[str] = Field(default=None, description="Commit of the atomech source")
    python_version: str = Field(default_factory=lambda: get_python_version())
    platform_info: str = Field(default_factory=lambda: get_platform_info())
    deps_fingerprint: Optional[str] = Field(default=None, description="sha256 of pyproject.toml")


def _git_head(repo_dir: Path) -> str | None:
    """Commit checked out in the work tree that holds ``repo_dir``."""
    try:
        result = subprocess.run(
            ["git", "-C", str(repo_dir), "rev-parse", "HEAD"],
            capture_output=True,
            text=True,
            timeout=5,
        )
    except (subprocess.SubprocessError, OSError) as e:
        logger.debug("git unavailable for %s: %s", repo_dir, e)
        return None
    if result.returncode != 0:
        logger.debug("%s is not inside a git work tree", repo_dir)
        return None
    return result.stdout.strip()


def get_git_sha(repo_dir: Path | None = None) -> str | None:
    """Revision of the simulator source that produced an artifact.

    ATOMECH_SOURCE_SHA, then GITHUB_SHA, then ``git rev-parse HEAD`` in
    ``repo_dir`` (default: the installed atomech package). Output that is not
    a full hex SHA gives None.
    """
    for var in SOURCE_SHA_ENV:
        sha = os.environ.get(var)
        if sha:
            return sha
    sha = _git_head(repo_dir or PACKAGE_DIR)
    if sha is not None and not _SHA_RE.match(sha):
        logger.debug("ignoring malformed revision %r", sha)
        return None
    if sha is None:
        logger.debug("source revision unknown; manifest git_sha left empty")
    return sha


def get_deps_fingerprint(project_root: Path | None = None) -> str | None:
    path = (project_root or Path.cwd()) / "pyproject.toml"
    if not path.is_file():
        return None
    try:
        return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError:
        return None


def get_platform_info() -> str:
    return f"{platform.system().lower()}-{platform.machine().lower()}"


def get_python_version() -> str:
    return f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"


def build_manifest(
    subcommand: str,
    config_path: Path | None = None,
    config_sha256: str | None = None,
    options: dict[str, Any] | None = None,
    conventions: dict[str, Any] | None = None,
    project_root: Path | None = None,
) -> RunManifest:
    return RunManifest(
        subcommand=subcommand,
        config_path=str(config_path) if config_path else None,
        config_sha256=config_sha256,
        options=options or {},
        conventions=conventions or {},
        git_sha=get_git_sha(project_root),
        deps_fingerprint=get_deps_fingerprint(project_root),
    )
