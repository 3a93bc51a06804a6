"""
Run Manifest Tests

Reproducibility metadata written next to every artifact.
"""

import logging
import os
import subprocess
import sys
from pathlib import Path
from unittest.mock import patch

from atomech import __version__
from atomech.governance.repro import (
    PACKAGE_DIR,
    RunManifest,
    build_manifest,
    get_deps_fingerprint,
    get_git_sha,
    get_platform_info,
    get_python_version,
)


class TestRunManifest:
    """RunManifest model"""

    def test_defaults(self):
        """Tool version, timestamp and interpreter are filled in"""
        m = RunManifest(subcommand="rates")
        assert m.tool_version == __version__
        assert m.created_at.tzinfo is not None
        assert m.python_version == get_python_version()
        assert m.config_path is None
        assert m.options == {}

    def test_json_dump(self):
        """model_dump(mode='json') is serializable as-is"""
        data = RunManifest(subcommand="sweep", options={"gmin": 1.0}).model_dump(mode="json")
        assert data["subcommand"] == "sweep"
        assert isinstance(data["created_at"], str)


class TestGitSha:
    """git SHA lookup"""

    def test_from_github_sha_env(self):
        """GITHUB_SHA wins"""
        with patch.dict(os.environ, {"GITHUB_SHA": "ci-commit-sha-123"}):
            assert get_git_sha() == "ci-commit-sha-123"

    def test_fallback_to_git_command(self, tmp_path):
        """Outside a repository the lookup yields None"""
        with patch.dict(os.environ, {}, clear=True):
            sha = get_git_sha(tmp_path)
        assert sha is None or len(sha) == 40

    def test_git_missing(self):
        """No git binary is not an error"""
        with patch.dict(os.environ, {}, clear=True), \
                patch("atomech.governance.repro.subprocess.run", side_effect=FileNotFoundError):
            assert get_git_sha() is None

    def test_pinned_revision_wins(self):
        """ATOMECH_SOURCE_SHA takes precedence over the CI commit"""
        env = {"ATOMECH_SOURCE_SHA": "a" * 40, "GITHUB_SHA": "b" * 40}
        with patch.dict(os.environ, env, clear=True):
            assert get_git_sha() == "a" * 40

    def test_defaults_to_package_checkout(self):
        """Without a directory git is asked about the atomech source tree"""
        done = subprocess.CompletedProcess([], 0, stdout="c" * 40 + "\n")
        with patch.dict(os.environ, {}, clear=True), \
                patch("atomech.governance.repro.subprocess.run", return_value=done) as run:
            assert get_git_sha() == "c" * 40
        assert run.call_args.args[0][:3] == ["git", "-C", str(PACKAGE_DIR)]

    def test_malformed_revision_dropped(self, caplog):
        """Output that is not a 40-digit hex SHA is not recorded"""
        done = subprocess.CompletedProcess([], 0, stdout="HEAD\n")
        with patch.dict(os.environ, {}, clear=True), \
                patch("atomech.governance.repro.subprocess.run", return_value=done), \
                caplog.at_level(logging.DEBUG, logger="atomech.governance.repro"):
            assert get_git_sha() is None
        assert "malformed revision" in caplog.text

    def test_outside_work_tree_logged(self, tmp_path, caplog):
        """A failed rev-parse is logged at debug level"""
        failed = subprocess.CompletedProcess([], 128, stdout="", stderr="fatal")
        with patch.dict(os.environ, {}, clear=True), \
                patch("atomech.governance.repro.subprocess.run", return_value=failed), \
                caplog.at_level(logging.DEBUG, logger="atomech.governance.repro"):
            assert get_git_sha(tmp_path) is None
        assert "not inside a git work tree" in caplog.text


class TestDepsFingerprint:
    """pyproject hash"""

    def test_hash_of_pyproject(self, tmp_path: Path):
        """sha256 prefix, stable for identical bytes"""
        (tmp_path / "pyproject.toml").write_text("[project]\nname = 'x'\n")
        fp = get_deps_fingerprint(tmp_path)
        assert fp.startswith("sha256:")
        assert fp == get_deps_fingerprint(tmp_path)

    def test_missing_pyproject(self, tmp_path: Path):
        """None when there is nothing to hash"""
        assert get_deps_fingerprint(tmp_path) is None


class TestPlatform:
    """Interpreter and platform strings"""

    def test_python_version(self):
        """major.minor.micro"""
        assert get_python_version() == ".".join(str(x) for x in sys.version_info[:3])

    def test_platform_lowercase(self):
        """system-machine in lower case"""
        info = get_platform_info()
        assert info == info.lower()
        assert "-" in info


class TestBuildManifest:
    """build_manifest"""

    def test_carries_config_and_options(self, tmp_path: Path):
        """Config path, hash, flags and conventions end up in the manifest"""
        (tmp_path / "pyproject.toml").write_text("x")
        m = build_manifest(
            "rates",
            config_path=tmp_path / "zipper.toml",
            config_sha256="sha256:abc",
            options={"radians": False},
            conventions={"rabi_halving": True},
            project_root=tmp_path,
        )
        assert m.config_path.endswith("zipper.toml")
        assert m.config_sha256 == "sha256:abc"
        assert m.options == {"radians": False}
        assert m.conventions == {"rabi_halving": True}
        assert m.deps_fingerprint.startswith("sha256:")
