"""atomech - Config Loader

Reads a TOML laboratory config ([laser] [atoms] [mechanics] [geometry]
[conventions], optional [search]) into PhysicalParams.

Resolution order:
1. explicit path
2. environment variable ATOMECH_CONFIG
3. packaged example (configs/zipper.toml)

Unlike runtime settings, a broken config never falls back to defaults: a
simulation run on the wrong parameters is worse than no run.
"""

from __future__ import annotations

import hashlib
import logging
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 fallback with the same API
    import tomli as tomllib
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from atomech.errors import ConfigError
from atomech.params.models import PhysicalParams

logger = logging.getLogger(__name__)

CONFIGS_DIR = Path(__file__).resolve().parent.parent / "configs"
DEFAULT_CONFIG_PATH = CONFIGS_DIR / "zipper.toml"
ENV_CONFIG_PATH = "ATOMECH_CONFIG"


def example_config(name: str) -> Path:
    """Path of a packaged example config ("zipper" or "mim")."""
    path = CONFIGS_DIR / f"{name}.toml"
    if not path.exists():
        raise ConfigError(f"no packaged example config named {name!r}", path=str(path))
    return path


def resolve_config_path(path: Optional[Path] = None) -> Path:
    if path is not None:
        return Path(path)
    env_path = os.environ.get(ENV_CONFIG_PATH)
    if env_path:
        return Path(env_path)
    return DEFAULT_CONFIG_PATH


def config_sha256(path: Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def parse_params(data: dict, source: str = "<memory>") -> PhysicalParams:
    """Validate a decoded config mapping."""
    try:
        return PhysicalParams.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"])
        raise ConfigError(first["msg"], path=source, field=field) from e


def load_physical_params(path: Optional[Path] = None) -> PhysicalParams:
    """Load and validate a TOML config.

    Raises:
        ConfigError: file missing, not TOML, or failing validation
    """
    path = resolve_config_path(path)
    if not path.exists():
        raise ConfigError("config file not found", path=str(path))
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot read config: {e}", path=str(path)) from e

    params = parse_params(data, source=str(path))
    logger.info("config loaded from %s", path)
    return params


# process-wide cache keyed by resolved path
_cached: dict[Path, PhysicalParams] = {}


def get_params(path: Optional[Path] = None, force_reload: bool = False) -> PhysicalParams:
    """Cached load_physical_params."""
    key = resolve_config_path(path).resolve()
    if force_reload or key not in _cached:
        _cached[key] = load_physical_params(key)
    return _cached[key]


def clear_params_cache() -> None:
    """Drop cached configs (tests)."""
    _cached.clear()
