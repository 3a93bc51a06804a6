"""atomech - Settings

Runtime knobs that are not laboratory parameters. Laboratory inputs live in
TOML files (see atomech.params.loader); everything here can be overridden by
environment variables or a .env file.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Global settings (environment variables / .env override)."""

    model_config = SettingsConfigDict(
        env_prefix="ATOMECH_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ---------- artifacts ----------
    # ATOMECH_ARTIFACTS_DIR
    artifacts_dir: str = "artifacts"

    # ---------- logging ----------
    # ATOMECH_LOG_LEVEL / ATOMECH_LOG_DIR (no file log when unset)
    log_level: str = "INFO"
    log_dir: Optional[str] = None

    # ---------- fock oracle ----------
    # Cap on the Hilbert dimension dim_mech*dim_spin of a truncated space.
    # ATOMECH_HILBERT_CAP
    hilbert_cap: int = Field(default=4096, ge=4)
    # Cap on the dense superoperator dimension (dim_mech*dim_spin)**2.
    # ATOMECH_LIOUVILLE_CAP
    liouville_cap: int = Field(default=4096, ge=16)
    # ATOMECH_BOUNDARY_TOLERANCE
    boundary_tolerance: float = Field(default=1e-4, gt=0)

    # ---------- rates ----------
    # ATOMECH_MARGINAL_BAND
    marginal_band: float = Field(default=1e-9, ge=0)

    # ---------- output ----------
    # ATOMECH_FREQUENCY_UNITS
    frequency_units: Literal["2pi_hz", "radians"] = "2pi_hz"


settings = Settings()
