"""atomech - Laboratory Parameters

Typed, immutable inputs. Frequencies are SI angular frequencies (rad/s); the
config loader also accepts "2π·X Hz" strings (see constants.parse_angular_frequency).
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from atomech.constants import RB87_MASS, TWO_PI, parse_angular_frequency

AngularFrequency = Annotated[float, BeforeValidator(parse_angular_frequency)]

_FROZEN = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class AreaConvention(str, Enum):
    """Beam area A as a function of the waist w0."""

    PI_W0_SQUARED = "PiW0Squared"
    PI_W0_SQUARED_OVER_TWO = "PiW0SquaredOverTwo"

    def area(self, waist_w0: float) -> float:
        full = math.pi * waist_w0 * waist_w0
        return full if self is AreaConvention.PI_W0_SQUARED else 0.5 * full


class MechVariant(str, Enum):
    IDEAL_MIRROR = "IdealMirror"
    OPTOMECH_CAVITY = "OptomechCavity"
    MEMBRANE_IN_MIDDLE = "MembraneInMiddle"


class MimDiffusion(str, Enum):
    """Which coupling feeds the mechanical diffusion rate of a membrane setup."""

    FINESSE = "finesse"
    CAVITY_LINEWIDTH = "cavity_linewidth"


class LaserParams(BaseModel):
    model_config = _FROZEN

    power_W: float = Field(..., ge=0, description="running-wave power")
    omega_L: AngularFrequency = Field(..., gt=0, description="laser angular frequency")
    detuning_Delta: AngularFrequency = Field(..., description="omega_L - omega_es, signed")
    waist_w0: float = Field(..., gt=0, description="beam waist (m)")


class AtomParams(BaseModel):
    model_config = _FROZEN

    dipole_mu_plus: float = Field(..., gt=0, description="C m")
    dipole_mu_minus: float = Field(..., gt=0, description="C m")
    gamma_spont: AngularFrequency = Field(..., gt=0)
    omega_at: AngularFrequency = Field(..., gt=0, description="ground-state splitting")
    area_density_rhoA: float = Field(..., ge=0, description="atoms per m^2")
    atom_mass_kg: float = Field(default=RB87_MASS, gt=0)
    gamma_at_cool: float = Field(default=0.0, ge=0, description="external repump rate (1/s)")


class MechParams(BaseModel):
    model_config = _FROZEN

    variant: MechVariant
    omega_m: AngularFrequency = Field(..., gt=0)
    mass_M: float = Field(..., gt=0)
    quality_Q: float = Field(..., gt=0)
    bath_T0: float = Field(..., ge=0, description="K")
    heating_dT_per_W: float = Field(default=0.0, ge=0, description="K/W")
    g0: Optional[AngularFrequency] = Field(default=None, ge=0)
    kappa: Optional[AngularFrequency] = Field(default=None, gt=0)
    reflectivity_r: Optional[float] = Field(default=None, ge=0, le=1)
    finesse_F: Optional[float] = Field(default=None, ge=1)
    mim_diffusion: MimDiffusion = MimDiffusion.FINESSE

    @model_validator(mode="after")
    def _variant_payload(self) -> "MechParams":
        if self.variant is MechVariant.OPTOMECH_CAVITY:
            if self.g0 is None or self.kappa is None:
                raise ValueError("OptomechCavity requires g0 and kappa")
        if self.variant is MechVariant.MEMBRANE_IN_MIDDLE:
            if self.reflectivity_r is None or self.finesse_F is None:
                raise ValueError("MembraneInMiddle requires reflectivity_r and finesse_F")
            if self.mim_diffusion is MimDiffusion.CAVITY_LINEWIDTH and (
                self.g0 is None or self.kappa is None
            ):
                raise ValueError("mim_diffusion = cavity_linewidth requires g0 and kappa")
        return self


class GeometryParams(BaseModel):
    model_config = _FROZEN

    area_convention: AreaConvention = AreaConvention.PI_W0_SQUARED
    ensemble_length_m: float = Field(default=3e-3, gt=0)


class Conventions(BaseModel):
    model_config = _FROZEN

    rabi_halving: bool = False
    marginal_band: float = Field(default=1e-9, ge=0)


class SearchBounds(BaseModel):
    """Optional [search] section: optimizer bounds and constraint margins."""

    model_config = _FROZEN

    power_W: tuple[float, float] = (1e-8, 1e-5)
    detuning_Delta: tuple[AngularFrequency, AngularFrequency] = (TWO_PI * 5e6, TWO_PI * 500e6)
    waist_w0: tuple[float, float] = (20e-6, 200e-6)
    adiabatic_margin: float = Field(default=1.0, ge=1)
    saturation_cap: float = Field(default=0.9, gt=0, lt=1)
    rwa_margin: float = Field(default=4.0, ge=1)
    objective: str = "MaxC0"


class PhysicalParams(BaseModel):
    """Everything a computation needs, one TOML file's worth."""

    model_config = _FROZEN

    laser: LaserParams
    atoms: AtomParams
    mechanics: MechParams
    geometry: GeometryParams = GeometryParams()
    conventions: Conventions = Conventions()
    search: Optional[SearchBounds] = None

    def with_point(self, power_W: float, detuning_Delta: float, waist_w0: float) -> "PhysicalParams":
        """Copy with a new (P, Delta, w0) operating point."""
        laser = self.laser.model_copy(
            update={"power_W": power_W, "detuning_Delta": detuning_Delta, "waist_w0": waist_w0}
        )
        return self.model_copy(update={"laser": laser})


class DerivedQuantities(BaseModel):
    """Single quantities every rate formula consumes."""

    model_config = _FROZEN

    alpha_sq: float = Field(..., ge=0)
    field_amp_E: float = Field(..., ge=0)
    rabi_plus: float = Field(..., ge=0)
    rabi_minus: float = Field(..., ge=0)
    ell_m: float = Field(..., ge=0)
    atom_number_N: float = Field(..., ge=0)
    k_L: float = Field(..., ge=0)
    ensemble_empty: bool = False

    @property
    def alpha(self) -> float:
        return self.alpha_sq ** 0.5
