"""atomech - RateSet

All derived frequencies and rates of the model, composed from a
PhysicalParams. Rates are stored as non-negative magnitudes; the sign of the
detuning is kept separately in ``detuning_sign``.
"""

from __future__ import annotations

import logging
import math

from pydantic import BaseModel, ConfigDict, Field, computed_field

from atomech.params.derive import derive_from
from atomech.params.models import DerivedQuantities, MechVariant, MimDiffusion, PhysicalParams
from atomech.rates.couplings import (
    g_at as g_at_formula,
    g_eff as g_eff_formula,
    g_m_mim,
    g_m_mirror,
    g_m_optomech,
    omega_OL as omega_ol_formula,
)
from atomech.rates.decoherence import gamma_at_diff, gamma_m_diff, gamma_m_th
from atomech.rates.merit import cooperativity

logger = logging.getLogger(__name__)

# fields expressed as angular frequencies / rates; the rest are dimensionless
# or s^-1/2 couplings
FREQUENCY_FIELDS = (
    "g_eff",
    "gamma_m_diff",
    "gamma_at_diff",
    "gamma_m_th",
    "gamma_at_cool",
    "omega_OL",
    "omega_m",
    "gamma_m",
)


class RateSet(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    g_m: float = Field(default=0.0, ge=0, description="mirror-light coupling (s^-1/2)")
    g_at: float = Field(default=0.0, ge=0, description="atom-light coupling (s^-1/2)")
    g_eff: float = Field(default=0.0, ge=0, description="effective coupling (rad/s)")
    gamma_m_diff: float = Field(default=0.0, ge=0)
    gamma_at_diff: float = Field(default=0.0, ge=0)
    gamma_m_th: float = Field(default=0.0, ge=0)
    gamma_at_cool: float = Field(default=0.0, ge=0)
    omega_OL: float = Field(default=0.0, ge=0)
    omega_m: float = Field(default=1.0, gt=0)
    gamma_m: float = Field(default=0.0, ge=0, description="intrinsic damping omega_m / Q")
    detuning_sign: int = Field(default=1)

    @property
    def gamma_m_tot(self) -> float:
        return self.gamma_m_diff + self.gamma_m_th

    @property
    def gamma_at_tot(self) -> float:
        return self.gamma_at_diff + self.gamma_at_cool

    @property
    def N_m(self) -> float:
        """Bath occupation gamma_m_th / gamma_m (0 without intrinsic damping)."""
        return self.gamma_m_th / self.gamma_m if self.gamma_m > 0 else 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def coop_C0(self) -> float:
        return _safe_cooperativity(self.g_eff, self.gamma_m_tot, self.gamma_at_diff)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def coop_C(self) -> float:
        return _safe_cooperativity(self.g_eff, self.gamma_m_tot, self.gamma_at_tot)


def _safe_cooperativity(g: float, gamma_m_tot: float, gamma_at: float) -> float:
    if gamma_m_tot <= 0 or gamma_at <= 0:
        return math.nan
    return cooperativity(g, gamma_m_tot, gamma_at)


def mechanical_couplings(params: PhysicalParams, d: DerivedQuantities) -> tuple[float, float]:
    """(coherent g_m, g_m feeding the diffusion rate) for the configured variant."""
    mech = params.mechanics
    if mech.variant is MechVariant.IDEAL_MIRROR:
        g = g_m_mirror(d)
        return g, g
    if mech.variant is MechVariant.OPTOMECH_CAVITY:
        assert mech.g0 is not None and mech.kappa is not None
        g = g_m_optomech(d, mech.g0, mech.kappa)
        return g, g
    assert mech.reflectivity_r is not None and mech.finesse_F is not None
    g = g_m_mim(d, mech.reflectivity_r, mech.finesse_F)
    if mech.mim_diffusion is MimDiffusion.CAVITY_LINEWIDTH:
        assert mech.g0 is not None and mech.kappa is not None
        return g, g_m_optomech(d, mech.g0, mech.kappa)
    return g, g


def compute_rates(params: PhysicalParams, d: DerivedQuantities | None = None) -> RateSet:
    """Every rate of the model for one operating point."""
    d = d or derive_from(params)
    laser, atoms, mech = params.laser, params.atoms, params.mechanics
    Delta = laser.detuning_Delta

    g_m, g_m_noise = mechanical_couplings(params, d)
    g_at = g_at_formula(d, Delta)
    rates = RateSet(
        g_m=g_m,
        g_at=g_at,
        g_eff=g_eff_formula(d, g_m, g_at),
        gamma_m_diff=gamma_m_diff(g_m_noise),
        gamma_at_diff=gamma_at_diff(atoms.gamma_spont, d.rabi_minus, Delta),
        gamma_m_th=gamma_m_th(mech, laser.power_W),
        gamma_at_cool=atoms.gamma_at_cool,
        omega_OL=omega_ol_formula(d, Delta),
        omega_m=mech.omega_m,
        gamma_m=mech.omega_m / mech.quality_Q,
        detuning_sign=1 if Delta > 0 else -1,
    )
    logger.debug("rates computed: g_eff=%.4g rad/s C0=%.4g", rates.g_eff, rates.coop_C0)
    return rates


def resonance_mismatch(params: PhysicalParams, rates: RateSet) -> float:
    """omega_at + Omega_OL/2 - omega_m with the signed light shift."""
    omega_ol_signed = rates.detuning_sign * rates.omega_OL
    return params.atoms.omega_at + 0.5 * omega_ol_signed - params.mechanics.omega_m


def strong_coupling_ratios(rates: RateSet) -> tuple[float, float]:
    """(g_eff / gamma_m_tot, g_eff / gamma_at_diff)."""
    r_m = rates.g_eff / rates.gamma_m_tot if rates.gamma_m_tot > 0 else math.inf
    r_at = rates.g_eff / rates.gamma_at_diff if rates.gamma_at_diff > 0 else math.inf
    return r_m, r_at
