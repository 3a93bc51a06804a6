"""atomech - Decoherence Rates"""

from __future__ import annotations

from atomech.constants import BOLTZMANN, HBAR
from atomech.params.models import MechParams


def gamma_m_diff(g_m: float) -> float:
    """Light-induced mechanical diffusion 2 g_m^2."""
    if g_m < 0:
        raise ValueError(f"g_m must be >= 0, got {g_m}")
    return 2.0 * g_m * g_m


def gamma_at_diff(Gamma: float, Omega: float, Delta: float) -> float:
    """Single-atom scattering rate Gamma Omega^2 / (Gamma^2 + 4 Delta^2 + 2 Omega^2)."""
    if Gamma <= 0:
        raise ValueError(f"Gamma must be > 0, got {Gamma}")
    return Gamma * Omega**2 / (Gamma**2 + 4.0 * Delta**2 + 2.0 * Omega**2)


def gamma_m_th(mech: MechParams, power_W: float) -> float:
    """Thermal decoherence k_B (T0 + T_eff) / (hbar Q), T_eff = (dT/P) * P."""
    t_eff = mech.heating_dT_per_W * power_W
    return BOLTZMANN * (mech.bath_T0 + t_eff) / (HBAR * mech.quality_Q)
