"""atomech - Figures of Merit

Cooperativity, the stability inequality of the sympathetic-cooling setup, and
the internal-vs-motional coupling comparison.
"""

from __future__ import annotations

import math
from enum import Enum

from atomech.constants import HBAR
from atomech.params.models import DerivedQuantities


class StabilityVerdict(str, Enum):
    STABLE = "Stable"
    MARGINAL = "Marginal"
    UNSTABLE = "Unstable"


def cooperativity(g_eff: float, gamma_m_tot: float, gamma_at_tot: float) -> float:
    """4 g_eff^2 / (gamma_m_tot gamma_at_tot)."""
    denominator = gamma_m_tot * gamma_at_tot
    if denominator <= 0:
        raise ValueError("cooperativity needs strictly positive decoherence rates")
    return 4.0 * g_eff * g_eff / denominator


def stability_margin(g_eff: float, omega_m: float, gamma_at_tot: float) -> float:
    """Relative distance (lhs - 4 g_eff^2) / lhs from the stability boundary."""
    if omega_m <= 0:
        raise ValueError(f"omega_m must be > 0, got {omega_m}")
    lhs = gamma_at_tot**2 + 4.0 * omega_m**2
    return (lhs - 4.0 * g_eff**2) / lhs


def stability_inequality(
    g_eff: float,
    omega_m: float,
    gamma_at_tot: float,
    band: float = 1e-9,
) -> StabilityVerdict:
    """Stable iff gamma_at_tot^2 + 4 omega_m^2 > 4 g_eff^2.

    Points within the relative ``band`` of equality are Marginal.
    """
    margin = stability_margin(g_eff, omega_m, gamma_at_tot)
    if abs(margin) <= band:
        return StabilityVerdict.MARGINAL
    return StabilityVerdict.STABLE if margin > 0 else StabilityVerdict.UNSTABLE


def critical_coupling(omega_m: float, gamma_at_tot: float) -> float:
    """g_eff at which the stability inequality becomes an equality."""
    return math.sqrt(omega_m**2 + 0.25 * gamma_at_tot**2)


def motional_comparison(d: DerivedQuantities, omega_at: float, atom_mass: float) -> float:
    """g_eff / g_com = 1 / eta_at, eta_at = k_L sqrt(hbar / 2 m omega_at)."""
    k_L = d.k_L
    if k_L <= 0 or omega_at <= 0 or atom_mass <= 0:
        raise ValueError("motional comparison needs positive k_L, omega_at and mass")
    ell_at = math.sqrt(HBAR / (2.0 * atom_mass * omega_at))
    return 1.0 / (k_L * ell_at)
