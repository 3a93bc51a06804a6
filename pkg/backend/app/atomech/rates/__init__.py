"""atomech - Rates

Coupling constants, decoherence rates and figures of merit.
"""

from atomech.rates.couplings import (
    g_at,
    g_eff,
    g_eff_direct,
    g_m_mim,
    g_m_mirror,
    g_m_optomech,
    omega_OL,
    required_omega_at,
)
from atomech.rates.decoherence import gamma_at_diff, gamma_m_diff, gamma_m_th
from atomech.rates.merit import (
    StabilityVerdict,
    cooperativity,
    critical_coupling,
    motional_comparison,
    stability_inequality,
    stability_margin,
)
from atomech.rates.rateset import (
    FREQUENCY_FIELDS,
    RateSet,
    compute_rates,
    mechanical_couplings,
    resonance_mismatch,
    strong_coupling_ratios,
)

__all__ = [
    "FREQUENCY_FIELDS",
    "RateSet",
    "StabilityVerdict",
    "compute_rates",
    "cooperativity",
    "critical_coupling",
    "g_at",
    "g_eff",
    "g_eff_direct",
    "g_m_mim",
    "g_m_mirror",
    "g_m_optomech",
    "gamma_at_diff",
    "gamma_m_diff",
    "gamma_m_th",
    "mechanical_couplings",
    "motional_comparison",
    "omega_OL",
    "required_omega_at",
    "resonance_mismatch",
    "stability_inequality",
    "stability_margin",
    "strong_coupling_ratios",
]
