"""atomech - Coupling Constants

Closed-form light-mediated couplings. Every atom-side formula is written in
terms of the Rabi frequencies carried by DerivedQuantities, so a Rabi
convention chosen in the config propagates to all of them at once.

Units: g_m and g_at are in s^-1/2 (their squares are rates), g_eff in rad/s.
"""

from __future__ import annotations

import math

from atomech.params.models import DerivedQuantities

_SQRT_PI = math.sqrt(math.pi)


def _require_detuning(Delta: float) -> None:
    if Delta == 0:
        raise ValueError("detuning Delta must be non-zero")


def g_m_mirror(d: DerivedQuantities) -> float:
    """Ideal mirror: alpha k_L ell_m / sqrt(pi)."""
    return d.alpha * d.k_L * d.ell_m / _SQRT_PI


def g_m_optomech(d: DerivedQuantities, g0: float, kappa: float) -> float:
    """Generic optomechanical device: (2 alpha / sqrt(pi)) (g0 / kappa)."""
    if kappa <= 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    return 2.0 * d.alpha / _SQRT_PI * (g0 / kappa)


def g_m_mim(d: DerivedQuantities, r_m: float, finesse: float) -> float:
    """Membrane in the middle: alpha (k_L ell_m / sqrt(2 pi)) 2|r_m| (2F/pi)."""
    if not 0.0 <= r_m <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {r_m}")
    if finesse < 1.0:
        raise ValueError(f"finesse must be >= 1, got {finesse}")
    return d.alpha * d.k_L * d.ell_m / math.sqrt(2.0 * math.pi) * 2.0 * abs(r_m) * (
        2.0 * finesse / math.pi
    )


def g_at(d: DerivedQuantities, Delta: float) -> float:
    """Atom-field coupling magnitude (Omega+ Omega- / (alpha |Delta|)) sqrt(pi/8).

    Equal to mu+ mu- alpha E^2 sqrt(pi/8) / (hbar^2 |Delta|) for unhalved Rabi
    frequencies.
    """
    _require_detuning(Delta)
    if d.alpha == 0.0:
        return 0.0
    return d.rabi_plus * d.rabi_minus / (d.alpha * abs(Delta)) * math.sqrt(math.pi / 8.0)


def g_eff(d: DerivedQuantities, g_m: float, g_at: float) -> float:
    """Effective atom-mechanics coupling 2 sqrt(N) g_at g_m."""
    return 2.0 * math.sqrt(d.atom_number_N) * g_at * g_m


def g_eff_direct(d: DerivedQuantities, Delta: float) -> float:
    """Second route for the ideal mirror: sqrt(N/2) (Omega+ Omega- / |Delta|) k_L ell_m."""
    _require_detuning(Delta)
    return math.sqrt(d.atom_number_N / 2.0) * d.rabi_plus * d.rabi_minus / abs(Delta) * (
        d.k_L * d.ell_m
    )


def omega_OL(d: DerivedQuantities, Delta: float) -> float:
    """Light shift of the lattice, Omega-^2 / |Delta| (magnitude; sign follows Delta)."""
    _require_detuning(Delta)
    return d.rabi_minus**2 / abs(Delta)


def required_omega_at(omega_m: float, omega_ol_signed: float) -> float:
    """Ground-state splitting that puts the spin wave on resonance:
    omega_at + Omega_OL / 2 = omega_m."""
    return omega_m - 0.5 * omega_ol_signed
