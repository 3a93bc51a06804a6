"""atomech - Derived Quantities

alpha^2, field amplitude, Rabi frequencies, zero-point length, atom number, k_L.
"""

from __future__ import annotations

import logging
import math

from atomech.constants import EPSILON_0, HBAR, SPEED_OF_LIGHT
from atomech.params.models import (
    AreaConvention,
    AtomParams,
    Conventions,
    DerivedQuantities,
    GeometryParams,
    LaserParams,
    MechParams,
    PhysicalParams,
)

logger = logging.getLogger(__name__)


def alpha_from_power(laser: LaserParams) -> float:
    """Photon flux alpha^2 = 2 pi P / (hbar omega_L), from P = hbar omega_L alpha^2 / 2 pi."""
    return 2.0 * math.pi * laser.power_W / (HBAR * laser.omega_L)


def field_amplitude(laser: LaserParams, beam_area_convention: AreaConvention) -> float:
    """E_omega = sqrt(hbar omega_L / (pi c eps0 A)) with A from the waist."""
    if laser.waist_w0 <= 0:
        raise ValueError(f"waist_w0 must be > 0, got {laser.waist_w0}")
    area = beam_area_convention.area(laser.waist_w0)
    return math.sqrt(HBAR * laser.omega_L / (math.pi * SPEED_OF_LIGHT * EPSILON_0 * area))


def zero_point_length(mass: float, omega: float) -> float:
    """sqrt(hbar / 2 M omega)."""
    return math.sqrt(HBAR / (2.0 * mass * omega))


def derive_all(
    laser: LaserParams,
    atoms: AtomParams,
    mech: MechParams,
    geometry: GeometryParams | None = None,
    conventions: Conventions | None = None,
) -> DerivedQuantities:
    """Aggregate every single-formula quantity; pure and deterministic.

    The atom number always uses N = rho_A * pi * w0^2 (the ensemble is the
    illuminated disk), independent of the area convention that enters E.
    With ``rabi_halving`` both Rabi frequencies carry a factor 1/2.
    """
    geometry = geometry or GeometryParams()
    conventions = conventions or Conventions()

    alpha_sq = alpha_from_power(laser)
    alpha = math.sqrt(alpha_sq)
    field = field_amplitude(laser, geometry.area_convention)
    rabi_scale = 0.5 if conventions.rabi_halving else 1.0
    rabi_plus = rabi_scale * alpha * field * atoms.dipole_mu_plus / HBAR
    rabi_minus = rabi_scale * alpha * field * atoms.dipole_mu_minus / HBAR

    atom_number = atoms.area_density_rhoA * math.pi * laser.waist_w0**2
    empty = atom_number == 0.0
    if empty:
        logger.warning("area density is zero: no atoms couple (N = 0)")

    return DerivedQuantities(
        alpha_sq=alpha_sq,
        field_amp_E=field,
        rabi_plus=rabi_plus,
        rabi_minus=rabi_minus,
        ell_m=zero_point_length(mech.mass_M, mech.omega_m),
        atom_number_N=atom_number,
        k_L=laser.omega_L / SPEED_OF_LIGHT,
        ensemble_empty=empty,
    )


def derive_from(params: PhysicalParams) -> DerivedQuantities:
    return derive_all(
        params.laser, params.atoms, params.mechanics, params.geometry, params.conventions
    )
