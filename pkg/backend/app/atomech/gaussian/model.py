"""atomech - Gaussian Model

Moment representation of the effective two-mode master equation.

Quadrature vector r = (X_m, P_m, X_s, P_s) with [X, P] = i, so the vacuum
variance is 1/2. For the generator

    d rho/dt = -i[H, rho] + gamma_diff D[X_m] + gamma_s D[S]
               + gamma_m (N_m + 1) D[a_m] + gamma_m N_m D[a_m^dag]

the adjoint equations close on first and second moments:

    d<r>/dt = A <r>,    d sigma/dt = A sigma + sigma A^T + D

Jump-operator contributions (derived from the adjoint Lindbladian):

    D[X_m], rate g:        D_PmPm += g                   (no drift)
    D[S], rate g:          A_ss -= g/2 * 1,  D_ss += g/2 * 1
    thermal bath, gamma:   A_mm -= gamma/2 * 1,  D_mm += gamma (2 N_m + 1)/2 * 1

The rotating-wave model works in the frame rotating at omega_m; there the
Hermitian jump X_m averages to (D[X_m] + D[P_m])/2, i.e. g/2 on both
mechanical diagonals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict

from atomech.rates.rateset import RateSet

# symplectic form for (X_m, P_m, X_s, P_s)
SYMPLECTIC = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
XM, PM, XS, PS = range(4)


class HamiltonianVariant(str, Enum):
    FULL_QUADRATURE = "FullQuadrature"
    BEAMSPLITTER_RWA = "BeamsplitterRWA"


class Mode(str, Enum):
    MECHANICS = "Mechanics"
    SPIN = "Spin"

    @property
    def indices(self) -> tuple[int, int]:
        return (XM, PM) if self is Mode.MECHANICS else (XS, PS)


class HamiltonianChoice(BaseModel):
    """Which effective Hamiltonian, and the residual spin detuning."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    variant: HamiltonianVariant = HamiltonianVariant.FULL_QUADRATURE
    delta_resonance: float = 0.0

    def require_valid(self, rates: RateSet) -> None:
        """The rotating-wave form is only admitted below g_eff = omega_m."""
        if self.variant is HamiltonianVariant.BEAMSPLITTER_RWA and rates.g_eff >= rates.omega_m:
            raise ValueError(
                f"BeamsplitterRWA needs g_eff < omega_m (g_eff={rates.g_eff:.4g}, "
                f"omega_m={rates.omega_m:.4g})"
            )


@dataclass(frozen=True)
class GaussianModel:
    drift_A: np.ndarray
    diffusion_D: np.ndarray

    def __post_init__(self) -> None:
        A = np.array(self.drift_A, dtype=float)
        D = np.array(self.diffusion_D, dtype=float)
        if A.shape != (4, 4) or D.shape != (4, 4):
            raise ValueError("drift and diffusion must be 4x4")
        if not np.allclose(D, D.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(D).max())):
            raise ValueError("diffusion matrix must be symmetric")
        scale = np.linalg.norm(D)
        if scale > 0 and np.linalg.eigvalsh(D).min() < -1e-12 * scale:
            raise ValueError("diffusion matrix must be positive semidefinite")
        A.setflags(write=False)
        D.setflags(write=False)
        object.__setattr__(self, "drift_A", A)
        object.__setattr__(self, "diffusion_D", D)


@dataclass(frozen=True)
class MomentState:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.array(self.mean, dtype=float).reshape(4)
        cov = np.array(self.cov, dtype=float).reshape(4, 4)
        cov = 0.5 * (cov + cov.T)
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @classmethod
    def vacuum(cls) -> "MomentState":
        return cls(np.zeros(4), 0.5 * np.eye(4))

    @classmethod
    def thermal(cls, n_mech: float, n_spin: float = 0.0) -> "MomentState":
        return cls(np.zeros(4), np.diag([n_mech + 0.5] * 2 + [n_spin + 0.5] * 2))


def build_model(h: HamiltonianChoice, rates: RateSet, N_m: float | None = None) -> GaussianModel:
    """Drift and diffusion matrices for the chosen Hamiltonian and rate set."""
    N_m = rates.N_m if N_m is None else N_m
    if not math.isfinite(N_m) or N_m < 0:
        raise ValueError(f"bath occupation N_m must be finite and >= 0, got {N_m}")
    h.require_valid(rates)

    g = rates.g_eff
    omega_m = rates.omega_m
    delta = h.delta_resonance
    gamma_s = rates.gamma_at_diff + rates.gamma_at_cool
    gamma_m = rates.gamma_m
    gamma_d = rates.gamma_m_diff
    thermal = 0.5 * gamma_m * (2.0 * N_m + 1.0)

    A = np.zeros((4, 4))
    D = np.zeros((4, 4))
    if h.variant is HamiltonianVariant.FULL_QUADRATURE:
        # H = w_m (Xm^2+Pm^2)/2 + w_s (Xs^2+Ps^2)/2 - g Xm Xs
        omega_s = omega_m + delta
        A[XM, PM], A[PM, XM] = omega_m, -omega_m
        A[XS, PS], A[PS, XS] = omega_s, -omega_s
        A[PM, XS] = g
        A[PS, XM] = g
        D[XM, XM] = thermal
        D[PM, PM] = thermal + gamma_d
    else:
        # frame rotating at w_m: H = delta S^dag S - g (a^dag S + S^dag a)
        A[XS, PS], A[PS, XS] = delta, -delta
        A[XM, PS] = -g
        A[PM, XS] = g
        A[XS, PM] = -g
        A[PS, XM] = g
        D[XM, XM] = thermal + 0.5 * gamma_d
        D[PM, PM] = thermal + 0.5 * gamma_d

    A[XM, XM] -= 0.5 * gamma_m
    A[PM, PM] -= 0.5 * gamma_m
    A[XS, XS] -= 0.5 * gamma_s
    A[PS, PS] -= 0.5 * gamma_s
    D[XS, XS] = 0.5 * gamma_s
    D[PS, PS] = 0.5 * gamma_s
    return GaussianModel(A, D)
