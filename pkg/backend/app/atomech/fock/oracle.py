"""atomech - Fock Oracle

Brute-force steady states and propagation on the truncated space, and the
comparison against the Gaussian engine at low occupation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import lu_factor, lu_solve, svdvals
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import expm_multiply

from atomech.core.config import settings
from atomech.errors import DegenerateSteadyState, SolverFailure, TruncationSuspect
from atomech.fock.liouvillian import build_liouvillian
from atomech.fock.space import TruncatedDensityOperator, TruncatedSpace
from atomech.gaussian.model import HamiltonianChoice, HamiltonianVariant
from atomech.gaussian.sweeps import mechanical_occupation
from atomech.rates.rateset import RateSet

logger = logging.getLogger(__name__)

# full singular-value check below this superoperator dimension; LU pivots above
SVD_CHECK_MAX_DIM = 1024
NULLSPACE_GAP = 1e-10
PIVOT_RATIO_MIN = 1e-13
STEADY_RESIDUAL = 1e-9


def _vec_identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex).ravel()


def steady_state_nullspace(
    L: np.ndarray,
    space: TruncatedSpace,
    boundary_tol: float | None = None,
) -> TruncatedDensityOperator:
    """Unique null vector of L, normalized to unit trace.

    One row of L (redundant because Tr(L rho) = 0) is replaced by the trace
    functional and the bordered system is LU-solved.

    Raises:
        DegenerateSteadyState: null space dimension > 1
        TruncationSuspect: last Fock level of either mode populated above tol
    """
    boundary_tol = settings.boundary_tolerance if boundary_tol is None else boundary_tol
    n = L.shape[0]
    dim = space.dim

    if n <= SVD_CHECK_MAX_DIM:
        sv = np.sort(svdvals(L))
        if sv[1] <= NULLSPACE_GAP * sv[-1]:
            raise DegenerateSteadyState(
                f"second-smallest singular value {sv[1]:.3e} (largest {sv[-1]:.3e})"
            )

    M = L.copy()
    M[0, :] = _vec_identity(dim)
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = 1.0
    lu, piv = lu_factor(M, check_finite=False)
    pivots = np.abs(np.diagonal(lu))
    if pivots.min() <= PIVOT_RATIO_MIN * pivots.max():
        raise DegenerateSteadyState(f"bordered Liouvillian is singular (pivot {pivots.min():.3e})")
    x = lu_solve((lu, piv), rhs, check_finite=False)

    rho = x.reshape(dim, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real

    residual = np.linalg.norm(L @ rho.ravel())
    if residual > STEADY_RESIDUAL * np.linalg.norm(L):
        raise SolverFailure(f"steady-state residual {residual:.3e} too large")

    state = TruncatedDensityOperator(rho, space)
    for mode in ("mech", "spin"):
        edge = float(state.populations(mode)[-1])
        if edge > boundary_tol:
            raise TruncationSuspect(mode, edge, boundary_tol)
    return state


def evolve_fock(
    space: TruncatedSpace,
    h: HamiltonianChoice,
    rates: RateSet,
    rho0: TruncatedDensityOperator,
    t: float,
    N_m: float | None = None,
) -> TruncatedDensityOperator:
    """exp(L t) rho0."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0:
        return rho0
    L = build_liouvillian(space, h, rates, N_m)
    vec = expm_multiply(L * t, rho0.matrix.ravel())
    rho = vec.reshape(space.dim, space.dim)
    rho = 0.5 * (rho + rho.conj().T)
    return TruncatedDensityOperator(rho / np.trace(rho).real, space)


def swap_time(space: TruncatedSpace, g_eff: float) -> float:
    """First minimum of <n_m>(t) from |1,0> under the lossless beamsplitter."""
    h = HamiltonianChoice(variant=HamiltonianVariant.BEAMSPLITTER_RWA)
    # omega_m only guards the rotating-wave condition here
    rates = RateSet(g_eff=g_eff, omega_m=20.0 * g_eff)
    rho0 = TruncatedDensityOperator(space.fock_state(1, 0), space)

    def n_mech(t: float) -> float:
        return evolve_fock(space, h, rates, rho0, t).occupation("mech")

    # one full exchange cycle lasts pi/g; its interior holds a single minimum
    res = minimize_scalar(
        n_mech,
        bounds=(0.05 * math.pi / g_eff, 0.95 * math.pi / g_eff),
        method="bounded",
        options={"xatol": 1e-7 / g_eff},
    )
    return float(res.x)


class OperatingPoint(BaseModel):
    """Rescaled rate set (omega_m = 1) for oracle comparisons."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    variant: HamiltonianVariant
    g_eff: float = Field(..., ge=0)
    gamma_m: float = Field(..., gt=0)
    N_m: float = Field(..., ge=0)
    gamma_m_diff: float = Field(default=0.0, ge=0)
    gamma_s: float = Field(..., gt=0)
    omega_m: float = 1.0
    delta: float = 0.0

    def rates(self) -> RateSet:
        return RateSet(
            g_eff=self.g_eff,
            gamma_m=self.gamma_m,
            gamma_m_th=self.gamma_m * self.N_m,
            gamma_m_diff=self.gamma_m_diff,
            gamma_at_diff=self.gamma_s,
            omega_m=self.omega_m,
        )

    def hamiltonian(self) -> HamiltonianChoice:
        return HamiltonianChoice(variant=self.variant, delta_resonance=self.delta)


def default_operating_points() -> list[OperatingPoint]:
    """Low-occupation points (n_m below ~0.45) spanning both Hamiltonians."""
    full, rwa = HamiltonianVariant.FULL_QUADRATURE, HamiltonianVariant.BEAMSPLITTER_RWA
    return [
        OperatingPoint(variant=full, g_eff=0.25, gamma_m=0.05, N_m=0.5, gamma_m_diff=0.03, gamma_s=0.8),
        OperatingPoint(variant=full, g_eff=0.2, gamma_m=0.04, N_m=0.4, gamma_m_diff=0.0, gamma_s=0.5),
        OperatingPoint(variant=full, g_eff=0.3, gamma_m=0.05, N_m=0.4, gamma_m_diff=0.02, gamma_s=1.0),
        OperatingPoint(variant=rwa, g_eff=0.15, gamma_m=0.1, N_m=0.8, gamma_m_diff=0.0, gamma_s=0.8),
        OperatingPoint(variant=rwa, g_eff=0.1, gamma_m=0.05, N_m=0.6, gamma_m_diff=0.02, gamma_s=0.4),
    ]


@dataclass(frozen=True)
class OracleComparison:
    point: OperatingPoint
    n_gauss: float
    n_fock: float
    dim_mech: int
    dim_spin: int

    @property
    def rel_error(self) -> float:
        return abs(self.n_gauss - self.n_fock) / max(abs(self.n_fock), 1e-300)


def compare_with_gaussian(point: OperatingPoint, space: TruncatedSpace) -> OracleComparison:
    rates, h = point.rates(), point.hamiltonian()
    n_gauss = mechanical_occupation(rates, h, point.N_m)
    L = build_liouvillian(space, h, rates, point.N_m)
    n_fock = steady_state_nullspace(L, space).occupation("mech")
    logger.info(
        "oracle %s g=%.3g: gauss=%.6f fock=%.6f", point.variant.value, point.g_eff, n_gauss, n_fock
    )
    return OracleComparison(point, n_gauss, n_fock, space.dim_mech, space.dim_spin)
