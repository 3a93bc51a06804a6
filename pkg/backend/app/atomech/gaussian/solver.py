"""atomech - Gaussian Solvers

Lyapunov steady states, time evolution and occupations.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm, solve_continuous_lyapunov

from atomech.errors import SolverFailure, Unstable, UnphysicalState
from atomech.gaussian.model import SYMPLECTIC, GaussianModel, Mode, MomentState

logger = logging.getLogger(__name__)

LYAPUNOV_RTOL = 1e-10
OCCUPATION_TOL = 1e-9


def spectral_abscissa(model: GaussianModel) -> float:
    """max Re(lambda) over the drift eigenvalues."""
    return float(np.linalg.eigvals(model.drift_A).real.max())


def lyapunov_residual(model: GaussianModel, cov: np.ndarray) -> float:
    """||A s + s A^T + D||_F / (||A|| ||s|| + ||D||)."""
    A, D = model.drift_A, model.diffusion_D
    r = A @ cov + cov @ A.T + D
    scale = np.linalg.norm(A) * np.linalg.norm(cov) + np.linalg.norm(D)
    return float(np.linalg.norm(r) / scale) if scale > 0 else float(np.linalg.norm(r))


def steady_state(model: GaussianModel) -> MomentState:
    """Solve A s + s A^T + D = 0.

    Raises:
        Unstable: some drift eigenvalue has Re >= 0
        SolverFailure: residual above the relative bound
    """
    abscissa = spectral_abscissa(model)
    if abscissa >= 0:
        raise Unstable(abscissa)
    cov = solve_continuous_lyapunov(model.drift_A, -model.diffusion_D)
    cov = 0.5 * (cov + cov.T)
    residual = lyapunov_residual(model, cov)
    if residual > LYAPUNOV_RTOL:
        raise SolverFailure(f"Lyapunov residual {residual:.3e} above {LYAPUNOV_RTOL:.0e}")
    return MomentState(np.zeros(4), cov)


def _moment_rhs(A: np.ndarray, D: np.ndarray):
    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        mean, cov = y[:4], y[4:].reshape(4, 4)
        return np.concatenate([A @ mean, (A @ cov + cov @ A.T + D).ravel()])

    return rhs


def evolve(
    model: GaussianModel,
    s0: MomentState,
    t: float,
    dt_max: float | None = None,
    method: Literal["rk", "expm"] = "rk",
) -> MomentState:
    """Propagate the moments for a time t.

    ``rk`` integrates with an adaptive 8th-order Runge-Kutta (DOP853);
    ``expm`` exponentiates the vectorized moment equations.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0:
        return s0

    A, D = model.drift_A, model.diffusion_D
    if method == "expm":
        mean = expm(A * t) @ s0.mean
        # d vec(s)/dt = K vec(s) + vec(D), K = A (x) 1 + 1 (x) A
        K = np.kron(A, np.eye(4)) + np.kron(np.eye(4), A)
        aug = np.zeros((17, 17))
        aug[:16, :16] = K
        aug[:16, 16] = D.ravel()
        prop = expm(aug * t)
        cov = (prop[:16, :16] @ s0.cov.ravel() + prop[:16, 16]).reshape(4, 4)
        return MomentState(mean, cov)

    if method != "rk":
        raise ValueError(f"unknown evolution method {method!r}")
    y0 = np.concatenate([s0.mean, s0.cov.ravel()])
    sol = solve_ivp(
        _moment_rhs(A, D),
        (0.0, t),
        y0,
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
        max_step=dt_max if dt_max is not None else np.inf,
    )
    if not sol.success:
        raise SolverFailure(f"moment integration failed: {sol.message}")
    y = sol.y[:, -1]
    return MomentState(y[:4], y[4:].reshape(4, 4))


def is_physical(s: MomentState, tol: float = 1e-8) -> bool:
    """cov + i Omega / 2 >= -tol."""
    return bool(np.linalg.eigvalsh(s.cov + 0.5j * SYMPLECTIC).min() >= -tol)


def occupation(s: MomentState, mode: Mode) -> float:
    """Mean excitation number (<X^2> + <P^2> - 1) / 2.

    Raises:
        UnphysicalState: negative occupation or violated uncertainty relation
    """
    ix, ip = mode.indices
    cov, mean = s.cov, s.mean
    n = 0.5 * (cov[ix, ix] + cov[ip, ip] + mean[ix] ** 2 + mean[ip] ** 2 - 1.0)
    det = cov[ix, ix] * cov[ip, ip] - cov[ix, ip] ** 2
    if n < -OCCUPATION_TOL or det < 0.25 - OCCUPATION_TOL:
        raise UnphysicalState(f"{mode.value} covariance is unphysical (n={n:.3e}, det={det:.6g})")
    return max(float(n), 0.0)
