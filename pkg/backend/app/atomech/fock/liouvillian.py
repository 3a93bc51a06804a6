"""atomech - Dense Liouvillian

Row-major vectorization: vec(A rho B) = (A kron B^T) vec(rho).
"""

from __future__ import annotations

import numpy as np

from atomech.fock.space import TruncatedSpace
from atomech.gaussian.model import HamiltonianChoice, HamiltonianVariant
from atomech.rates.rateset import RateSet


def spre(op: np.ndarray) -> np.ndarray:
    return np.kron(op, np.eye(op.shape[0]))


def spost(op: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(op.shape[0]), op.T)


def lindblad_dissipator(L: np.ndarray) -> np.ndarray:
    """Superoperator of L rho L^dag - {L^dag L, rho}/2."""
    LdL = L.conj().T @ L
    return np.kron(L, L.conj()) - 0.5 * spre(LdL) - 0.5 * spost(LdL)


def hamiltonian(space: TruncatedSpace, h: HamiltonianChoice, rates: RateSet) -> np.ndarray:
    a, s = space.a_m, space.s_0
    q = space.quadratures()
    g = rates.g_eff
    if h.variant is HamiltonianVariant.FULL_QUADRATURE:
        omega_s = rates.omega_m + h.delta_resonance
        return (
            rates.omega_m * a.conj().T @ a
            + omega_s * s.conj().T @ s
            - g * q["X_m"] @ q["X_s"]
        )
    return h.delta_resonance * s.conj().T @ s - g * (a.conj().T @ s + s.conj().T @ a)


def jump_operators(
    space: TruncatedSpace,
    h: HamiltonianChoice,
    rates: RateSet,
    N_m: float,
) -> list[tuple[float, np.ndarray]]:
    """(rate, L) pairs; rotating-frame X_m diffusion is split over X_m and P_m."""
    a, s = space.a_m, space.s_0
    q = space.quadratures()
    jumps: list[tuple[float, np.ndarray]] = []
    if h.variant is HamiltonianVariant.FULL_QUADRATURE:
        jumps.append((rates.gamma_m_diff, q["X_m"]))
    else:
        jumps.append((0.5 * rates.gamma_m_diff, q["X_m"]))
        jumps.append((0.5 * rates.gamma_m_diff, q["P_m"]))
    jumps.append((rates.gamma_at_diff + rates.gamma_at_cool, s))
    jumps.append((rates.gamma_m * (N_m + 1.0), a))
    jumps.append((rates.gamma_m * N_m, a.conj().T))
    return [(rate, L) for rate, L in jumps if rate > 0]


def build_liouvillian(
    space: TruncatedSpace,
    h: HamiltonianChoice,
    rates: RateSet,
    N_m: float | None = None,
) -> np.ndarray:
    """Dense generator of d rho/dt = -i[H, rho] + sum_k gamma_k D[L_k] rho.

    Raises:
        CapExceeded: superoperator dimension above the space's liouville_cap
    """
    space.require_dense()
    N_m = rates.N_m if N_m is None else N_m
    h.require_valid(rates)
    H = hamiltonian(space, h, rates)
    L = -1j * (spre(H) - spost(H))
    for rate, op in jump_operators(space, h, rates, N_m):
        L = L + rate * lindblad_dissipator(op)
    return L
