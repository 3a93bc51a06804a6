"""atomech - Generator Fit

Recovers the Lindblad generator of the reduced collision dynamics,
L_est = log(Phi) / dt, and projects it onto

    -i[H, .] + sum_jk C_jk (F_j . F_k^dag - {F_k^dag F_j, .}/2)

with H spanned by quadrature monomials of degree 1 and 2 in F = (X_m, P_m, X_s, P_s)
and C a Hermitian (Kossakowski) matrix. Whatever the projection misses is
the fit residual.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, logm

from atomech.collision.cascade import CascadeConfig, free_hamiltonian, reduced_channel
from atomech.errors import FitRejected
from atomech.fock.liouvillian import lindblad_dissipator, spost, spre
from atomech.fock.space import TruncatedSpace

logger = logging.getLogger(__name__)

QUADRATURES = ("X_m", "P_m", "X_s", "P_s")
DEFAULT_RESIDUAL_THRESHOLD = 5e-2


def hamiltonian_monomials(space: TruncatedSpace) -> dict[str, np.ndarray]:
    """Degree-1 and degree-2 quadrature monomials plus the top-level projector
    of each mode. On a truncated space [X, P] = i(1 - d |d-1><d-1|), so the
    projectors pick up what the truncation leaves of commutator terms."""
    q = space.quadratures()
    mono = {name: q[name] for name in QUADRATURES}
    for mode in ("m", "s"):
        X, P = q[f"X_{mode}"], q[f"P_{mode}"]
        mono[f"X_{mode}^2"] = X @ X
        mono[f"P_{mode}^2"] = P @ P
        mono[f"{{X_{mode},P_{mode}}}/2"] = 0.5 * (X @ P + P @ X)
    for a in ("X_m", "P_m"):
        for b in ("X_s", "P_s"):
            mono[f"{a} {b}"] = q[a] @ q[b]
    top_m = np.zeros(space.dim_mech)
    top_m[-1] = 1.0
    top_s = np.zeros(space.dim_spin)
    top_s[-1] = 1.0
    mono["edge_m"] = np.kron(np.diag(top_m), np.eye(space.dim_spin)).astype(complex)
    mono["edge_s"] = np.kron(np.eye(space.dim_mech), np.diag(top_s)).astype(complex)
    return mono


def _dissipator_basis(F: list[np.ndarray]) -> list[tuple[tuple[int, int, str], np.ndarray]]:
    """Real parametrization of the Hermitian C: diagonals, Re and Im of j<k."""

    def B(j: int, k: int) -> np.ndarray:
        FkFj = F[k].conj().T @ F[j]
        return np.kron(F[j], F[k].conj()) - 0.5 * spre(FkFj) - 0.5 * spost(FkFj)

    out = []
    for j in range(len(F)):
        out.append(((j, j, "re"), B(j, j)))
        for k in range(j + 1, len(F)):
            out.append(((j, k, "re"), B(j, k) + B(k, j)))
            out.append(((j, k, "im"), 1j * (B(j, k) - B(k, j))))
    return out


@dataclass(frozen=True)
class GeneratorEstimate:
    hamiltonian_part: np.ndarray
    hamiltonian_coefficients: dict[str, float]
    kossakowski: np.ndarray
    fit_residual: float
    trajectory_residual: float
    dt_bin: float
    dissipator_rates: dict[str, float] = field(default_factory=dict)

    def reliable(self, threshold: float = DEFAULT_RESIDUAL_THRESHOLD) -> bool:
        return self.fit_residual < threshold


def estimated_generator(cfg: CascadeConfig) -> np.ndarray:
    """log(Phi) / dt for the single-collision channel Phi."""
    return logm(reduced_channel(cfg)) / cfg.dt_bin


def _probe_state(cfg: CascadeConfig) -> np.ndarray:
    space = cfg.system
    psi = np.zeros(space.dim, dtype=complex)
    psi[0] = 1.0
    psi[space.dim_spin] = 0.6  # |1,0>
    psi[1] = 0.3j  # |0,1>
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def extract_generator(
    cfg: CascadeConfig,
    residual_threshold: float = DEFAULT_RESIDUAL_THRESHOLD,
    strict: bool = False,
) -> GeneratorEstimate:
    """Least-squares Lindblad fit of the reduced collision dynamics.

    Raises:
        FitRejected: residual above threshold and ``strict``
    """
    q = cfg.system.quadratures()
    L_est = estimated_generator(cfg)

    mono = hamiltonian_monomials(cfg.system)
    names = list(mono)
    columns = [-1j * (spre(mono[n]) - spost(mono[n])) for n in names]
    F = [q[n] for n in QUADRATURES]
    diss = _dissipator_basis(F)
    columns += [b for _, b in diss]

    design = np.stack([c.ravel() for c in columns], axis=1)
    target = L_est.ravel()
    design_real = np.concatenate([design.real, design.imag])
    target_real = np.concatenate([target.real, target.imag])
    theta, *_ = np.linalg.lstsq(design_real, target_real, rcond=None)

    L_fit = (design @ theta).reshape(L_est.shape)
    fit_residual = float(np.linalg.norm(L_est - L_fit) / np.linalg.norm(L_est))

    h_coeffs = {n: float(theta[i]) for i, n in enumerate(names)}
    H = sum(h_coeffs[n] * mono[n] for n in names)
    C = np.zeros((4, 4), dtype=complex)
    for ((j, k, part), _), value in zip(diss, theta[len(names):]):
        if j == k:
            C[j, j] += value
        elif part == "re":
            C[j, k] += value
            C[k, j] += value
        else:
            C[j, k] += 1j * value
            C[k, j] -= 1j * value

    # propagate a probe state over n_bins collisions vs. the fitted generator
    channel = reduced_channel(cfg)
    rho0 = _probe_state(cfg).ravel()
    by_collisions = np.linalg.matrix_power(channel, cfg.n_bins) @ rho0
    by_generator = expm(L_fit * cfg.n_bins * cfg.dt_bin) @ rho0
    trajectory_residual = float(np.linalg.norm(by_collisions - by_generator))

    estimate = GeneratorEstimate(
        hamiltonian_part=H,
        hamiltonian_coefficients=h_coeffs,
        kossakowski=C,
        fit_residual=fit_residual,
        trajectory_residual=trajectory_residual,
        dt_bin=cfg.dt_bin,
        dissipator_rates={n: float(C[i, i].real) for i, n in enumerate(QUADRATURES)},
    )
    if fit_residual >= residual_threshold:
        logger.warning("generator fit residual %.3e above %.1e", fit_residual, residual_threshold)
        if strict:
            raise FitRejected(fit_residual, residual_threshold)
    return estimate


def detect_backaction(cfg: CascadeConfig, estimate: GeneratorEstimate | None = None) -> float:
    """Fitted coefficient of (X_s^2 + P_s^2) beyond the free spin rotation.

    Negative when the atoms act back on themselves (-N g_at^2 without the
    phase shift); consistent with zero when the phase shift is on.
    """
    estimate = estimate or extract_generator(cfg)
    h = estimate.hamiltonian_coefficients
    return 0.5 * (h["X_s^2"] + h["P_s^2"]) - 0.5 * cfg.omega_s


def target_generator(cfg: CascadeConfig) -> np.ndarray:
    """Adiabatic-elimination result with the phase shift on:
    H = H_0 - 2 G g_m X_m X_s and 2 g_m^2 D[X_m]."""
    if not cfg.phase_shift_enabled:
        raise ValueError("the closed-form target is only defined with the phase shift on")
    q = cfg.system.quadratures()
    H = free_hamiltonian(cfg) - 2.0 * cfg.g_at_sqrt_N * cfg.g_m * q["X_m"] @ q["X_s"]
    return -1j * (spre(H) - spost(H)) + 2.0 * cfg.g_m**2 * lindblad_dissipator(q["X_m"])


@dataclass(frozen=True)
class ConvergenceReport:
    dt_bins: list[float]
    errors: list[float]

    @property
    def orders(self) -> list[float]:
        return [
            math.log2(self.errors[i] / self.errors[i + 1]) for i in range(len(self.errors) - 1)
        ]

    @property
    def observed_order(self) -> float:
        return float(np.mean(self.orders))


def convergence_study(cfg: CascadeConfig, halvings: int = 2) -> ConvergenceReport:
    """Relative generator error against the closed-form target while halving dt."""
    dts, errors = [], []
    dt = cfg.dt_bin
    for _ in range(halvings + 1):
        run = cfg.with_dt(dt)
        L_target = target_generator(run)
        err = np.linalg.norm(estimated_generator(run) - L_target) / np.linalg.norm(L_target)
        dts.append(dt)
        errors.append(float(err))
        logger.debug("dt=%.3e generator error %.3e", dt, err)
        dt *= 0.5
    return ConvergenceReport(dts, errors)
