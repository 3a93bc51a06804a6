"""atomech - Cascaded Collision Model

The traveling field is cut into time bins of length dt. Each bin carries two
fresh vacuum modes: c (mirror-only polarization) and d (the polarization that
meets the atoms twice). Per bin the interaction is applied in causal order

    atoms (t + tau)  ->  mirror (t)  ->  atoms (t - tau)

with retardation kept only as this ordering. Couplings enter as dimensionless
per-bin strengths g * sqrt(dt), so that [b, b^dag] = 1 per bin stands for the
noise increment normalized to dt.

Quadrature patterns (Xb = (X + P)/sqrt2, Pb = (P - X)/sqrt2 on mode d;
G = sqrt(N) g_at):

    phase shift on:   atoms(t+tau) = sqrt2 G (-Pb Xs + Xb Ps)
                      mirror       = sqrt2 g_m (Xc + Xb) Xm
                      atoms(t-tau) = sqrt2 G ( Pb Xs - Xb Ps)
    phase shift off:  atoms(t+tau) = sqrt2 G (-Pb Xs + Xb Ps)
                      mirror       = sqrt2 g_m (Xc + (Xb - Pb)/sqrt2) Xm
                      atoms(t-tau) = sqrt2 G ( Xb Xs + Pb Ps)

Operator order on the full space is system (mech, spin) x c x d.
"""

from __future__ import annotations

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import expm

from atomech.errors import HierarchyViolation
from atomech.fock.space import TruncatedSpace, annihilation

logger = logging.getLogger(__name__)

HIERARCHY_LIMIT = 1e-2


class CascadeConfig(BaseModel):
    """One collision-model run. Frequencies and couplings in any consistent
    unit system (couplings squared are rates)."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    dt_bin: float = Field(..., gt=0)
    dim_field: int = Field(default=2, ge=2)
    dim_mech: int = Field(default=4, ge=2)
    dim_spin: int = Field(default=4, ge=2)
    phase_shift_enabled: bool = True
    g_m: float = Field(..., ge=0)
    g_at_sqrt_N: float = Field(..., ge=0, description="sqrt(N) * g_at")
    omega_m: float = Field(default=1.0, ge=0)
    omega_s: float = Field(default=1.0, ge=0)
    n_bins: int = Field(default=6000, ge=1)

    @model_validator(mode="after")
    def _timescale_hierarchy(self) -> "CascadeConfig":
        coupling = self.dt_bin * max(self.g_m**2, self.g_at_sqrt_N**2)
        rotation = self.dt_bin * max(self.omega_m, self.omega_s)
        if coupling > HIERARCHY_LIMIT or rotation > HIERARCHY_LIMIT:
            raise HierarchyViolation(
                f"dt_bin too coarse: dt*g^2={coupling:.3g}, dt*omega={rotation:.3g} "
                f"(both must be <= {HIERARCHY_LIMIT})"
            )
        span = self.n_bins * self.dt_bin * max(self.g_m**2, self.g_at_sqrt_N**2)
        if span < 1.0:
            logger.warning("n_bins*dt_bin covers only %.3g coupling times", span)
        return self

    @property
    def system(self) -> TruncatedSpace:
        return TruncatedSpace(self.dim_mech, self.dim_spin)

    def with_dt(self, dt_bin: float) -> "CascadeConfig":
        return CascadeConfig.model_validate({**self.model_dump(), "dt_bin": dt_bin})


def free_hamiltonian(cfg: CascadeConfig) -> np.ndarray:
    """omega_m (Xm^2 + Pm^2)/2 + omega_s (Xs^2 + Ps^2)/2 built from truncated quadratures."""
    q = cfg.system.quadratures()
    return 0.5 * cfg.omega_m * (q["X_m"] @ q["X_m"] + q["P_m"] @ q["P_m"]) + 0.5 * cfg.omega_s * (
        q["X_s"] @ q["X_s"] + q["P_s"] @ q["P_s"]
    )


def _field_quadratures(dim_field: int) -> dict[str, np.ndarray]:
    b = annihilation(dim_field)
    x = (b + b.conj().T) / np.sqrt(2.0)
    p = 1j * (b.conj().T - b) / np.sqrt(2.0)
    return {"x": x, "p": p, "xb": (x + p) / np.sqrt(2.0), "pb": (p - x) / np.sqrt(2.0)}


def interaction_generators(cfg: CascadeConfig) -> list[np.ndarray]:
    """Hermitian generators of the three ordered sub-steps (before the sqrt(dt) factor)."""
    q = cfg.system.quadratures()
    f = _field_quadratures(cfg.dim_field)
    eye_f = np.eye(cfg.dim_field)

    def on_c(sys_op: np.ndarray, c_op: np.ndarray) -> np.ndarray:
        return np.kron(np.kron(sys_op, c_op), eye_f)

    def on_d(sys_op: np.ndarray, d_op: np.ndarray) -> np.ndarray:
        return np.kron(np.kron(sys_op, eye_f), d_op)

    a = np.sqrt(2.0) * cfg.g_at_sqrt_N
    gm = np.sqrt(2.0) * cfg.g_m
    Xm, Xs, Ps = q["X_m"], q["X_s"], q["P_s"]
    xb, pb = f["xb"], f["pb"]

    first = a * (-on_d(Xs, pb) + on_d(Ps, xb))
    if cfg.phase_shift_enabled:
        mirror = gm * (on_c(Xm, f["x"]) + on_d(Xm, xb))
        last = a * (on_d(Xs, pb) - on_d(Ps, xb))
    else:
        mirror = gm * (on_c(Xm, f["x"]) + on_d(Xm, (xb - pb) / np.sqrt(2.0)))
        last = a * (on_d(Xs, xb) + on_d(Ps, pb))
    return [first, mirror, last]


def step_unitary(cfg: CascadeConfig) -> np.ndarray:
    """Unitary of one collision on system x (c, d); free evolution, then the
    three ordered interactions."""
    field_dim = cfg.dim_field**2
    U = np.kron(expm(-1j * cfg.dt_bin * free_hamiltonian(cfg)), np.eye(field_dim))
    eps = np.sqrt(cfg.dt_bin)
    for H in interaction_generators(cfg):
        U = expm(-1j * eps * H) @ U
    return U


def kraus_operators(cfg: CascadeConfig, U: np.ndarray | None = None) -> list[np.ndarray]:
    """K_j = <j_field| U |vac_field> on the system."""
    U = step_unitary(cfg) if U is None else U
    d, f = cfg.system.dim, cfg.dim_field**2
    U4 = U.reshape(d, f, d, f)
    return [U4[:, j, :, 0] for j in range(f)]


def reduced_channel(cfg: CascadeConfig) -> np.ndarray:
    """Single-collision system channel as a row-major superoperator."""
    return sum(np.kron(K, K.conj()) for K in kraus_operators(cfg))


def run_collisions(cfg: CascadeConfig, rho0: np.ndarray, n: int | None = None) -> list[np.ndarray]:
    """Reduced system states after 0, 1, ..., n collisions (n defaults to n_bins)."""
    n = cfg.n_bins if n is None else n
    kraus = kraus_operators(cfg)
    states = [np.asarray(rho0, dtype=complex)]
    rho = states[0]
    for _ in range(n):
        rho = sum(K @ rho @ K.conj().T for K in kraus)
        states.append(rho)
    return states
