"""atomech - Truncated Fock Space

Mechanics (dim_mech levels) times the Holstein-Primakoff spin-wave boson
(dim_spin levels). Operators are dense matrices on the product space, mode
order (mech, spin).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from atomech.core.config import settings
from atomech.errors import CapExceeded

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8


def annihilation(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)


@dataclass(frozen=True)
class TruncatedSpace:
    dim_mech: int
    dim_spin: int
    hilbert_cap: int = settings.hilbert_cap
    liouville_cap: int = settings.liouville_cap

    def __post_init__(self) -> None:
        if self.dim_mech < 2 or self.dim_spin < 2:
            raise ValueError("each mode needs at least two Fock levels")
        if self.dim > self.hilbert_cap:
            raise CapExceeded(
                f"Hilbert dimension {self.dim} exceeds cap {self.hilbert_cap} "
                f"(dim_mech={self.dim_mech}, dim_spin={self.dim_spin})"
            )

    def require_dense(self) -> None:
        """Raise CapExceeded when the dense superoperator would be too large."""
        if self.liouville_dim > self.liouville_cap:
            raise CapExceeded(
                f"superoperator dimension {self.liouville_dim} exceeds cap {self.liouville_cap} "
                f"(dim_mech={self.dim_mech}, dim_spin={self.dim_spin})"
            )

    @property
    def dim(self) -> int:
        return self.dim_mech * self.dim_spin

    @property
    def liouville_dim(self) -> int:
        return self.dim**2

    @cached_property
    def a_m(self) -> np.ndarray:
        return np.kron(annihilation(self.dim_mech), np.eye(self.dim_spin))

    @cached_property
    def s_0(self) -> np.ndarray:
        return np.kron(np.eye(self.dim_mech), annihilation(self.dim_spin))

    def quadratures(self) -> dict[str, np.ndarray]:
        a, s = self.a_m, self.s_0
        r2 = np.sqrt(2.0)
        return {
            "X_m": (a + a.conj().T) / r2,
            "P_m": 1j * (a.conj().T - a) / r2,
            "X_s": (s + s.conj().T) / r2,
            "P_s": 1j * (s.conj().T - s) / r2,
        }

    def fock_state(self, n_mech: int, n_spin: int) -> np.ndarray:
        psi = np.zeros(self.dim, dtype=complex)
        psi[n_mech * self.dim_spin + n_spin] = 1.0
        return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class TruncatedDensityOperator:
    """Validated density matrix on a TruncatedSpace."""

    matrix: np.ndarray
    space: TruncatedSpace

    def __post_init__(self) -> None:
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"density matrix shape {rho.shape} does not match the space")
        if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {np.trace(rho).real:.12f}")
        if np.linalg.eigvalsh(rho).min() < -POSITIVITY_TOL:
            raise ValueError("density matrix has negative eigenvalues")
        object.__setattr__(self, "matrix", rho)

    def expect(self, op: np.ndarray) -> float:
        return float(np.trace(self.matrix @ op).real)

    def populations(self, mode: str) -> np.ndarray:
        """Reduced Fock populations of "mech" or "spin"."""
        dm, ds = self.space.dim_mech, self.space.dim_spin
        diag = np.real(np.diagonal(self.matrix)).reshape(dm, ds)
        return diag.sum(axis=1) if mode == "mech" else diag.sum(axis=0)

    def occupation(self, mode: str) -> float:
        p = self.populations(mode)
        return float(np.dot(np.arange(p.size), p))
