"""atomech - Gaussian Engine

Exact first/second-moment solution of the effective two-mode master equation.
"""

from atomech.gaussian.model import (
    SYMPLECTIC,
    GaussianModel,
    HamiltonianChoice,
    HamiltonianVariant,
    Mode,
    MomentState,
    build_model,
)
from atomech.gaussian.solver import (
    evolve,
    is_physical,
    lyapunov_residual,
    occupation,
    spectral_abscissa,
    steady_state,
)
from atomech.gaussian.sweeps import (
    CoolingPoint,
    StrongCouplingPoint,
    cooling_curve,
    instability_cutoff,
    mechanical_occupation,
    rabi_exchange_period,
    strong_coupling_sweep,
)

__all__ = [
    "SYMPLECTIC",
    "CoolingPoint",
    "GaussianModel",
    "HamiltonianChoice",
    "HamiltonianVariant",
    "Mode",
    "MomentState",
    "StrongCouplingPoint",
    "build_model",
    "cooling_curve",
    "evolve",
    "instability_cutoff",
    "is_physical",
    "lyapunov_residual",
    "mechanical_occupation",
    "occupation",
    "rabi_exchange_period",
    "spectral_abscissa",
    "steady_state",
    "strong_coupling_sweep",
]
