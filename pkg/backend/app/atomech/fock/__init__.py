"""atomech - Fock Oracle

Dense truncated-Fock Liouvillian solver used to cross-check the Gaussian
engine at small occupation.
"""

from atomech.fock.liouvillian import (
    build_liouvillian,
    hamiltonian,
    jump_operators,
    lindblad_dissipator,
    spost,
    spre,
)
from atomech.fock.oracle import (
    OperatingPoint,
    OracleComparison,
    compare_with_gaussian,
    default_operating_points,
    evolve_fock,
    steady_state_nullspace,
    swap_time,
)
from atomech.fock.space import TruncatedDensityOperator, TruncatedSpace, annihilation
from atomech.fock.verify import (
    GaussianVerification,
    swap_residual,
    truncation_check,
    verify_gaussian,
)

__all__ = [
    "GaussianVerification",
    "OperatingPoint",
    "OracleComparison",
    "TruncatedDensityOperator",
    "TruncatedSpace",
    "annihilation",
    "build_liouvillian",
    "compare_with_gaussian",
    "default_operating_points",
    "evolve_fock",
    "hamiltonian",
    "jump_operators",
    "lindblad_dissipator",
    "spost",
    "spre",
    "steady_state_nullspace",
    "swap_residual",
    "swap_time",
    "truncation_check",
    "verify_gaussian",
]
