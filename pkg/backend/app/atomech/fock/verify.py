"""atomech - Gaussian Verification

Gaussian engine against the Fock oracle at the default operating points, a
truncation convergence check, and the lossless swap time.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from atomech.fock.oracle import (
    OperatingPoint,
    OracleComparison,
    compare_with_gaussian,
    default_operating_points,
    evolve_fock,
    swap_time,
)
from atomech.fock.space import TruncatedDensityOperator, TruncatedSpace
from atomech.gaussian.model import HamiltonianChoice, HamiltonianVariant, build_model
from atomech.gaussian.solver import lyapunov_residual, steady_state
from atomech.governance.gate import Check, GateResult, VerificationGate
from atomech.rates.rateset import RateSet

logger = logging.getLogger(__name__)

OCCUPATION_TOLERANCE = 0.01
TRUNCATION_TOLERANCE = 0.002
LYAPUNOV_TOLERANCE = 1e-10
SWAP_TIME_TOLERANCE = 1e-3
SWAP_RESIDUAL_MAX = 1e-3
SWAP_COUPLING = 0.05


@dataclass
class GaussianVerification:
    comparisons: list[OracleComparison]
    convergence: list[OracleComparison]
    swap_time: float
    swap_residual: float
    gate: GateResult
    lyapunov_residuals: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verification": "gaussian",
            "decision": self.gate.decision.value,
            "reason": self.gate.reason,
            "checks": self.gate.summary_rows(),
            "points": [
                {
                    "variant": c.point.variant.value,
                    "g_eff": c.point.g_eff,
                    "gamma_m": c.point.gamma_m,
                    "N_m": c.point.N_m,
                    "gamma_m_diff": c.point.gamma_m_diff,
                    "gamma_s": c.point.gamma_s,
                    "n_gauss": c.n_gauss,
                    "n_fock": c.n_fock,
                    "rel_error": c.rel_error,
                    "dim_mech": c.dim_mech,
                    "dim_spin": c.dim_spin,
                }
                for c in self.comparisons + self.convergence
            ],
            "result": {"swap_time": self.swap_time, "swap_residual": self.swap_residual},
        }


def _lyapunov_residual(point: OperatingPoint) -> float:
    model = build_model(point.hamiltonian(), point.rates(), point.N_m)
    return lyapunov_residual(model, steady_state(model).cov)


def truncation_check(n_base: float, n_refined: float) -> Check:
    """Relative change of the oracle occupation when dim_mech grows by two."""
    return Check(name="truncation_convergence", value=n_refined, target=n_base,
                 tolerance=TRUNCATION_TOLERANCE)


def swap_residual(space: TruncatedSpace, g_eff: float, t: float) -> float:
    """<n_m> at time t after starting from |1,0> (lossless beamsplitter)."""
    h = HamiltonianChoice(variant=HamiltonianVariant.BEAMSPLITTER_RWA)
    rates = RateSet(g_eff=g_eff, omega_m=20.0 * g_eff)
    rho0 = TruncatedDensityOperator(space.fock_state(1, 0), space)
    return evolve_fock(space, h, rates, rho0, t).occupation("mech")


def verify_gaussian(
    space: TruncatedSpace,
    refined: TruncatedSpace | None = None,
    points: list[OperatingPoint] | None = None,
) -> GaussianVerification:
    """Run every comparison; a failing point fails the gate, it does not abort."""
    points = points or default_operating_points()
    gate = VerificationGate("verify-gaussian")

    comparisons = []
    residuals = []
    for i, p in enumerate(points):
        c = compare_with_gaussian(p, space)
        comparisons.append(c)
        gate.add(Check(name=f"occupation_{i}", value=c.n_gauss, target=c.n_fock,
                       tolerance=OCCUPATION_TOLERANCE))
        res = _lyapunov_residual(p)
        residuals.append(res)
        gate.add(Check(name=f"lyapunov_{i}", value=res, target=0.0, tolerance=LYAPUNOV_TOLERANCE,
                       relative=False, upper_bound=True))

    convergence = []
    if refined is not None:
        # first point again with a larger mechanical truncation
        c = compare_with_gaussian(points[0], refined)
        convergence.append(c)
        gate.add(truncation_check(comparisons[0].n_fock, c.n_fock))

    swap_space = TruncatedSpace(3, 3)
    t_swap = swap_time(swap_space, SWAP_COUPLING)
    t_expected = math.pi / (2.0 * SWAP_COUPLING)
    n_left = swap_residual(swap_space, SWAP_COUPLING, t_expected)
    gate.add(Check(name="swap_time", value=t_swap, target=t_expected, tolerance=SWAP_TIME_TOLERANCE))
    gate.add(Check(name="swap_residual", value=n_left, target=0.0, tolerance=SWAP_RESIDUAL_MAX,
                   relative=False, upper_bound=True))

    result = gate.evaluate()
    logger.info(result.reason)
    return GaussianVerification(comparisons, convergence, t_swap, n_left, result, residuals)
