"""atomech - Elimination Checks

Compares the fitted collision-model generator with the adiabatic-elimination
result: phase shift on gives -2 G g_m X_m X_s and 2 g_m^2 D[X_m] with no
atomic self-term; phase shift off leaves a self-term -G^2 (X_s^2 + P_s^2).
"""

from __future__ import annotations

from dataclasses import dataclass

from atomech.collision.cascade import CascadeConfig
from atomech.collision.fit import (
    DEFAULT_RESIDUAL_THRESHOLD,
    GeneratorEstimate,
    detect_backaction,
    extract_generator,
)
from atomech.governance.gate import Check, GateResult, VerificationGate

COEFFICIENT_TOLERANCE = 0.05
BACKACTION_TOLERANCE = 0.10
DOMINANCE_RATIO = 10.0


@dataclass(frozen=True)
class EliminationReport:
    config: CascadeConfig
    estimate: GeneratorEstimate
    backaction: float
    gate: GateResult

    def to_dict(self) -> dict:
        h = self.estimate.hamiltonian_coefficients
        return {
            "phase_shift_enabled": self.config.phase_shift_enabled,
            "dt_bin": self.config.dt_bin,
            "n_bins": self.config.n_bins,
            "g_m": self.config.g_m,
            "g_at_sqrt_N": self.config.g_at_sqrt_N,
            "coupling_XmXs": -h["X_m X_s"],
            "diffusion_Xm": self.estimate.dissipator_rates["X_m"],
            "backaction": self.backaction,
            "fit_residual": self.estimate.fit_residual,
            "trajectory_residual": self.estimate.trajectory_residual,
            "hamiltonian_coefficients": h,
            "dissipator_rates": self.estimate.dissipator_rates,
            "checks": self.gate.summary_rows(),
            "decision": self.gate.decision.value,
        }


def elimination_checks(cfg: CascadeConfig, estimate: GeneratorEstimate) -> list[Check]:
    G, gm = cfg.g_at_sqrt_N, cfg.g_m
    h = estimate.hamiltonian_coefficients
    backaction = detect_backaction(cfg, estimate)
    scale = max(G**2, gm**2)
    checks = [
        Check(
            name="fit_residual",
            value=estimate.fit_residual,
            target=0.0,
            tolerance=DEFAULT_RESIDUAL_THRESHOLD,
            relative=False,
            upper_bound=True,
        )
    ]
    if cfg.phase_shift_enabled:
        coupling_target = 2.0 * G * gm
        checks.append(
            Check(
                name="coupling_XmXs",
                value=-h["X_m X_s"],
                target=coupling_target,
                tolerance=COEFFICIENT_TOLERANCE if coupling_target else COEFFICIENT_TOLERANCE * scale,
                relative=bool(coupling_target),
            )
        )
        if gm > 0:
            checks.append(
                Check(
                    name="diffusion_Xm",
                    value=estimate.dissipator_rates["X_m"],
                    target=2.0 * gm**2,
                    tolerance=COEFFICIENT_TOLERANCE,
                )
            )
        checks.append(
            Check(
                name="backaction_absent",
                value=abs(backaction),
                target=0.0,
                tolerance=COEFFICIENT_TOLERANCE * scale,
                relative=False,
                upper_bound=True,
            )
        )
        return checks

    if G > 0:
        checks.append(
            Check(name="backaction", value=backaction, target=-(G**2), tolerance=BACKACTION_TOLERANCE)
        )
    if gm > 0 and G >= DOMINANCE_RATIO * gm:
        checks.append(
            Check(
                name="backaction_dominates",
                value=abs(h["X_m X_s"]) - abs(backaction),
                target=0.0,
                tolerance=0.0,
                relative=False,
                upper_bound=True,
                note="cross-term magnitude minus backaction magnitude",
            )
        )
    return checks


def verify_elimination(cfg: CascadeConfig) -> EliminationReport:
    estimate = extract_generator(cfg)
    gate = VerificationGate("verify-elimination")
    gate.extend(elimination_checks(cfg, estimate))
    return EliminationReport(cfg, estimate, detect_backaction(cfg, estimate), gate.evaluate())
