"""atomech - Operating-Point Search

Constrained derivative-free search over laser power P, detuning |Delta| and
beam waist w0. A deterministic grid (log in P and |Delta|, linear in w0) is
followed by a Nelder-Mead refinement from the best feasible point. Every
evaluation lands in the audit trail.

Constraint slacks are 1 - lhs/rhs; a point is feasible when every slack is
>= 0:

    adiabatic    chi * Omega  <= |Delta|
    saturation   2 Omega^2 / (Gamma^2 + 4 Delta^2) <= s
    rwa          r * g_eff    <= omega_m
    rayleigh     L            <= pi w0^2 / lambda
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import minimize

from atomech.constants import SPEED_OF_LIGHT
from atomech.errors import NoFeasiblePoint
from atomech.params.derive import derive_from
from atomech.params.models import PhysicalParams, SearchBounds
from atomech.rates.rateset import RateSet, compute_rates, strong_coupling_ratios

logger = logging.getLogger(__name__)

CONSTRAINTS = ("adiabatic", "saturation", "rwa", "rayleigh")
BOUND_TOL = 1e-9


class Objective(str, Enum):
    MAX_C0 = "MaxC0"
    MAX_MIN_RATIO = "MaxMinRatio"


class Stage(str, Enum):
    SEED = "seed"
    GRID = "grid"
    REFINE = "refine"


class ConstraintSet(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    adiabatic_margin: float = Field(default=1.0, ge=1, description="chi")
    saturation_cap: float = Field(default=0.9, gt=0, lt=1, description="s")
    rwa_margin: float = Field(default=4.0, ge=1, description="r")
    ensemble_length_m: float = Field(default=3e-3, gt=0)


Point = tuple[float, float, float]


class SearchSpec(BaseModel):
    """Bounds are (min, max) on P (W), |Delta| (rad/s) and w0 (m)."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    power_W: tuple[float, float]
    detuning_Delta: tuple[float, float]
    waist_w0: tuple[float, float]
    objective: Objective = Objective.MAX_C0
    constraints: ConstraintSet = ConstraintSet()
    grid_points: int = Field(default=16, ge=2)
    refine: bool = True
    max_refine_evals: int = Field(default=600, ge=1)
    seed_points: list[Point] = Field(default_factory=list)

    @model_validator(mode="after")
    def _ordered_bounds(self) -> "SearchSpec":
        for name in ("power_W", "detuning_Delta", "waist_w0"):
            lo, hi = getattr(self, name)
            if not (0 < lo < hi):
                raise ValueError(f"{name} bounds must satisfy 0 < min < max, got ({lo}, {hi})")
        return self

    @classmethod
    def from_params(cls, params: PhysicalParams, **overrides) -> "SearchSpec":
        """Bounds and margins from the config's [search] section (or defaults),
        seeded with the config's own operating point."""
        sb = params.search or SearchBounds()
        laser = params.laser
        data = {
            "power_W": sb.power_W,
            "detuning_Delta": tuple(abs(x) for x in sb.detuning_Delta),
            "waist_w0": sb.waist_w0,
            "objective": Objective(sb.objective),
            "constraints": ConstraintSet(
                adiabatic_margin=sb.adiabatic_margin,
                saturation_cap=sb.saturation_cap,
                rwa_margin=sb.rwa_margin,
                ensemble_length_m=params.geometry.ensemble_length_m,
            ),
            "seed_points": [(laser.power_W, abs(laser.detuning_Delta), laser.waist_w0)],
        }
        data.update(overrides)
        return cls.model_validate(data)

    def contains(self, point: Point) -> bool:
        return all(
            lo * (1 - BOUND_TOL) <= x <= hi * (1 + BOUND_TOL)
            for x, (lo, hi) in zip(point, (self.power_W, self.detuning_Delta, self.waist_w0))
        )


@dataclass(frozen=True)
class Evaluation:
    point: Point
    objective: float
    feasible: bool
    slacks: dict[str, float]
    rates: Optional[RateSet] = None

    @property
    def tightest(self) -> tuple[str, float]:
        name = min(self.slacks, key=self.slacks.__getitem__)
        return name, self.slacks[name]


@dataclass(frozen=True)
class AuditRow:
    stage: Stage
    power_W: float
    detuning_Delta: float
    waist_w0: float
    objective: float
    feasible: bool
    slacks: dict[str, float]

    def as_record(self) -> dict:
        row = {
            "stage": self.stage.value,
            "power_W": self.power_W,
            "detuning_Delta": self.detuning_Delta,
            "waist_w0": self.waist_w0,
            "objective": self.objective if math.isfinite(self.objective) else None,
            "feasible": self.feasible,
        }
        row.update({f"slack_{k}": self.slacks[k] for k in CONSTRAINTS})
        return row


@dataclass
class OptimizationResult:
    best: Evaluation
    best_grid_objective: float
    objective: Objective
    audit: list[AuditRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        P, Delta, w0 = self.best.point
        assert self.best.rates is not None
        return {
            "objective": self.objective.value,
            "best_objective": self.best.objective,
            "best_grid_objective": self.best_grid_objective,
            "power_W": P,
            "detuning_Delta": Delta,
            "waist_w0": w0,
            "slacks": self.best.slacks,
            "rates": self.best.rates.model_dump(),
            "evaluations": len(self.audit),
        }


def constraint_slacks(params: PhysicalParams, rates: RateSet, c: ConstraintSet) -> dict[str, float]:
    d = derive_from(params)
    Omega = d.rabi_minus
    Delta = abs(params.laser.detuning_Delta)
    Gamma = params.atoms.gamma_spont
    wavelength = 2.0 * math.pi * SPEED_OF_LIGHT / params.laser.omega_L
    rayleigh_range = math.pi * params.laser.waist_w0**2 / wavelength
    saturation = 2.0 * Omega**2 / (Gamma**2 + 4.0 * Delta**2)
    return {
        "adiabatic": 1.0 - c.adiabatic_margin * Omega / Delta,
        "saturation": 1.0 - saturation / c.saturation_cap,
        "rwa": 1.0 - c.rwa_margin * rates.g_eff / rates.omega_m,
        "rayleigh": 1.0 - c.ensemble_length_m / rayleigh_range,
    }


def objective_value(rates: RateSet, objective: Objective) -> float:
    if objective is Objective.MAX_C0:
        return rates.coop_C0
    return min(strong_coupling_ratios(rates))


def evaluate(point: Point, params: PhysicalParams, spec: SearchSpec) -> Evaluation:
    """Objective, rates and slacks at one (P, |Delta|, w0); infeasible points
    score -inf. The detuning sign is taken from ``params``."""
    if not spec.contains(point):
        raise ValueError(f"point {point} outside search bounds")
    P, Delta, w0 = point
    sign = 1.0 if params.laser.detuning_Delta >= 0 else -1.0
    at = params.with_point(P, sign * Delta, w0)
    rates = compute_rates(at)
    slacks = constraint_slacks(at, rates, spec.constraints)
    value = objective_value(rates, spec.objective)
    feasible = all(s >= 0 for s in slacks.values()) and math.isfinite(value)
    return Evaluation(
        point=(float(P), float(Delta), float(w0)),
        objective=value if feasible else -math.inf,
        feasible=feasible,
        slacks=slacks,
        rates=rates,
    )


def grid_points(spec: SearchSpec) -> list[Point]:
    n = spec.grid_points
    powers = np.geomspace(*spec.power_W, n)
    detunings = np.geomspace(*spec.detuning_Delta, n)
    waists = np.linspace(*spec.waist_w0, n)
    return [(float(p), float(d), float(w)) for p, d, w in itertools.product(powers, detunings, waists)]


class _UnitCube:
    """Maps (P, |Delta|, w0) onto [0, 1]^3: log for P and |Delta|, linear for w0."""

    def __init__(self, spec: SearchSpec):
        self.lo = np.array([math.log(spec.power_W[0]), math.log(spec.detuning_Delta[0]), spec.waist_w0[0]])
        self.hi = np.array([math.log(spec.power_W[1]), math.log(spec.detuning_Delta[1]), spec.waist_w0[1]])

    def to_unit(self, point: Point) -> np.ndarray:
        x = np.array([math.log(point[0]), math.log(point[1]), point[2]])
        return (x - self.lo) / (self.hi - self.lo)

    def from_unit(self, u: np.ndarray) -> Point:
        x = self.lo + np.clip(u, 0.0, 1.0) * (self.hi - self.lo)
        return (math.exp(x[0]), math.exp(x[1]), float(x[2]))


def _no_feasible(evaluations: list[Evaluation]) -> NoFeasiblePoint:
    # least-violated point, reported by its worst constraint
    nearest = max(evaluations, key=lambda e: e.tightest[1])
    name, slack = nearest.tightest
    return NoFeasiblePoint(name, slack)


def optimize(spec: SearchSpec, params: PhysicalParams) -> OptimizationResult:
    """Grid scan plus simplex refinement.

    Raises:
        NoFeasiblePoint: no seed or grid point satisfies the constraints
    """
    audit: list[AuditRow] = []
    evaluations: list[Evaluation] = []

    def record(e: Evaluation, stage: Stage) -> Evaluation:
        evaluations.append(e)
        audit.append(AuditRow(stage, *e.point, e.objective, e.feasible, e.slacks))
        return e

    for seed in spec.seed_points:
        if spec.contains(seed):
            record(evaluate(seed, params, spec), Stage.SEED)
        else:
            logger.warning("seed point %s outside search bounds, skipped", seed)

    for point in grid_points(spec):
        record(evaluate(point, params, spec), Stage.GRID)

    feasible = [e for e in evaluations if e.feasible]
    if not feasible:
        raise _no_feasible(evaluations)
    best = max(feasible, key=lambda e: e.objective)
    best_grid = best.objective
    logger.info("grid stage: %d/%d feasible, best objective %.6g",
                len(feasible), len(evaluations), best_grid)

    if spec.refine:
        cube = _UnitCube(spec)
        tracker = {"best": best}

        def penalized(u: np.ndarray) -> float:
            if np.any(u < 0.0) or np.any(u > 1.0):
                return 1e6 * (1.0 + float(np.sum(np.clip(-u, 0, None) + np.clip(u - 1, 0, None))))
            e = record(evaluate(cube.from_unit(u), params, spec), Stage.REFINE)
            if not e.feasible:
                return 1e3 * (1.0 - sum(min(s, 0.0) for s in e.slacks.values()))
            if e.objective > tracker["best"].objective:
                tracker["best"] = e
            return -e.objective

        u0 = np.clip(cube.to_unit(best.point), 0.0, 1.0)
        simplex = [u0]
        for i in range(3):
            step = np.zeros(3)
            step[i] = 0.05 if u0[i] <= 0.95 else -0.05
            simplex.append(u0 + step)
        minimize(
            penalized,
            u0,
            method="Nelder-Mead",
            options={
                "initial_simplex": np.array(simplex),
                "maxfev": spec.max_refine_evals,
                "xatol": 1e-6,
                "fatol": 1e-9 * max(abs(best_grid), 1.0),
            },
        )
        best = tracker["best"]
        logger.info("refine stage: best objective %.6g", best.objective)

    return OptimizationResult(best=best, best_grid_objective=best_grid, objective=spec.objective, audit=audit)
