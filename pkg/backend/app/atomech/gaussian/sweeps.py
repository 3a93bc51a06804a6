"""atomech - Parameter Sweeps

Cooling curves, strong-coupling sweeps and the single-excitation swap time.
Grid points are independent; a failing point is recorded and the sweep
carries on.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from atomech.errors import AtomechError, Unstable
from atomech.gaussian.model import HamiltonianChoice, HamiltonianVariant, Mode, build_model
from atomech.gaussian.solver import occupation, spectral_abscissa, steady_state
from atomech.rates.rateset import RateSet, strong_coupling_ratios

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoolingPoint:
    g_eff: float
    gamma_cool: float
    n_ss: Optional[float]
    stable: bool
    spectral_abscissa: float
    coop_C: float = math.nan
    error: Optional[str] = None


@dataclass(frozen=True)
class StrongCouplingPoint:
    g_eff: float
    ratio_mech: float
    ratio_atom: float
    coop_C0: float


def mechanical_occupation(
    rates: RateSet,
    h: HamiltonianChoice | None = None,
    N_m: float | None = None,
) -> float:
    """Steady-state n_m for one rate set."""
    model = build_model(h or HamiltonianChoice(), rates, N_m)
    return occupation(steady_state(model), Mode.MECHANICS)


def cooling_curve(
    base: RateSet,
    geff_grid: Sequence[float],
    cool_rates: Sequence[float],
    N_m: float | None = None,
    h: HamiltonianChoice | None = None,
) -> list[CoolingPoint]:
    """n_ss and the sympathetic cooperativity C over a (g_eff, gamma_at_cool) grid;
    unstable points are kept and marked."""
    if not geff_grid or not cool_rates:
        raise ValueError("cooling curve needs non-empty g_eff and cooling-rate grids")
    h = h or HamiltonianChoice(variant=HamiltonianVariant.FULL_QUADRATURE)
    N_m = base.N_m if N_m is None else N_m

    points: list[CoolingPoint] = []
    for cool in cool_rates:
        for g in geff_grid:
            rates = base.model_copy(update={"g_eff": float(g), "gamma_at_cool": float(cool)})
            try:
                model = build_model(h, rates, N_m)
                abscissa = spectral_abscissa(model)
                n = occupation(steady_state(model), Mode.MECHANICS)
                points.append(
                    CoolingPoint(float(g), float(cool), n, True, abscissa, coop_C=rates.coop_C)
                )
            except Unstable as e:
                points.append(
                    CoolingPoint(
                        float(g), float(cool), None, False, e.spectral_abscissa,
                        coop_C=rates.coop_C,
                    )
                )
            except (AtomechError, ValueError) as e:
                logger.warning("cooling point g=%.4g cool=%.4g failed: %s", g, cool, e)
                points.append(
                    CoolingPoint(
                        float(g), float(cool), None, False, math.nan,
                        coop_C=rates.coop_C, error=str(e),
                    )
                )
    return points


def instability_cutoff(points: Iterable[CoolingPoint], gamma_cool: float) -> Optional[float]:
    """Smallest g_eff flagged unstable for one cooling rate (None if all stable)."""
    unstable = [p.g_eff for p in points if p.gamma_cool == gamma_cool and not p.stable]
    return min(unstable) if unstable else None


def strong_coupling_sweep(base: RateSet, geff_grid: Sequence[float]) -> list[StrongCouplingPoint]:
    """g_eff/gamma_m_tot, g_eff/gamma_at_diff and C0 while only g_eff varies
    (equivalently, the atomic density)."""
    out = []
    for g in geff_grid:
        rates = base.model_copy(update={"g_eff": float(g)})
        r_m, r_at = strong_coupling_ratios(rates)
        out.append(StrongCouplingPoint(float(g), r_m, r_at, rates.coop_C0))
    return out


def rabi_exchange_period(rates: RateSet) -> float:
    """pi / (2 g_eff): full swap of one excitation under the lossless beamsplitter."""
    HamiltonianChoice(variant=HamiltonianVariant.BEAMSPLITTER_RWA).require_valid(rates)
    if rates.g_eff <= 0:
        raise ValueError("swap period needs g_eff > 0")
    return math.pi / (2.0 * rates.g_eff)
