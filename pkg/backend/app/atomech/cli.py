"""atomech - Command Line

Exit codes: 0 success, 1 usage / config / numerical error, 2 verification
failed. Frequencies in outputs are 2pi*Hz (keys ``*_2pi_hz``) unless
``--radians`` is given; frequency flags follow the same rule, or take a unit
string such as "2.5 MHz".
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, NoReturn, Optional

import numpy as np
import typer
from pydantic import ValidationError
from rich import print
from rich.table import Table

from atomech.artifacts import ArtifactWriter
from atomech.collision import CascadeConfig, verify_elimination
from atomech.constants import TWO_PI, parse_angular_frequency
from atomech.core.config import settings
from atomech.errors import AtomechError, ConfigError
from atomech.fock import TruncatedSpace, verify_gaussian
from atomech.gaussian import (
    HamiltonianChoice,
    HamiltonianVariant,
    Mode,
    build_model,
    cooling_curve,
    instability_cutoff,
    lyapunov_residual,
    occupation,
    spectral_abscissa,
    steady_state,
    strong_coupling_sweep,
)
from atomech.governance import build_manifest, run_reference_audit
from atomech.governance.gate import GateResult
from atomech.logging_config import setup_logging
from atomech.optimizer import CONSTRAINTS, Objective, SearchSpec, optimize
from atomech.params import derive_from, example_config, load_physical_params
from atomech.params.loader import config_sha256, resolve_config_path
from atomech.params.models import PhysicalParams
from atomech.rates import compute_rates, critical_coupling, resonance_mismatch, stability_inequality
from atomech.rates.couplings import required_omega_at
from atomech.rates.rateset import FREQUENCY_FIELDS, RateSet, strong_coupling_ratios

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="atomech - hybrid atom-optomechanics simulator",
)


# ============================================================
# console helpers
# ============================================================
def _info(msg: str) -> None:
    print(f"[cyan][atomech][/cyan] {msg}")


def _ok(msg: str) -> None:
    print(f"[green][atomech][OK][/green] {msg}")


def _fail(msg: str, code: int = 1) -> NoReturn:
    print(f"[red][atomech][FAIL][/red] {msg}")
    raise typer.Exit(code)


# ============================================================
# shared plumbing
# ============================================================
ConfigOption = typer.Option(None, "--config", "-c", help="TOML config (default: $ATOMECH_CONFIG or zipper.toml)")
OutOption = typer.Option(None, "--out", "-o", help="Artifact directory (default: $ATOMECH_ARTIFACTS_DIR)")
RadiansOption = typer.Option(False, "--radians", help="Frequencies in rad/s instead of 2pi*Hz")


class _Run:
    """Config, manifest and artifact writer of one invocation."""

    def __init__(self, subcommand: str, config: Optional[Path], out: Optional[Path], options: dict[str, Any]):
        path = resolve_config_path(config)
        try:
            self.params: PhysicalParams = load_physical_params(path)
        except ConfigError as e:
            _fail(str(e))
        self.path = path
        manifest = build_manifest(
            subcommand,
            config_path=path,
            config_sha256=config_sha256(path),
            options={k: (str(v) if isinstance(v, Path) else v) for k, v in options.items()},
            conventions={
                "area_convention": self.params.geometry.area_convention.value,
                "rabi_halving": self.params.conventions.rabi_halving,
            },
        )
        self.writer = ArtifactWriter(Path(out or settings.artifacts_dir), manifest)


def _unit_suffix(radians: bool) -> str:
    return "rad_s" if radians else "2pi_hz"


def _freq_out(value: float, radians: bool) -> float:
    return value if radians else value / TWO_PI


def _freq_in(value: str, radians: bool) -> float:
    """Flag value -> rad/s."""
    try:
        number = float(value)
    except ValueError:
        try:
            return parse_angular_frequency(value)
        except ValueError as e:
            _fail(str(e))
    return number if radians else TWO_PI * number


def _csv_floats(value: str) -> list[float]:
    try:
        return [float(x) for x in value.split(",") if x.strip()]
    except ValueError:
        _fail(f"expected comma-separated numbers, got {value!r}")


def _finite_or_none(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def _report_gate(result: GateResult) -> None:
    table = Table(title=result.reason)
    for col in ("check", "value", "target", "tolerance", "passed"):
        table.add_column(col)
    for row in result.summary_rows():
        table.add_row(
            row["check"], f"{row['value']:.6g}", f"{row['target']:.6g}",
            f"{row['tolerance']:.3g}", "yes" if row["passed"] else "[red]no[/red]",
        )
    print(table)
    if result.passed:
        _ok(result.reason)
    else:
        _fail(result.reason, code=result.exit_code)


def rates_payload(params: PhysicalParams, rates: RateSet, config: str, radians: bool) -> dict[str, Any]:
    unit = _unit_suffix(radians)
    r_m, r_at = strong_coupling_ratios(rates)
    omega_at_needed = required_omega_at(rates.omega_m, rates.detuning_sign * rates.omega_OL)
    frequencies = {f"{name}_{unit}": _freq_out(getattr(rates, name), radians) for name in FREQUENCY_FIELDS}
    frequencies[f"gamma_m_tot_{unit}"] = _freq_out(rates.gamma_m_tot, radians)
    frequencies[f"gamma_at_tot_{unit}"] = _freq_out(rates.gamma_at_tot, radians)
    frequencies[f"required_omega_at_{unit}"] = _freq_out(omega_at_needed, radians)
    frequencies[f"resonance_mismatch_{unit}"] = _freq_out(resonance_mismatch(params, rates), radians)
    return {
        "config": config,
        "units": "radians" if radians else "2pi_hz",
        "rates": {**frequencies, "g_m": rates.g_m, "g_at": rates.g_at},
        "coop_C0": _finite_or_none(rates.coop_C0),
        "coop_C": _finite_or_none(rates.coop_C),
        "N_m": rates.N_m,
        "stability": stability_inequality(
            rates.g_eff, rates.omega_m, rates.gamma_at_tot, params.conventions.marginal_band
        ).value,
        "strong_coupling": {
            "g_eff_over_gamma_m_tot": _finite_or_none(r_m),
            "g_eff_over_gamma_at_diff": _finite_or_none(r_at),
        },
        "derived": derive_from(params).model_dump(),
        "conventions": {
            "area_convention": params.geometry.area_convention.value,
            "rabi_halving": params.conventions.rabi_halving,
        },
    }


@app.callback()
def main(
    log_level: str = typer.Option(settings.log_level, "--log-level", help="Logging level"),
) -> None:
    setup_logging(log_level, settings.log_dir)


# ============================================================
# rates
# ============================================================
@app.command()
def rates(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    radians: bool = RadiansOption,
    audit: bool = typer.Option(False, "--audit", help="Also audit the packaged configs against published values"),
):
    """Print and write every rate of the configured operating point."""
    run = _Run("rates", config, out, {"radians": radians, "audit": audit})
    try:
        rs = compute_rates(run.params)
    except (AtomechError, ValueError) as e:
        _fail(str(e))
    payload = rates_payload(run.params, rs, str(run.path), radians)

    unit = _unit_suffix(radians)
    table = Table(title=f"rates ({run.path.name}, {unit})")
    table.add_column("quantity")
    table.add_column("value", justify="right")
    for key in ("g_eff", "gamma_m_diff", "gamma_at_diff", "gamma_m_th", "omega_OL"):
        table.add_row(key, f"{payload['rates'][f'{key}_{unit}']:.6g}")
    table.add_row("C0", f"{rs.coop_C0:.6g}")
    table.add_row("C", f"{rs.coop_C:.6g}")
    table.add_row("stability", payload["stability"])
    print(table)
    run.writer.json("rates.json", payload, schema="rates")

    if audit:
        params_by_name = {name: load_physical_params(example_config(name)) for name in ("zipper", "mim")}
        params_by_name[run.path.stem] = run.params
        report = run_reference_audit(params_by_name)
        run.writer.text("reference_audit.md", report.to_markdown())
        _report_gate(report.gate())
    _ok(f"artifacts in {run.writer.out_dir}")


# ============================================================
# steady-state
# ============================================================
@app.command("steady-state")
def steady_state_cmd(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    radians: bool = RadiansOption,
    variant: HamiltonianVariant = typer.Option(HamiltonianVariant.FULL_QUADRATURE, "--variant"),
    cool: Optional[float] = typer.Option(None, "--cool", help="Repump rate gamma_at_cool in 1/s (overrides config)"),
    detuned: bool = typer.Option(False, "--detuned", help="Keep the configured omega_at mismatch as spin detuning"),
):
    """Gaussian steady state of the configured operating point."""
    run = _Run("steady-state", config, out, {"variant": variant.value, "cool": cool, "detuned": detuned})
    try:
        rs = compute_rates(run.params)
        if cool is not None:
            rs = rs.model_copy(update={"gamma_at_cool": cool})
        delta = resonance_mismatch(run.params, rs) if detuned else 0.0
        model = build_model(HamiltonianChoice(variant=variant, delta_resonance=delta), rs)
        state = steady_state(model)
        n_m, n_s = occupation(state, Mode.MECHANICS), occupation(state, Mode.SPIN)
    except (AtomechError, ValueError) as e:
        _fail(str(e))
    payload = {
        "config": str(run.path),
        "variant": variant.value,
        "n_m": n_m,
        "n_s": n_s,
        "mean": state.mean.tolist(),
        "cov": state.cov.tolist(),
        "spectral_abscissa": _freq_out(spectral_abscissa(model), radians),
        "lyapunov_residual": lyapunov_residual(model, state.cov),
        "delta_resonance": _freq_out(delta, radians),
    }
    run.writer.json("steady_state.json", payload, schema="steady_state")
    _ok(f"n_m = {n_m:.6g}, n_s = {n_s:.6g}")


# ============================================================
# sweep / cool-curve
# ============================================================
def _grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0 or stop < start:
        _fail("grid needs step > 0 and stop >= start")
    n = int(round((stop - start) / step)) + 1
    return [float(x) for x in np.linspace(start, start + (n - 1) * step, n)]


@app.command()
def sweep(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    radians: bool = RadiansOption,
    gmin: str = typer.Option("0.1e6", "--gmin", help="Smallest g_eff"),
    gmax: str = typer.Option("10e6", "--gmax", help="Largest g_eff"),
    step: str = typer.Option("0.1e6", "--step", help="g_eff step"),
):
    """Strong-coupling ratios and C0 against g_eff (CSV)."""
    run = _Run("sweep", config, out, {"gmin": gmin, "gmax": gmax, "step": step, "radians": radians})
    grid = _grid(_freq_in(gmin, radians), _freq_in(gmax, radians), _freq_in(step, radians))
    try:
        points = strong_coupling_sweep(compute_rates(run.params), grid)
    except (AtomechError, ValueError) as e:
        _fail(str(e))
    unit = _unit_suffix(radians)
    rows = [
        {
            f"g_eff_{unit}": _freq_out(p.g_eff, radians),
            "ratio_mech": p.ratio_mech,
            "ratio_atom": p.ratio_atom,
            "coop_C0": p.coop_C0,
        }
        for p in points
    ]
    run.writer.csv("strong_coupling.csv", rows, list(rows[0]))
    _ok(f"{len(rows)} points")


@app.command("cool-curve")
def cool_curve(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    radians: bool = RadiansOption,
    cool: str = typer.Option("0,5e6,2e7", "--cool", help="Comma-separated repump rates in 1/s"),
    gmin: str = typer.Option("0.1e6", "--gmin", help="Smallest g_eff"),
    gmax: str = typer.Option("10e6", "--gmax", help="Largest g_eff"),
    step: str = typer.Option("0.1e6", "--step", help="g_eff step"),
    variant: HamiltonianVariant = typer.Option(HamiltonianVariant.FULL_QUADRATURE, "--variant"),
    as_json: bool = typer.Option(False, "--json", help="Also write cool_curve.json"),
):
    """Steady-state mechanical occupation and cooperativity C against g_eff for several
    repump rates (CSV, optionally JSON)."""
    options = {"cool": cool, "gmin": gmin, "gmax": gmax, "step": step,
               "variant": variant.value, "radians": radians, "json": as_json}
    run = _Run("cool-curve", config, out, options)
    cools = _csv_floats(cool)
    if not cools:
        _fail("--cool needs at least one rate")
    grid = _grid(_freq_in(gmin, radians), _freq_in(gmax, radians), _freq_in(step, radians))
    try:
        base = compute_rates(run.params)
        points = cooling_curve(base, grid, cools, h=HamiltonianChoice(variant=variant))
    except (AtomechError, ValueError) as e:
        _fail(str(e))

    unit = _unit_suffix(radians)
    rows = [
        {
            f"g_eff_{unit}": _freq_out(p.g_eff, radians),
            "gamma_at_cool": p.gamma_cool,
            "n_ss": p.n_ss,
            "stable": p.stable,
            "spectral_abscissa": _finite_or_none(p.spectral_abscissa),
            "coop_C": _finite_or_none(p.coop_C),
        }
        for p in points
    ]
    run.writer.csv("cool_curve.csv", rows, list(rows[0]))
    if as_json:
        payload = {
            "config": str(run.path),
            "variant": variant.value,
            "units": "radians" if radians else "2pi_hz",
            "points": [
                {
                    "g_eff": row[f"g_eff_{unit}"],
                    **{k: v for k, v in row.items() if k != f"g_eff_{unit}"},
                    "error": p.error,
                }
                for row, p in zip(rows, points)
            ],
        }
        run.writer.json("cool_curve.json", payload, schema="cool_curve")

    table = Table(title="cooling")
    for col in ("gamma_at_cool (1/s)", "min n_ss", f"at g_eff ({unit})", f"cutoff ({unit})", f"g_crit ({unit})"):
        table.add_column(col)
    for c in cools:
        stable = [p for p in points if p.gamma_cool == c and p.n_ss is not None]
        best = min(stable, key=lambda p: p.n_ss) if stable else None
        cutoff = instability_cutoff(points, c)
        g_crit = critical_coupling(base.omega_m, base.gamma_at_diff + c)
        table.add_row(
            f"{c:.3g}",
            f"{best.n_ss:.4g}" if best else "-",
            f"{_freq_out(best.g_eff, radians):.4g}" if best else "-",
            f"{_freq_out(cutoff, radians):.4g}" if cutoff is not None else "-",
            f"{_freq_out(g_crit, radians):.4g}",
        )
    print(table)
    _ok(f"{len(rows)} points")


# ============================================================
# optimize
# ============================================================
@app.command("optimize")
def optimize_cmd(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    radians: bool = RadiansOption,
    objective: Optional[Objective] = typer.Option(None, "--objective", help="Override the config objective"),
    grid_points: int = typer.Option(16, "--grid-points", min=2, help="Grid points per axis"),
    refine: bool = typer.Option(True, "--refine/--no-refine", help="Nelder-Mead refinement"),
):
    """Constrained search over (P, Delta, w0); JSON optimum plus CSV audit trail."""
    options = {"objective": objective.value if objective else None, "grid_points": grid_points,
               "refine": refine, "radians": radians}
    run = _Run("optimize", config, out, options)
    overrides: dict[str, Any] = {"grid_points": grid_points, "refine": refine}
    if objective is not None:
        overrides["objective"] = objective
    try:
        spec = SearchSpec.from_params(run.params, **overrides)
        result = optimize(spec, run.params)
    except ValidationError as e:
        _fail(f"invalid search settings: {e.errors()[0]['msg']}")
    except AtomechError as e:
        _fail(str(e))

    payload = result.to_dict()
    payload["config"] = str(run.path)
    run.writer.json("optimize.json", payload, schema="optimize")
    fieldnames = ["stage", "power_W", "detuning_Delta", "waist_w0", "objective", "feasible"]
    fieldnames += [f"slack_{k}" for k in CONSTRAINTS]
    run.writer.csv("optimize_audit.csv", (row.as_record() for row in result.audit), fieldnames)

    P, Delta, w0 = result.best.point
    _info(f"P = {P:.4g} W, Delta = {_freq_out(Delta, radians):.4g} {_unit_suffix(radians)}, w0 = {w0:.4g} m")
    _ok(f"{spec.objective.value} = {result.best.objective:.6g} ({len(result.audit)} evaluations)")


# ============================================================
# verify-gaussian / verify-elimination
# ============================================================
@app.command("verify-gaussian")
def verify_gaussian_cmd(
    out: Optional[Path] = OutOption,
    dim_mech: int = typer.Option(10, "--dim-mech", min=2),
    dim_spin: int = typer.Option(5, "--dim-spin", min=2),
    convergence: bool = typer.Option(True, "--convergence/--no-convergence",
                                     help="Repeat the first point with two more mechanical levels"),
):
    """Gaussian engine vs. truncated-Fock oracle at the default operating points."""
    manifest = build_manifest("verify-gaussian", options={"dim_mech": dim_mech, "dim_spin": dim_spin,
                                                          "convergence": convergence})
    writer = ArtifactWriter(Path(out or settings.artifacts_dir), manifest)
    try:
        space = TruncatedSpace(dim_mech, dim_spin)
        refined = TruncatedSpace(dim_mech + 2, dim_spin) if convergence else None
        result = verify_gaussian(space, refined)
    except (AtomechError, ValueError) as e:
        _fail(str(e))
    writer.json("verify_gaussian.json", result.to_dict(), schema="verification")
    _report_gate(result.gate)


@app.command("verify-elimination")
def verify_elimination_cmd(
    out: Optional[Path] = OutOption,
    phase_shift: str = typer.Option("on", "--phase-shift", help="on | off"),
    dt: Optional[float] = typer.Option(None, "--dt", help="Collision duration (default 2e-3 on, 1e-3 off)"),
    bins: int = typer.Option(6000, "--bins", min=1, help="Number of collisions"),
    g_m: Optional[float] = typer.Option(None, "--g-m", help="Mirror coupling (default 0.2 on, 0.1 off)"),
    g_at_sqrt_n: Optional[float] = typer.Option(None, "--g-at-sqrt-n", help="sqrt(N) g_at (default 0.3 on, 1.0 off)"),
    dim: int = typer.Option(4, "--dim", min=2, help="Fock levels per system mode"),
):
    """Fit the collision-model generator and compare with the eliminated master equation."""
    if phase_shift not in ("on", "off"):
        _fail(f"--phase-shift must be 'on' or 'off', got {phase_shift!r}")
    on = phase_shift == "on"
    cfg_data = {
        "dt_bin": dt if dt is not None else (2e-3 if on else 1e-3),
        "g_m": g_m if g_m is not None else (0.2 if on else 0.1),
        "g_at_sqrt_N": g_at_sqrt_n if g_at_sqrt_n is not None else (0.3 if on else 1.0),
        "phase_shift_enabled": on,
        "n_bins": bins,
        "dim_mech": dim,
        "dim_spin": dim,
    }
    manifest = build_manifest("verify-elimination", options=cfg_data)
    writer = ArtifactWriter(Path(out or settings.artifacts_dir), manifest)
    try:
        cfg = CascadeConfig.model_validate(cfg_data)
        report = verify_elimination(cfg)
    except ValidationError as e:
        _fail(f"invalid collision settings: {e.errors()[0]['msg']}")
    except AtomechError as e:
        _fail(str(e))
    payload = {
        "verification": "elimination",
        "decision": report.gate.decision.value,
        "reason": report.gate.reason,
        "checks": report.gate.summary_rows(),
        "result": report.to_dict(),
    }
    writer.json("verify_elimination.json", payload, schema="verification")
    _report_gate(report.gate)


if __name__ == "__main__":
    app()
