"""
CLI Tests

Each subcommand through typer's CliRunner, artifacts into tmp_path.
"""

import csv
from pathlib import Path

import pytest

from atomech.artifacts import read_json
from atomech.cli import app


def _csv_rows(path: Path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def _resonant_config(tmp_path: Path) -> Path:
    """Zipper config with the laser on atomic resonance (Delta = 0)"""
    from atomech.params import example_config

    cfg = tmp_path / "resonant.toml"
    text = example_config("zipper").read_text()
    cfg.write_text(text.replace('detuning_Delta = "2pi*15 MHz"', "detuning_Delta = 0.0"))
    return cfg


class TestRates:
    """atomech rates"""

    def test_zipper_rates(self, runner, tmp_path: Path):
        """Default config writes rates.json with its manifest"""
        result = runner.invoke(app, ["rates", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "rates.json")
        assert payload["units"] == "2pi_hz"
        assert payload["rates"]["g_eff_2pi_hz"] == pytest.approx(3.07e6, rel=5e-3)
        assert payload["stability"] == "Stable"
        assert payload["schema_version"] == "1.0.0"
        manifest = read_json(tmp_path / "rates.manifest.json")
        assert manifest["subcommand"] == "rates"
        assert manifest["config_sha256"].startswith("sha256:")
        assert manifest["conventions"]["rabi_halving"] is True

    def test_radians(self, runner, tmp_path: Path):
        """--radians switches every frequency key"""
        result = runner.invoke(app, ["rates", "--radians", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "rates.json")
        assert payload["units"] == "radians"
        assert "g_eff_rad_s" in payload["rates"]

    def test_audit(self, runner, tmp_path: Path):
        """--audit writes the markdown report and passes the gate"""
        result = runner.invoke(app, ["rates", "--audit", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        report = (tmp_path / "reference_audit.md").read_text()
        assert report.startswith("# Reference Audit")
        assert (tmp_path / "reference_audit.manifest.json").exists()

    def test_missing_config(self, runner, tmp_path: Path):
        """Unreadable config: exit 1 and no artifacts"""
        out = tmp_path / "out"
        result = runner.invoke(app, ["rates", "--config", str(tmp_path / "nope.toml"), "--out", str(out)])
        assert result.exit_code == 1
        assert "not found" in result.output
        assert not out.exists()

    def test_env_config(self, runner, tmp_path: Path, monkeypatch):
        """ATOMECH_CONFIG selects the config when --config is absent"""
        from atomech.params import example_config

        monkeypatch.setenv("ATOMECH_CONFIG", str(example_config("mim")))
        result = runner.invoke(app, ["rates", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert read_json(tmp_path / "rates.json")["config"].endswith("mim.toml")


class TestSteadyState:
    """atomech steady-state"""

    def test_cooled(self, runner, tmp_path: Path):
        """Strong repumping at the zipper point leaves few quanta"""
        result = runner.invoke(app, ["steady-state", "--cool", "2e7", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "steady_state.json")
        assert payload["variant"] == "FullQuadrature"
        assert payload["n_m"] > 0
        assert payload["lyapunov_residual"] <= 1e-10

    def test_rwa_refused_at_strong_coupling(self, runner, tmp_path: Path):
        """Numerical errors exit 1"""
        cfg = tmp_path / "strong.toml"
        from atomech.params import example_config

        text = example_config("zipper").read_text().replace('omega_m = "2pi*10 MHz"', 'omega_m = "2pi*2 MHz"')
        cfg.write_text(text)
        result = runner.invoke(app, ["steady-state", "--config", str(cfg), "--variant", "BeamsplitterRWA",
                                     "--out", str(tmp_path / "out")])
        assert result.exit_code == 1


class TestSweeps:
    """atomech sweep / cool-curve"""

    def test_sweep_csv(self, runner, tmp_path: Path):
        """Three grid points, header first"""
        result = runner.invoke(app, ["sweep", "--gmin", "1e6", "--gmax", "3e6", "--step", "1e6",
                                     "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = _csv_rows(tmp_path / "strong_coupling.csv")
        assert [float(r["g_eff_2pi_hz"]) for r in rows] == pytest.approx([1e6, 2e6, 3e6])
        assert set(rows[0]) == {"g_eff_2pi_hz", "ratio_mech", "ratio_atom", "coop_C0"}

    def test_cool_curve_csv(self, runner, tmp_path: Path):
        """One row per (g_eff, cooling rate)"""
        result = runner.invoke(app, ["cool-curve", "--cool", "0,2e7", "--gmin", "1e6", "--gmax", "3e6",
                                     "--step", "1e6", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = _csv_rows(tmp_path / "cool_curve.csv")
        assert len(rows) == 6
        assert all(r["stable"] == "True" for r in rows)
        assert list(rows[0]) == ["g_eff_2pi_hz", "gamma_at_cool", "n_ss", "stable",
                                 "spectral_abscissa", "coop_C"]
        cooled = [float(r["coop_C"]) for r in rows if float(r["gamma_at_cool"]) > 0]
        bare = [float(r["coop_C"]) for r in rows if float(r["gamma_at_cool"]) == 0]
        assert all(c < b for c, b in zip(cooled, bare))
        assert (tmp_path / "cool_curve.manifest.json").exists()
        assert not (tmp_path / "cool_curve.json").exists()

    def test_cool_curve_json(self, runner, tmp_path: Path):
        """--json mirrors the CSV rows into a schema-checked JSON artifact"""
        result = runner.invoke(app, ["cool-curve", "--cool", "0,2e7", "--gmin", "1e6", "--gmax", "2e6",
                                     "--step", "1e6", "--json", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "cool_curve.json")
        rows = _csv_rows(tmp_path / "cool_curve.csv")
        assert payload["units"] == "2pi_hz"
        assert payload["variant"] == "FullQuadrature"
        assert len(payload["points"]) == len(rows) == 4
        for point, row in zip(payload["points"], rows):
            assert point["g_eff"] == pytest.approx(float(row["g_eff_2pi_hz"]))
            assert point["coop_C"] == pytest.approx(float(row["coop_C"]))
            assert point["error"] is None
        assert (tmp_path / "cool_curve.manifest.json").exists()

    def test_unit_strings(self, runner, tmp_path: Path):
        """Grid flags accept unit strings"""
        result = runner.invoke(app, ["sweep", "--gmin", "1 MHz", "--gmax", "2 MHz", "--step", "1 MHz",
                                     "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert len(_csv_rows(tmp_path / "strong_coupling.csv")) == 2

    def test_bad_grid(self, runner, tmp_path: Path):
        """Reversed bounds exit 1"""
        result = runner.invoke(app, ["sweep", "--gmin", "3e6", "--gmax", "1e6", "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_bad_cool_list(self, runner, tmp_path: Path):
        """Non-numeric cooling rates exit 1"""
        result = runner.invoke(app, ["cool-curve", "--cool", "fast", "--out", str(tmp_path)])
        assert result.exit_code == 1


class TestRateFailures:
    """Rate computation errors end the run cleanly"""

    @pytest.mark.parametrize("argv", [
        ["steady-state"],
        ["sweep", "--gmin", "1e6", "--gmax", "2e6", "--step", "1e6"],
        ["cool-curve", "--cool", "0", "--gmin", "1e6", "--gmax", "2e6", "--step", "1e6"],
    ])
    def test_zero_detuning_exits_one(self, runner, tmp_path: Path, argv):
        """Delta = 0 is reported, exits 1 and writes nothing"""
        out = tmp_path / "out"
        result = runner.invoke(app, [*argv, "--config", str(_resonant_config(tmp_path)), "--out", str(out)])
        assert result.exit_code == 1
        assert isinstance(result.exception, SystemExit)
        assert "Traceback" not in result.output
        assert "detuning Delta must be non-zero" in result.output
        assert not out.exists()


class TestOptimize:
    """atomech optimize"""

    def test_small_grid(self, runner, tmp_path: Path):
        """JSON optimum plus CSV audit trail"""
        result = runner.invoke(app, ["optimize", "--grid-points", "3", "--no-refine", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "optimize.json")
        assert payload["objective"] == "MaxC0"
        assert payload["best_objective"] > 0
        rows = _csv_rows(tmp_path / "optimize_audit.csv")
        assert len(rows) == payload["evaluations"] == 28
        assert rows[0]["stage"] == "seed"


class TestVerify:
    """verify-* subcommands"""

    def test_bad_phase_shift(self, runner, tmp_path: Path):
        """--phase-shift takes on or off"""
        result = runner.invoke(app, ["verify-elimination", "--phase-shift", "maybe", "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_hierarchy_violation(self, runner, tmp_path: Path):
        """A coarse bin length exits 1 with the reason"""
        result = runner.invoke(app, ["verify-elimination", "--dt", "0.5", "--out", str(tmp_path)])
        assert result.exit_code == 1
        assert "dt_bin too coarse" in result.output

    @pytest.mark.slow
    def test_verify_elimination(self, runner, tmp_path: Path):
        """Phase shift on passes and writes the verification artifact"""
        result = runner.invoke(app, ["verify-elimination", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = read_json(tmp_path / "verify_elimination.json")
        assert payload["verification"] == "elimination"
        assert payload["decision"] == "PASS"

    @pytest.mark.slow
    def test_verify_gaussian(self, runner, tmp_path: Path):
        """Oracle comparison passes at the default truncation"""
        result = runner.invoke(app, ["verify-gaussian", "--no-convergence", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert read_json(tmp_path / "verify_gaussian.json")["decision"] == "PASS"

    def test_cap_exceeded(self, runner, tmp_path: Path):
        """Oversized truncation exits 1"""
        result = runner.invoke(app, ["verify-gaussian", "--dim-mech", "33", "--dim-spin", "2",
                                     "--out", str(tmp_path)])
        assert result.exit_code == 1
