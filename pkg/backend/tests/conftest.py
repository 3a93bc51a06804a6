"""
atomech test configuration

Packaged example configs, cache isolation and a CLI runner.
"""
import pytest
from typer.testing import CliRunner

from atomech.constants import TWO_PI
from atomech.params import clear_params_cache, example_config, load_physical_params
from atomech.rates import RateSet


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch, tmp_path):
    """No test reads a developer's ATOMECH_* environment or writes into the repo."""
    for name in ("ATOMECH_CONFIG", "ATOMECH_REFERENCE_PATH"):
        monkeypatch.delenv(name, raising=False)
    clear_params_cache()
    yield
    clear_params_cache()


@pytest.fixture
def zipper_params():
    return load_physical_params(example_config("zipper"))


@pytest.fixture
def mim_params():
    return load_physical_params(example_config("mim"))


@pytest.fixture
def table_rates():
    """Published zipper rate table (omega_m = 2pi*10 MHz, Q = 1e5)."""
    omega_m = TWO_PI * 10e6
    gamma_m = omega_m / 1e5
    return RateSet(
        g_eff=TWO_PI * 2.5e6,
        gamma_m_diff=TWO_PI * 541e3,
        gamma_at_diff=TWO_PI * 143e3,
        gamma_m_th=TWO_PI * 844e3,
        omega_m=omega_m,
        gamma_m=gamma_m,
    )


@pytest.fixture
def runner():
    return CliRunner()
