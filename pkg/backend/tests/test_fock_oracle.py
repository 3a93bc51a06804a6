"""
Fock Oracle Tests

Dense truncated-space cross-checks of the Gaussian engine.
"""

import math

import numpy as np
import pytest

from atomech.errors import CapExceeded, DegenerateSteadyState, TruncationSuspect
from atomech.fock import (
    OperatingPoint,
    TruncatedDensityOperator,
    TruncatedSpace,
    annihilation,
    build_liouvillian,
    compare_with_gaussian,
    default_operating_points,
    evolve_fock,
    lindblad_dissipator,
    steady_state_nullspace,
    swap_residual,
    swap_time,
    truncation_check,
    verify_gaussian,
)
from atomech.gaussian import HamiltonianChoice, HamiltonianVariant
from atomech.governance import GateDecision, VerificationGate
from atomech.rates import RateSet

FULL = HamiltonianVariant.FULL_QUADRATURE
RWA = HamiltonianVariant.BEAMSPLITTER_RWA


class TestTruncatedSpace:
    """Operators and capacity guard"""

    def test_ladder_commutator_below_top_level(self):
        """[a, a^dag] = 1 except at the truncation edge"""
        a = annihilation(5)
        comm = a @ a.conj().T - a.conj().T @ a
        np.testing.assert_allclose(np.diag(comm)[:-1].real, 1.0)
        assert comm[-1, -1].real == pytest.approx(-4.0)

    def test_hilbert_cap_exceeded(self):
        """65 x 64 = 4160 levels is over the default Hilbert cap of 4096"""
        with pytest.raises(CapExceeded):
            TruncatedSpace(65, 64)

    def test_hilbert_cap_is_inclusive(self):
        """64 x 64 = 4096 levels is exactly at the cap and accepted"""
        assert TruncatedSpace(64, 64).dim == 4096

    def test_dense_liouvillian_cap_exceeded(self):
        """(33 x 2)^2 superoperator is over the default dense cap"""
        space = TruncatedSpace(33, 2)
        with pytest.raises(CapExceeded):
            build_liouvillian(space, HamiltonianChoice(variant=FULL), RateSet(omega_m=1.0), N_m=0.0)

    def test_dense_cap_is_configurable(self):
        """An explicit cap admits larger superoperators"""
        space = TruncatedSpace(33, 2, liouville_cap=5000)
        space.require_dense()
        assert space.liouville_dim == 66**2

    def test_single_level_rejected(self):
        """Each mode needs two levels"""
        with pytest.raises(ValueError):
            TruncatedSpace(1, 4)

    def test_fock_state_occupations(self):
        """|2, 1> has n_m = 2 and n_s = 1"""
        space = TruncatedSpace(4, 3)
        rho = TruncatedDensityOperator(space.fock_state(2, 1), space)
        assert rho.occupation("mech") == pytest.approx(2.0)
        assert rho.occupation("spin") == pytest.approx(1.0)


class TestTruncatedDensityOperator:
    """Density-matrix validation"""

    def test_rejects_wrong_trace(self):
        """Trace must be one"""
        space = TruncatedSpace(2, 2)
        with pytest.raises(ValueError):
            TruncatedDensityOperator(2 * space.fock_state(0, 0), space)

    def test_rejects_non_hermitian(self):
        """Matrix must be Hermitian"""
        space = TruncatedSpace(2, 2)
        rho = space.fock_state(0, 0).copy()
        rho[0, 1] = 0.1
        with pytest.raises(ValueError):
            TruncatedDensityOperator(rho, space)

    def test_rejects_negative(self):
        """Matrix must be positive semidefinite"""
        space = TruncatedSpace(2, 2)
        rho = np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            TruncatedDensityOperator(rho, space)


class TestLiouvillian:
    """Superoperator structure"""

    def test_trace_preserving(self):
        """Tr(L rho) = 0 for every rho: the identity is a left null vector"""
        space = TruncatedSpace(3, 3)
        rates = RateSet(g_eff=0.2, gamma_m=0.1, gamma_m_th=0.05, gamma_m_diff=0.03,
                        gamma_at_diff=0.4, omega_m=1.0)
        L = build_liouvillian(space, HamiltonianChoice(variant=FULL), rates)
        identity = np.eye(space.dim).ravel()
        np.testing.assert_allclose(identity @ L, 0.0, atol=1e-12)

    def test_dissipator_of_lowering_operator(self):
        """D[a] drains |1> into |0> at unit rate"""
        a = annihilation(2)
        rho1 = np.diag([0.0, 1.0]).astype(complex).ravel()
        drho = (lindblad_dissipator(a) @ rho1).reshape(2, 2)
        np.testing.assert_allclose(np.diag(drho).real, [1.0, -1.0])


class TestSteadyStateNullspace:
    """Null-space steady states and their failure modes"""

    def test_degenerate_without_dissipation(self):
        """A purely Hamiltonian generator has many steady states"""
        space = TruncatedSpace(3, 3)
        L = build_liouvillian(space, HamiltonianChoice(variant=FULL), RateSet(omega_m=1.0), N_m=0.0)
        with pytest.raises(DegenerateSteadyState):
            steady_state_nullspace(L, space)

    def test_truncation_suspect_for_hot_mechanics(self):
        """N_m = 5 on four mechanical levels leaks into the top level"""
        point = OperatingPoint(variant=FULL, g_eff=0.1, gamma_m=0.1, N_m=5.0, gamma_s=0.5)
        space = TruncatedSpace(4, 3)
        L = build_liouvillian(space, point.hamiltonian(), point.rates(), point.N_m)
        with pytest.raises(TruncationSuspect) as exc:
            steady_state_nullspace(L, space)
        assert exc.value.mode == "mech"

    def test_thermal_mechanics(self):
        """Decoupled damped mechanics settles at n_m = N_m (up to truncation)"""
        point = OperatingPoint(variant=FULL, g_eff=0.0, gamma_m=0.1, N_m=0.2, gamma_s=0.5)
        space = TruncatedSpace(10, 2)
        L = build_liouvillian(space, point.hamiltonian(), point.rates(), point.N_m)
        rho = steady_state_nullspace(L, space)
        assert rho.occupation("mech") == pytest.approx(0.2, rel=1e-4)
        assert rho.occupation("spin") == pytest.approx(0.0, abs=1e-12)


class TestEvolveFock:
    """Propagation"""

    def test_zero_time(self):
        """t = 0 returns the input"""
        space = TruncatedSpace(2, 2)
        rho0 = TruncatedDensityOperator(space.fock_state(1, 0), space)
        h = HamiltonianChoice(variant=RWA)
        assert evolve_fock(space, h, RateSet(g_eff=0.1, omega_m=1.0), rho0, 0.0) is rho0

    def test_half_swap(self):
        """At pi/(4g) the excitation is shared equally"""
        space = TruncatedSpace(3, 3)
        g = 0.05
        rho0 = TruncatedDensityOperator(space.fock_state(1, 0), space)
        rho = evolve_fock(space, HamiltonianChoice(variant=RWA), RateSet(g_eff=g, omega_m=1.0),
                          rho0, math.pi / (4 * g))
        assert rho.occupation("mech") == pytest.approx(0.5, abs=1e-8)
        assert rho.occupation("spin") == pytest.approx(0.5, abs=1e-8)


class TestSwap:
    """Lossless beamsplitter swap"""

    def test_swap_time_matches_formula(self):
        """First minimum of <n_m> at pi/(2g) within 0.1%"""
        g = 0.05
        assert swap_time(TruncatedSpace(3, 3), g) == pytest.approx(math.pi / (2 * g), rel=1e-3)

    def test_swap_residual(self):
        """Mechanics is empty after a full swap"""
        g = 0.05
        assert swap_residual(TruncatedSpace(3, 3), g, math.pi / (2 * g)) <= 1e-3


class TestTruncationConvergence:
    """Refined-truncation check of the verification gate"""

    def test_half_percent_change_fails(self):
        """A 0.5% change in n_ss under two more mechanical levels fails the gate"""
        gate = VerificationGate("truncation")
        gate.add(truncation_check(1.0, 1.005))
        result = gate.evaluate()
        assert result.decision == GateDecision.FAIL
        assert result.exit_code == 2
        assert result.failed_checks == ["truncation_convergence"]

    def test_small_change_passes(self):
        """A 0.1% change stays inside the 0.2% bound"""
        assert truncation_check(1.0, 1.001).passed
        assert not truncation_check(2.0, 2.0 * 1.0025).passed


@pytest.mark.slow
class TestOracleComparison:
    """Gaussian engine against the dense oracle"""

    @pytest.mark.parametrize("index", range(len(default_operating_points())))
    def test_default_points_within_one_percent(self, index):
        """Low-occupation points agree within 1%"""
        point = default_operating_points()[index]
        c = compare_with_gaussian(point, TruncatedSpace(10, 5))
        assert c.n_fock < 3
        assert c.rel_error <= 0.01

    def test_verify_gaussian_passes(self):
        """Full verification including truncation convergence"""
        result = verify_gaussian(TruncatedSpace(10, 5), refined=TruncatedSpace(12, 5))
        assert result.gate.passed, result.gate.failed_checks
        payload = result.to_dict()
        assert payload["verification"] == "gaussian"
        assert payload["decision"] == "PASS"
        assert len(payload["points"]) == len(default_operating_points()) + 1
        assert all(r <= 1e-10 for r in result.lyapunov_residuals)
