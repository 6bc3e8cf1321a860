"""Two-mode beam system: reduction to the single-mode oscillator, energy
conservation, transfer detection, and the linear verdicts."""

import numpy as np
import pytest

from hillduffing.beam import (
    BeamState,
    ModePair,
    TransferVerdict,
    coupled_rhs,
    energy,
    mode_stability,
    simulate,
)
from hillduffing.duffing import DuffingParams, duffing_solution, period
from hillduffing.errors import DomainError
from hillduffing.hill import Stability, monodromy, omega_coefficient
from hillduffing.integrate import solve_sampled


class TestModePair:
    def test_omega(self):
        assert ModePair(1, 2).omega == 4.0
        assert ModePair(2, 1).omega == 0.25
        assert ModePair(2, 4).omega == 4.0

    def test_validation(self):
        with pytest.raises(DomainError):
            ModePair(2, 2)
        with pytest.raises(DomainError):
            ModePair(0, 1)


class TestCoupledRhs:
    def test_hand_computed_point(self):
        rhs = coupled_rhs(ModePair(1, 2), BeamState(1.0, 0.0, 1.0, 0.0))
        assert rhs == (0.0, -6.0, 0.0, -36.0)

    def test_symmetric_roles(self):
        # with w = 0 the z equation is the pure quartic oscillator in z
        rhs = coupled_rhs(ModePair(1, 2), BeamState(0.0, 0.0, 0.7, 0.0))
        assert rhs[1] == 0.0
        assert rhs[3] == pytest.approx(-(2**4) * 0.7 - 2**2 * (2**2 * 0.7**2) * 0.7)

    @pytest.mark.parametrize("m", [1, 2])
    def test_single_mode_reduces_to_duffing(self, m):
        # with z = 0 the w equation is the m-th scaled oscillator, whose
        # closed form uses omega = 1/m^4
        pair = ModePair(m, m + 1)
        params = DuffingParams(1.1, 1.0 / m**4)
        m2 = float(m * m)

        def rhs(t, y):
            return (y[1], -(m2 * m2) * y[0] - m2 * (m2 * y[0] ** 2) * y[0],
                    0.0, 0.0)

        horizon = 3.0 * period(params)
        ts = np.linspace(0.0, horizon, 400)
        states = solve_sampled(rhs, 0.0, horizon, (1.1, 0.0, 0.0, 0.0), 1e-11, ts)
        worst = max(abs(states[i, 0] - duffing_solution(params, t))
                    for i, t in enumerate(ts))
        assert worst < 1e-8


class TestEnergy:
    def test_zero_state(self):
        assert energy(ModePair(1, 2), BeamState(0.0, 0.0, 0.0, 0.0)) == 0.0

    def test_hand_computed_point(self):
        val = energy(ModePair(1, 2), BeamState(1.0, 0.0, 1.0, 0.0))
        assert val == pytest.approx(14.75, abs=1e-12)

    def test_conserved_over_100_periods(self):
        pair = ModePair(1, 2)
        horizon = 100.0 * period(DuffingParams(2.5, pair.omega))
        result = simulate(pair, 2.5, horizon=horizon, tol=1e-11)
        e = result.trajectory[:, 5]
        assert np.max(np.abs(e - e[0])) / abs(e[0]) < 1e-6


class TestSimulate:
    def test_validation(self):
        with pytest.raises(DomainError):
            simulate(ModePair(1, 2), 0.0)
        with pytest.raises(DomainError):
            simulate(ModePair(1, 2), 1.0, z_ratio=0.5)

    def test_stable_amplitude_no_transfer(self, beam_runs):
        result = beam_runs(0.5, horizon=100.0)
        assert result.verdict is TransferVerdict.NO_TRANSFER_OBSERVED
        assert result.onset_time is None
        assert result.max_abs_z < 3.0 * result.z_ratio * 0.5

    def test_trajectory_layout(self, beam_runs):
        result = beam_runs(0.5, horizon=100.0)
        assert result.trajectory.shape[1] == 6
        assert result.trajectory.shape[0] <= 4096
        assert result.trajectory[0, 1] == pytest.approx(0.5)
        assert result.trajectory[0, 3] == pytest.approx(5e-4)

    def test_scaled_pair_same_verdict(self):
        # (2, 4) shares omega = 4 with (1, 2); the transfer appears at the
        # time-scaled moment but the verdict is identical
        result = simulate(ModePair(2, 4), 3.01, horizon=60.0)
        assert result.verdict is TransferVerdict.ENERGY_TRANSFER

    def test_linear_nonlinear_coincidence(self, beam_runs):
        pair = ModePair(1, 2)
        for delta in (2.92, 2.94, 3.01, 3.44, 3.5):
            linear_unstable = mode_stability(pair, delta) is Stability.UNSTABLE
            transfer = beam_runs(delta).verdict is TransferVerdict.ENERGY_TRANSFER
            assert linear_unstable == transfer, delta


class TestModeStability:
    def test_lower_mode_always_stable(self):
        assert mode_stability(ModePair(2, 1), 5.0) is Stability.STABLE

    def test_known_verdicts(self):
        pair = ModePair(1, 2)
        assert mode_stability(pair, 0.5) is Stability.STABLE
        assert mode_stability(pair, 3.0) is Stability.UNSTABLE

    def test_scale_invariance(self):
        for delta in (0.5, 3.0):
            assert mode_stability(ModePair(1, 2), delta) is mode_stability(
                ModePair(2, 4), delta)

    def test_small_amplitude_stability_generic_ratio(self):
        # near delta = 0 the trace sits close to 2 cos(pi omega); omega = 4
        # is a tongue tip, so assert strict Floquet stability |trace| < 2
        # rather than the banded classification
        for w in (0.5, 2.5, 4.0):
            for d in (0.05, 0.1):
                tr = monodromy(omega_coefficient(d, w)).trace
                assert abs(tr) < 2.0 - 1e-6, (w, d)
