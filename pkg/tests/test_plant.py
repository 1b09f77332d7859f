"""Electrical model tests: decoupled transfer, voltage reconstruction, decoupling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcon import lincore as lc
from relcon.plant import (
    DqSignals,
    PlantParams,
    decoupled_plant,
    reconstruct_terminal_voltage,
    simulate_coupled_with_decoupling,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


class TestDecoupledPlant:
    def test_default_parameters_shape(self):
        g = decoupled_plant(PlantParams())
        assert np.allclose(g.num, [1.0])
        assert np.allclose(g.den, [0.001, 0.1])
        assert lc.dc_gain(g) == pytest.approx(10.0)
        # pole at -R/L = -100 rad/s
        assert -g.den[1] / g.den[0] == pytest.approx(-100.0)

    def test_lossless_filter_is_integrator(self):
        g = decoupled_plant(PlantParams(r_f=0.0))
        assert np.allclose(g.den, [0.001, 0.0])

    def test_unit_step_settles_at_dc_gain(self):
        params = PlantParams()
        g = decoupled_plant(params)
        dt = 1e-4
        y = lc.simulate_tf(g, np.ones(int(1.0 / dt)), dt)
        assert y[-1] == pytest.approx(10.0, rel=1e-6)


class TestReconstruction:
    def test_zero_omega_zero_grid_voltage(self):
        sig = DqSignals(u_d=7.5)
        v_td, v_tq, sat = reconstruct_terminal_voltage(sig, PlantParams(omega=0.0))
        assert v_td == 7.5
        assert v_tq == 0.0
        assert sat is False

    def test_q_axis_substitution(self):
        sig = DqSignals(u_q=5.0, v_q=325.0, i_d=10.0)
        params = PlantParams(l_f=1e-3, omega=314.159)
        _, v_tq, _ = reconstruct_terminal_voltage(sig, params)
        assert v_tq == pytest.approx(5.0 + 325.0 + 314.159 * 1e-3 * 10.0, abs=1e-12)
        assert v_tq == pytest.approx(333.14159, abs=1e-9)

    def test_radial_clamp(self):
        sig = DqSignals(u_d=120.0)
        params = PlantParams(omega=0.0, v_dc_limit=100.0)
        v_td, v_tq, sat = reconstruct_terminal_voltage(sig, params)
        assert (v_td, v_tq) == (100.0, 0.0)
        assert sat is True

    @given(u_d=finite, u_q=finite, v_d=finite, v_q=finite, i_d=finite, i_q=finite)
    @settings(max_examples=200, deadline=None)
    def test_round_trip_recovers_auxiliary_inputs(self, u_d, u_q, v_d, v_q, i_d, i_q):
        params = PlantParams()
        sig = DqSignals(i_d=i_d, i_q=i_q, v_d=v_d, v_q=v_q, u_d=u_d, u_q=u_q)
        v_td, v_tq, sat = reconstruct_terminal_voltage(sig, params)
        assert not sat
        wl = params.omega * params.l_f
        # applying the auxiliary definition to the reconstructed voltages
        assert v_td - v_d + wl * i_q == pytest.approx(u_d, abs=1e-9 * max(1.0, abs(u_d)))
        assert v_tq - v_q - wl * i_d == pytest.approx(u_q, abs=1e-9 * max(1.0, abs(u_q)))


class TestDecouplingProperty:
    @pytest.mark.parametrize("omega", [0.0, 2 * np.pi * 50, 2 * np.pi * 400])
    def test_coupled_simulation_matches_decoupled(self, omega):
        params = PlantParams(omega=omega)
        rng = np.random.default_rng(42)
        dt = 1e-4
        n = 5000
        u_d = rng.normal(size=n)
        u_q = rng.normal(size=n)
        i_d, i_q = simulate_coupled_with_decoupling(params, u_d, u_q, dt)
        g = decoupled_plant(params)
        ref_d = lc.simulate_tf(g, u_d, dt)
        ref_q = lc.simulate_tf(g, u_q, dt)
        for got, ref in ((i_d, ref_d), (i_q, ref_q)):
            rms = np.sqrt(np.mean((got - ref) ** 2))
            scale = np.sqrt(np.mean(ref**2))
            assert rms <= 1e-6 * scale
