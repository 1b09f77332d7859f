"""Rainflow, Coffin-Manson, Basquin and Miner tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import three_point_rainflow
from relcon.fatigue_time import (
    CycleHistogram,
    LifetimeParams,
    SnCurve,
    ThermalCycle,
    basquin_nf,
    bin_histogram,
    calibrate_sn_curve,
    cycles_to_failure,
    default_lifetime_params,
    default_sn_curve,
    lifetime_from_damage,
    miner_damage,
    miner_damage_basquin,
    rainflow,
)


def _const_ton_damage(delta, mean, weight, p):
    """Damage with every cycle at the 2 s reference duration (factor = 1)."""
    hist = CycleHistogram(delta, mean, np.full(delta.shape, 2.0), weight)
    return miner_damage(hist, p)


class TestRainflow:
    def test_monotone_ramp_single_half_cycle(self):
        hist = rainflow(np.linspace(0.0, 10.0, 50), dt=0.1)
        assert len(hist) == 1
        assert hist.delta_t[0] == pytest.approx(10.0)
        assert hist.weight[0] == 0.5

    def test_constant_signal_empty(self):
        assert len(rainflow(np.full(100, 3.3))) == 0

    def test_pure_sine_full_cycles(self):
        n_per = 12
        t = np.linspace(0.0, n_per * 2 * np.pi, n_per * 500, endpoint=False)
        hist = rainflow(np.sin(t) * 4.0, dt=1.0)
        full = hist.weight == 1.0
        # N full cycles of range 2A, within +-1 from residual handling
        eq_full = hist.weight[np.abs(hist.delta_t - 8.0) < 0.05].sum()
        assert abs(eq_full - n_per) <= 1.0
        assert np.all(np.abs(hist.delta_t[full] - 8.0) < 0.05)

    def test_sine_full_cycle_duration_is_period(self):
        # 0.1 Hz sine sampled at 10 ms: closing excursion spans half a period
        f = 0.1
        dt = 0.01
        t = np.arange(0, 100.0, dt)
        hist = rainflow(np.sin(2 * np.pi * f * t), dt=dt)
        full = hist.weight == 1.0
        assert np.allclose(hist.t_on[full], 1.0 / f, rtol=0.02)

    def test_count_conservation(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=5000).cumsum()
        hist = rainflow(x)
        dx = np.diff(x)
        keep = np.concatenate(([True], dx != 0.0))
        xv = x[keep]
        s = np.sign(np.diff(xv))
        n_turn = 2 + int(np.sum(s[1:] * s[:-1] < 0.0))
        assert hist.total_weight == pytest.approx((n_turn - 1) / 2, abs=1e-9)

    def test_negation_invariance_of_damage(self):
        # negation preserves every cycle range, so range-based damage matches
        rng = np.random.default_rng(3)
        x = rng.normal(size=4000).cumsum() * 0.3
        sn = default_sn_curve(5.0)
        d1 = miner_damage_basquin(rainflow(x), sn)
        d2 = miner_damage_basquin(rainflow(-x), sn)
        assert d1 == pytest.approx(d2, rel=1e-9)

    def test_matches_three_point_oracle_on_random_walk(self):
        rng = np.random.default_rng(4)
        x = 420.0 + 0.5 * rng.normal(size=10_000).cumsum()
        p = default_lifetime_params()
        hist = rainflow(x)
        d4 = _const_ton_damage(hist.delta_t, hist.mean_t, hist.weight, p)
        r, m, w = three_point_rainflow(x)
        d3 = _const_ton_damage(r, m, w, p)
        assert d4 == pytest.approx(d3, rel=0.01)

    @given(st.lists(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
                    min_size=2, max_size=300))
    @settings(max_examples=200, deadline=None)
    def test_conservation_property(self, samples):
        x = np.asarray(samples)
        hist = rainflow(x)
        dx = np.diff(x)
        keep = np.concatenate(([True], dx != 0.0))
        xv = x[keep]
        if xv.size < 2:
            assert len(hist) == 0
            return
        s = np.sign(np.diff(xv))
        n_turn = 2 + int(np.sum(s[1:] * s[:-1] < 0.0))
        assert hist.total_weight == pytest.approx((n_turn - 1) / 2, abs=1e-9)

    def test_rejects_short_or_nonfinite(self):
        with pytest.raises(ValueError):
            rainflow([1.0])
        with pytest.raises(ValueError):
            rainflow([1.0, np.nan, 2.0])


class TestCyclesToFailure:
    def test_anchor_is_exact(self):
        p = default_lifetime_params()
        nf = cycles_to_failure(ThermalCycle(40.0, 423.15, 10.0, 1.0), p)
        assert nf == pytest.approx(3.0e5, rel=1e-12)

    def test_double_swing_near_10k(self):
        p = default_lifetime_params()
        nf = cycles_to_failure(ThermalCycle(80.0, 423.15, 10.0, 1.0), p)
        assert 6.7e3 <= nf <= 1.5e4

    def test_longer_cycles_shorten_life(self):
        p = default_lifetime_params()
        nfs = [
            cycles_to_failure(ThermalCycle(40.0, 423.15, t, 1.0), p)
            for t in (0.5, 2.0, 10.0, 100.0)
        ]
        assert all(a >= b for a, b in zip(nfs, nfs[1:]))

    def test_zero_swing_infinite_life(self):
        p = default_lifetime_params()
        assert cycles_to_failure(ThermalCycle(0.0, 400.0, 1.0, 1.0), p) == np.inf

    def test_nonpositive_mean_rejected(self):
        p = default_lifetime_params()
        with pytest.raises(ValueError, match="kelvin"):
            cycles_to_failure(ThermalCycle(10.0, -5.0, 1.0, 1.0), p)

    def test_strictly_decreasing_in_swing(self):
        p = default_lifetime_params()
        ds = np.linspace(20.0, 120.0, 101)
        nfs = [cycles_to_failure(ThermalCycle(d, 423.15, 10.0, 1.0), p) for d in ds]
        assert all(a > b for a, b in zip(nfs, nfs[1:]))

    def test_strictly_decreasing_in_mean_temperature(self):
        p = default_lifetime_params()
        ms = np.linspace(310.0, 470.0, 33)
        nfs = [cycles_to_failure(ThermalCycle(40.0, m, 10.0, 1.0), p) for m in ms]
        assert all(a > b for a, b in zip(nfs, nfs[1:]))

    def test_arrhenius_sign_flag_flips_trend(self):
        p = default_lifetime_params(arrhenius_sign=-1)
        lo = cycles_to_failure(ThermalCycle(40.0, 350.0, 10.0, 1.0), p)
        hi = cycles_to_failure(ThermalCycle(40.0, 450.0, 10.0, 1.0), p)
        assert hi > lo

    def test_ratio_window(self):
        p = default_lifetime_params()
        r = cycles_to_failure(
            ThermalCycle(40.0, 423.15, 10.0, 1.0), p
        ) / cycles_to_failure(ThermalCycle(80.0, 423.15, 10.0, 1.0), p)
        assert 20.0 <= r <= 45.0


class TestBasquin:
    def test_unit_stress(self):
        sn = SnCurve(c_sn=1e12, k_sn=4.0)
        assert basquin_nf(1.0, sn) == pytest.approx(1e12)

    def test_power_law_halving(self):
        sn = SnCurve(c_sn=1e12, k_sn=5.0)
        assert basquin_nf(2.0, sn) == pytest.approx(basquin_nf(1.0, sn) / 2**5)

    def test_calibrated_match_at_anchor(self):
        p = default_lifetime_params()
        sn = calibrate_sn_curve(p, k_sn=5.0)
        nf_cm = cycles_to_failure(ThermalCycle(40.0, 423.15, 10.0, 1.0), p)
        assert basquin_nf(40.0, sn) == pytest.approx(nf_cm, rel=1e-12)


class TestMiner:
    def test_single_cycle(self):
        hist = CycleHistogram([40.0], [423.15], [10.0], [1.0])
        p = default_lifetime_params()
        assert miner_damage(hist, p) == pytest.approx(1.0 / 3.0e5)

    def test_empty_histogram(self):
        assert miner_damage(CycleHistogram.empty(), default_lifetime_params()) == 0.0

    def test_repeated_cycles_and_lifetime(self):
        n = 500
        hist = CycleHistogram(
            np.full(n, 40.0), np.full(n, 423.15), np.full(n, 10.0), np.ones(n)
        )
        # scale the law so N_f = 1000 at this cycle for the round numbers
        p = default_lifetime_params()
        nf = cycles_to_failure(ThermalCycle(40.0, 423.15, 10.0, 1.0), p)
        d = miner_damage(hist, p)
        assert d == pytest.approx(n / nf)
        mission = 3600.0
        assert lifetime_from_damage(0.5, mission) == pytest.approx(2 * mission)

    def test_additivity(self):
        rng = np.random.default_rng(9)
        p = default_lifetime_params()
        h1 = rainflow(400.0 + rng.normal(size=1000).cumsum() * 0.5)
        h2 = rainflow(420.0 + rng.normal(size=800).cumsum() * 0.8)
        assert miner_damage(h1.merged(h2), p) == pytest.approx(
            miner_damage(h1, p) + miner_damage(h2, p), rel=1e-12
        )

    def test_basquin_miner_matches_direct_sum(self):
        sn = default_sn_curve(3.0)
        hist = CycleHistogram([10.0, 20.0], [400.0, 410.0], [1.0, 2.0], [1.0, 0.5])
        expect = 1.0 * 10.0**3 / sn.c_sn + 0.5 * 20.0**3 / sn.c_sn
        assert miner_damage_basquin(hist, sn) == pytest.approx(expect)


class TestBinning:
    def test_binning_conserves_weight_and_damage_approximately(self):
        rng = np.random.default_rng(21)
        x = 420.0 + rng.normal(size=20000).cumsum() * 0.2
        hist = rainflow(x)
        compact = bin_histogram(hist, 64, 64)
        assert compact.total_weight == pytest.approx(hist.total_weight, rel=1e-12)
        assert len(compact) <= 64 * 64
        p = default_lifetime_params()
        assert miner_damage(compact, p) == pytest.approx(miner_damage(hist, p), rel=0.05)
