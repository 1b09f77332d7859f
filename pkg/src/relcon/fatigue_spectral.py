"""Frequency-domain damage pipeline: Welch PSD estimation, the single-moment
spectral damage estimator, the frequency damage weight, and the closed-loop
damage functional used to rank controller designs.

Stress convention matches the time-domain pipeline: the S-N law consumes
cycle ranges, so a narrow band of variance sigma^2 at rate nu contributes the
Rayleigh range moment nu * (2*sqrt(2)*sigma)^k * Gamma(1 + k/2) / c_sn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal as sps
from scipy import special

from .fatigue_time import SnCurve
from .lincore import FrequencyGrid, TransferFunction, freq_response
from .thermal import FosterNetwork, LossParams, thermal_tf

__all__ = [
    "Psd",
    "DamageWeight",
    "estimate_psd",
    "single_moment_damage",
    "damage_weight",
    "closed_loop_damage_functional",
    "interp_psd_values",
]


@dataclass(frozen=True)
class Psd:
    """One-sided spectral density over angular frequency.

    ``values`` are signal-unit^2 per rad/s on ``grid``; ``delta_omega`` holds
    the per-bin widths (a scalar is broadcast). When estimated from data the
    total mass sum(values * delta_omega) approximates the signal variance
    (Parseval), up to the spectral leakage below the segment resolution.
    """

    grid: FrequencyGrid
    values: np.ndarray
    delta_omega: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        dw = np.asarray(self.delta_omega, dtype=float)
        if dw.ndim == 0:
            dw = np.full(vals.size, float(dw))
        if vals.size != len(self.grid) or dw.size != vals.size:
            raise ValueError("PSD arrays must match the grid length")
        if np.any(vals < 0.0) or np.any(dw <= 0.0):
            raise ValueError("PSD values must be nonnegative and bin widths positive")
        vals.flags.writeable = False
        dw.flags.writeable = False
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "delta_omega", dw)

    @property
    def total_power(self) -> float:
        return float(np.sum(self.values * self.delta_omega))


@dataclass(frozen=True)
class DamageWeight:
    """|W(omega)| on a grid, normalized to unit peak; band-pass shaped."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        if vals.size != len(self.grid):
            raise ValueError("weight values must match the grid length")
        if np.any(vals < 0.0):
            raise ValueError("weight values must be nonnegative")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def estimate_psd(signal, dt: float, segment_len: int) -> Psd:
    """Welch average of Hann-windowed modified periodograms, 50% overlap.

    One-sided, converted to per-rad/s density; the per-segment mean is
    removed, and the zero-frequency bin is dropped (grids are strictly
    positive).
    """
    x = np.asarray(signal, dtype=float)
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if segment_len < 8:
        raise ValueError("segment length must be at least 8 samples")
    if segment_len > x.size:
        raise ValueError("segment length exceeds the signal length")
    f, pxx = sps.welch(
        x,
        fs=1.0 / dt,
        window="hann",
        nperseg=int(segment_len),
        noverlap=int(segment_len) // 2,
        detrend="constant",
        return_onesided=True,
        scaling="density",
    )
    omega = 2.0 * np.pi * f[1:]
    values = pxx[1:] / (2.0 * np.pi)
    d_omega = 2.0 * np.pi * (f[1] - f[0])
    return Psd(FrequencyGrid(omega), values, np.full(omega.size, d_omega))


def _per_bin_damage_rate(psd: Psd, sn: SnCurve) -> np.ndarray:
    """Narrow-band damage rate of each bin (1/s), range convention."""
    sigma = np.sqrt(psd.values * psd.delta_omega)
    rate = psd.grid.points / (2.0 * np.pi)
    moment = special.gamma(1.0 + sn.k_sn / 2.0)
    return rate * (2.0 * np.sqrt(2.0) * sigma) ** sn.k_sn * moment / sn.c_sn


def single_moment_damage(psd: Psd, sn: SnCurve, duration: float) -> float:
    """Single-moment combination of per-bin narrow-band damage rates.

    Per-bin rates enter with exponent 2/k_sn and the sum is raised back to
    k_sn/2, so a one-bin PSD reduces to its narrow-band rate exactly; the
    result is multiplied by the duration.
    """
    if duration < 0.0:
        raise ValueError("duration must be nonnegative")
    d_i = _per_bin_damage_rate(psd, sn)
    if not np.any(d_i > 0.0):
        return 0.0
    k = sn.k_sn
    rate = float(np.sum(d_i ** (2.0 / k)) ** (k / 2.0))
    return rate * duration


def damage_weight(
    net: FosterNetwork, lp: LossParams, sn: SnCurve, grid: FrequencyGrid
) -> DamageWeight:
    """Per-unit frequency damage weight omega^(1/k_sn) * |power-to-temp|.

    Substituting the thermal transfer into the per-bin damage rate makes each
    bin's contribution proportional to omega^(2/k) |G(jw)|^2 S_P dω, i.e. a
    weight omega^(1/k) |G(jw)| on the power spectrum. Constant factors (the
    loss linearization gain among them) drop under the unit-peak
    normalization.
    """
    g = np.abs(freq_response(thermal_tf(net), grid))
    w = grid.points ** (1.0 / sn.k_sn) * g
    peak = w.max()
    if peak > 0.0:
        w = w / peak
    return DamageWeight(grid, w)


def interp_psd_values(psd: Psd, grid: FrequencyGrid) -> np.ndarray:
    """PSD resampled onto ``grid``: linear in log-omega, zero outside the
    source support."""
    return np.interp(
        np.log(grid.points),
        np.log(psd.grid.points),
        psd.values,
        left=0.0,
        right=0.0,
    )


def closed_loop_damage_functional(
    w: DamageWeight,
    g_cl: TransferFunction,
    loss_gain: float,
    s_ref: Psd,
    sn: SnCurve,
) -> float:
    """Damage ranking functional for a closed-loop reference-to-current model.

    (sum |W|^2 |loss_gain * g_cl|^2 S_ref dω)^(k_sn/2) on the weight grid;
    proportional, not equal, to absolute damage. The reference PSD is
    interpolated onto the weight grid (log-omega, zero outside support).
    """
    s_vals = interp_psd_values(s_ref, w.grid)
    if s_vals.size != len(w.grid):
        raise ValueError("grid mismatch after interpolation")
    g = np.abs(freq_response(g_cl, w.grid)) * abs(loss_gain)
    d_omega = w.grid.bin_widths()
    acc = float(np.sum(w.values**2 * g**2 * s_vals * d_omega))
    return acc ** (sn.k_sn / 2.0)
