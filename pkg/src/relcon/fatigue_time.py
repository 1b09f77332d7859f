"""Time-domain damage pipeline: four-point rainflow cycle extraction,
modified Coffin-Manson cycles-to-failure, Basquin S-N law, and Miner
accumulation.

Stress convention: a cycle's ``delta_t`` is the full peak-to-valley range.
Temperatures are kelvin wherever they enter the Arrhenius term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "ThermalCycle",
    "LifetimeParams",
    "SnCurve",
    "CycleHistogram",
    "rainflow",
    "cycles_to_failure",
    "basquin_nf",
    "miner_damage",
    "miner_damage_basquin",
    "bin_histogram",
    "lifetime_from_damage",
    "calibrate_a0",
    "calibrate_sn_curve",
    "default_lifetime_params",
    "default_sn_curve",
    "ANCHOR_DELTA_T",
    "ANCHOR_MEAN_T",
    "ANCHOR_T_ON",
    "ANCHOR_N_F",
]

# Calibration anchor: a 40 K swing at 423.15 K mean and 10 s duration
# survives 3e5 cycles; the front factor a0 is fitted to reproduce it.
ANCHOR_DELTA_T = 40.0
ANCHOR_MEAN_T = 423.15
ANCHOR_T_ON = 10.0
ANCHOR_N_F = 3.0e5


@dataclass(frozen=True)
class ThermalCycle:
    """One extracted cycle: range (K), mean (K), duration (s), count weight."""

    delta_t: float
    mean_t: float
    t_on: float
    weight: float

    def __post_init__(self):
        if self.delta_t < 0.0:
            raise ValueError("cycle range must be nonnegative")
        if not self.t_on > 0.0:
            raise ValueError("cycle duration must be positive")
        if self.weight not in (0.5, 1.0):
            raise ValueError("cycle weight must be 0.5 (half) or 1.0 (full)")
        if not math.isfinite(self.mean_t):
            raise ValueError("cycle mean must be finite")


@dataclass(frozen=True)
class LifetimeParams:
    """Modified Coffin-Manson constants.

    N_f = a0 * a1^beta * dT^(alpha - beta) * exp(sign * e_a / (k_b * T))
          * (c + t_on^gamma_exp) / (c + 2^gamma_exp) * k_thick,
    beta = exp(-(dT - t0) / lam).

    ``arrhenius_sign=+1`` keeps the exponent +e_a/(k_b T), which decreases
    N_f as the mean temperature rises; -1 flips the convention.
    ``gamma_exp`` is negative so longer cycles shorten the life slightly.
    """

    a0: float
    a1: float = 20.0
    alpha: float = -4.923
    lam: float = 60.0
    t0: float = 60.0
    c: float = 1.434
    gamma_exp: float = -1.208
    k_thick: float = 1.0
    e_a: float = 0.0666
    k_b: float = 8.617e-5
    arrhenius_sign: int = 1

    def __post_init__(self):
        if not self.a0 > 0.0:
            raise ValueError("front factor a0 must be positive")
        if not self.k_b > 0.0:
            raise ValueError("Boltzmann constant must be positive")
        if not self.lam > 0.0:
            raise ValueError("beta decay scale must be positive")
        if self.arrhenius_sign not in (1, -1):
            raise ValueError("arrhenius_sign must be +1 or -1")


@dataclass(frozen=True)
class SnCurve:
    """Basquin law N_f = c_sn * S^(-k_sn); S is a cycle range."""

    c_sn: float
    k_sn: float

    def __post_init__(self):
        if not (self.c_sn > 0.0 and self.k_sn > 0.0):
            raise ValueError("S-N parameters must be positive")


@dataclass(frozen=True)
class CycleHistogram:
    """Rainflow output stored as parallel arrays (range, mean, duration, weight)."""

    delta_t: np.ndarray
    mean_t: np.ndarray
    t_on: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        arrs = {}
        for name in ("delta_t", "mean_t", "t_on", "weight"):
            a = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            a.flags.writeable = False
            arrs[name] = a
        n = {a.size for a in arrs.values()}
        if len(n) != 1:
            raise ValueError("histogram arrays must share one length")
        for name, a in arrs.items():
            object.__setattr__(self, name, a)

    def __len__(self) -> int:
        return int(self.delta_t.size)

    @property
    def total_weight(self) -> float:
        return float(self.weight.sum())

    @property
    def cycles(self) -> list[ThermalCycle]:
        return [
            ThermalCycle(float(d), float(m), float(t), float(w))
            for d, m, t, w in zip(self.delta_t, self.mean_t, self.t_on, self.weight)
        ]

    @staticmethod
    def empty() -> "CycleHistogram":
        z = np.zeros(0)
        return CycleHistogram(z, z, z, z)

    def merged(self, other: "CycleHistogram") -> "CycleHistogram":
        return CycleHistogram(
            np.concatenate((self.delta_t, other.delta_t)),
            np.concatenate((self.mean_t, other.mean_t)),
            np.concatenate((self.t_on, other.t_on)),
            np.concatenate((self.weight, other.weight)),
        )


def _turning_points(x: np.ndarray) -> np.ndarray:
    """Indices of the turning-point sequence: first sample, strict local
    extrema (plateaus collapsed onto their first sample), last sample."""
    dx = np.diff(x)
    keep = np.concatenate(([True], dx != 0.0))
    run_start = np.flatnonzero(keep)
    xv = x[run_start]
    if xv.size < 2:
        return run_start[:1]
    s = np.sign(np.diff(xv))
    interior = np.flatnonzero(s[1:] * s[:-1] < 0.0) + 1
    sel = np.concatenate(([0], interior, [xv.size - 1]))
    return run_start[sel]


def rainflow(values, dt: float = 1.0) -> CycleHistogram:
    """Four-point rainflow count on the turning-point sequence.

    Whenever the inner range of four consecutive turning points is bounded by
    both outer ranges, the inner pair closes a full cycle (weight 1.0) and is
    removed; exhausted residual pairs count as half cycles (weight 0.5).
    A full cycle's duration is twice the span of its closing excursion; a
    half cycle's duration is the span between its two extrema. A constant
    signal yields an empty histogram.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("rainflow needs a 1-D series of at least 2 samples")
    if not np.all(np.isfinite(x)):
        raise ValueError("rainflow input must be finite")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    idx = _turning_points(x)
    if idx.size < 2:
        return CycleHistogram.empty()
    vals = x[idx]
    times = idx.astype(float) * dt

    sv: list[float] = []
    st: list[float] = []
    out_d: list[float] = []
    out_m: list[float] = []
    out_t: list[float] = []
    out_w: list[float] = []
    for v, t in zip(vals, times):
        sv.append(float(v))
        st.append(float(t))
        while len(sv) >= 4:
            d_outer_l = abs(sv[-4] - sv[-3])
            d_inner = abs(sv[-3] - sv[-2])
            d_outer_r = abs(sv[-2] - sv[-1])
            if d_inner <= d_outer_l and d_inner <= d_outer_r:
                out_d.append(d_inner)
                out_m.append(0.5 * (sv[-3] + sv[-2]))
                out_t.append(2.0 * (st[-2] - st[-3]))
                out_w.append(1.0)
                del sv[-3:-1]
                del st[-3:-1]
            else:
                break
    for i in range(len(sv) - 1):
        out_d.append(abs(sv[i + 1] - sv[i]))
        out_m.append(0.5 * (sv[i] + sv[i + 1]))
        out_t.append(st[i + 1] - st[i])
        out_w.append(0.5)
    return CycleHistogram(
        np.array(out_d), np.array(out_m), np.array(out_t), np.array(out_w)
    )


def _nf_arrays(delta_t, mean_t, t_on, p: LifetimeParams) -> np.ndarray:
    delta_t = np.asarray(delta_t, dtype=float)
    mean_t = np.asarray(mean_t, dtype=float)
    t_on = np.asarray(t_on, dtype=float)
    if np.any(mean_t <= 0.0):
        raise ValueError("cycle mean temperature must be positive kelvin")
    beta = np.exp(-(delta_t - p.t0) / p.lam)
    duration = (p.c + np.power(t_on, p.gamma_exp)) / (p.c + 2.0**p.gamma_exp)
    arrhenius = np.exp(p.arrhenius_sign * p.e_a / (p.k_b * mean_t))
    with np.errstate(divide="ignore"):
        swing = np.where(
            delta_t > 0.0,
            np.power(p.a1, beta) * np.power(np.where(delta_t > 0.0, delta_t, 1.0),
                                            p.alpha - beta),
            np.inf,
        )
    return p.a0 * swing * arrhenius * duration * p.k_thick


def cycles_to_failure(cycle: ThermalCycle, p: LifetimeParams) -> float:
    """Modified Coffin-Manson life of one cycle; +inf for a zero swing."""
    if cycle.delta_t == 0.0:
        return math.inf
    return float(_nf_arrays(cycle.delta_t, cycle.mean_t, cycle.t_on, p))


def basquin_nf(stress: float, sn: SnCurve) -> float:
    if not stress > 0.0:
        raise ValueError("stress must be positive")
    return sn.c_sn * stress ** (-sn.k_sn)


def miner_damage(hist: CycleHistogram, p: LifetimeParams) -> float:
    """Linear damage accumulation: sum of weight / N_f over the histogram."""
    if len(hist) == 0:
        return 0.0
    nf = _nf_arrays(hist.delta_t, hist.mean_t, hist.t_on, p)
    with np.errstate(divide="ignore"):
        contrib = np.where(np.isinf(nf), 0.0, hist.weight / nf)
    return float(contrib.sum())


def miner_damage_basquin(hist: CycleHistogram, sn: SnCurve) -> float:
    """Miner accumulation with the Basquin law on cycle ranges."""
    if len(hist) == 0:
        return 0.0
    return float(np.sum(hist.weight * hist.delta_t**sn.k_sn) / sn.c_sn)


def lifetime_from_damage(damage: float, mission_s: float) -> float:
    """Mission duration divided by its accumulated damage."""
    if damage < 0.0 or mission_s <= 0.0:
        raise ValueError("damage must be nonnegative and mission positive")
    return math.inf if damage == 0.0 else mission_s / damage


def bin_histogram(hist: CycleHistogram, n_range: int = 64, n_mean: int = 64) -> CycleHistogram:
    """Compact the histogram onto an n_range x n_mean grid.

    Bins carry weighted-mean range, mean and duration; total weight is
    conserved exactly. Intended for compact CSV reports, not for tests.
    """
    if len(hist) == 0:
        return hist
    r_edges = np.linspace(0.0, float(hist.delta_t.max()) * (1 + 1e-12), n_range + 1)
    m_lo, m_hi = float(hist.mean_t.min()), float(hist.mean_t.max())
    if m_hi <= m_lo:
        m_hi = m_lo + 1.0
    m_edges = np.linspace(m_lo, m_hi * (1 + 1e-12), n_mean + 1)
    ri = np.clip(np.digitize(hist.delta_t, r_edges) - 1, 0, n_range - 1)
    mi = np.clip(np.digitize(hist.mean_t, m_edges) - 1, 0, n_mean - 1)
    flat = ri * n_mean + mi
    order = np.argsort(flat, kind="stable")
    flat_sorted = flat[order]
    groups, starts = np.unique(flat_sorted, return_index=True)
    d, m, t, w = [], [], [], []
    for gi, s in enumerate(starts):
        e = starts[gi + 1] if gi + 1 < starts.size else flat_sorted.size
        sel = order[s:e]
        ws = hist.weight[sel]
        tot = ws.sum()
        d.append(float(np.average(hist.delta_t[sel], weights=ws)))
        m.append(float(np.average(hist.mean_t[sel], weights=ws)))
        t.append(float(np.average(hist.t_on[sel], weights=ws)))
        w.append(float(tot))
    return CycleHistogram(np.array(d), np.array(m), np.array(t), np.array(w))


def calibrate_a0(base: LifetimeParams,
                 delta_t: float = ANCHOR_DELTA_T,
                 mean_t: float = ANCHOR_MEAN_T,
                 t_on: float = ANCHOR_T_ON,
                 n_f: float = ANCHOR_N_F) -> LifetimeParams:
    """Refit the front factor so the anchor cycle hits n_f exactly."""
    raw = float(_nf_arrays(delta_t, mean_t, t_on, replace(base, a0=1.0)))
    return replace(base, a0=n_f / raw)


def calibrate_sn_curve(p: LifetimeParams, k_sn: float,
                       delta_t: float = ANCHOR_DELTA_T,
                       mean_t: float = ANCHOR_MEAN_T,
                       t_on: float = ANCHOR_T_ON) -> SnCurve:
    """S-N strength matched to the Coffin-Manson life at the anchor cycle."""
    nf = cycles_to_failure(ThermalCycle(delta_t, mean_t, t_on, 1.0), p)
    return SnCurve(c_sn=nf * delta_t**k_sn, k_sn=k_sn)


def default_lifetime_params(**overrides) -> LifetimeParams:
    """Shipped constants with the front factor calibrated to the anchor."""
    base = LifetimeParams(a0=1.0, **overrides)
    return calibrate_a0(base)


def default_sn_curve(k_sn: float = 5.0) -> SnCurve:
    return calibrate_sn_curve(default_lifetime_params(), k_sn)
