"""Conduction-loss model and Foster RC thermal chain.

Device power dissipation r_on*i^2 + p_sw drives a series of parallel RC
stages; the per-stage temperature drops add, so the junction temperature is
the ambient plus the sum of first-order stage responses. All temperatures are
kelvin internally.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import signal as sps

from .errors import NumericalError
from .lincore import TransferFunction, tf, tf_add

__all__ = [
    "LossParams",
    "FosterStage",
    "FosterNetwork",
    "conduction_loss",
    "loss_small_signal_gain",
    "thermal_tf",
    "junction_temperature",
    "default_loss_params",
    "default_foster_network",
]


@dataclass(frozen=True)
class LossParams:
    """On-state resistance, fixed switching-loss floor, and the operating
    current used to linearize the quadratic conduction loss."""

    r_on: float = 0.025
    p_sw: float = 0.0
    i_op: float = 40.0

    def __post_init__(self):
        if not self.r_on > 0.0:
            raise ValueError("on-state resistance must be positive")
        if self.p_sw < 0.0:
            raise ValueError("switching loss must be nonnegative")
        if self.i_op < 0.0:
            raise ValueError("operating current must be nonnegative")


@dataclass(frozen=True)
class FosterStage:
    r_theta: float
    c_theta: float

    def __post_init__(self):
        if not (self.r_theta > 0.0 and self.c_theta > 0.0):
            raise ValueError("stage thermal resistance and capacitance must be positive")

    @property
    def tau(self) -> float:
        return self.r_theta * self.c_theta


@dataclass(frozen=True)
class FosterNetwork:
    stages: tuple[FosterStage, ...]
    t_ambient: float = 313.15

    def __post_init__(self):
        stages = tuple(self.stages)
        if len(stages) == 0:
            raise ValueError("network needs at least one stage")
        if not self.t_ambient > 0.0:
            raise ValueError("ambient temperature must be positive kelvin")
        object.__setattr__(self, "stages", stages)

    @property
    def r_total(self) -> float:
        return sum(st.r_theta for st in self.stages)

    @property
    def slowest_tau(self) -> float:
        return max(st.tau for st in self.stages)


def default_loss_params() -> LossParams:
    return LossParams()


def default_foster_network() -> FosterNetwork:
    """Four stages spanning 1 ms .. 1 s, junction-to-ambient 0.5 K/W."""
    r = [0.05, 0.10, 0.15, 0.20]
    tau = [1e-3, 1e-2, 1e-1, 1.0]
    return FosterNetwork(
        stages=tuple(FosterStage(ri, ti / ri) for ri, ti in zip(r, tau)),
        t_ambient=313.15,
    )


def conduction_loss(i, lp: LossParams):
    """Average power loss r_on*i^2 + p_sw; even in the current sign.

    Accepts scalars or arrays.
    """
    i = np.asarray(i, dtype=float)
    if not np.all(np.isfinite(i)):
        raise NumericalError("current samples must be finite")
    p = lp.r_on * i * i + lp.p_sw
    return float(p) if p.ndim == 0 else p


def loss_small_signal_gain(lp: LossParams) -> float:
    """Slope of the conduction loss at the operating current: 2*r_on*i_op (W/A).

    Warns when i_op = 0 since a zero gain makes the spectral damage
    functional vanish identically.
    """
    if lp.i_op == 0.0:
        warnings.warn(
            "operating current is zero: small-signal loss gain is zero and the "
            "spectral damage functional vanishes",
            stacklevel=2,
        )
    return 2.0 * lp.r_on * lp.i_op


def thermal_tf(net: FosterNetwork) -> TransferFunction:
    """Power-to-temperature-rise transfer: sum of r/(r c s + 1) over stages.

    DC gain equals the total thermal resistance.
    """
    acc = tf([net.stages[0].r_theta], [net.stages[0].tau, 1.0], io_units="K/W")
    for st in net.stages[1:]:
        acc = tf_add(acc, tf([st.r_theta], [st.tau, 1.0]))
    return tf(acc.num, acc.den, io_units="K/W")


def junction_temperature(i_traj, lp: LossParams, net: FosterNetwork, dt: float) -> np.ndarray:
    """Junction-temperature trajectory for a sampled current trajectory.

    Exact ZOH per stage: each stage is the scalar recursion
    x[k+1] = a x[k] + (1-a) r p[k] with a = exp(-dt/tau). The output sample
    k reflects the state at time k*dt, so T[0] is the ambient.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    p = conduction_loss(np.asarray(i_traj, dtype=float), lp)
    p = np.atleast_1d(p)
    t = np.full(p.size, float(net.t_ambient))
    for st in net.stages:
        a = np.exp(-dt / st.tau)
        b = st.r_theta * (1.0 - a)
        t += sps.lfilter([0.0, b], [1.0, -a], p)
    return t
