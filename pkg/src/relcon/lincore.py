"""Self-contained LTI kernel: rational transfer functions, state-space
realization, frequency response, Routh-Hurwitz stability tests, zero-order-hold
discretization and time-domain simulation.

Conventions, asserted throughout the package:
  * polynomial coefficients are real and stored in descending powers of s,
  * models are continuous-time; discretization happens only inside
    ``simulate_lti`` (exact ZOH via the matrix exponential),
  * sampled signals are exchanged as (dt, value-array) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla
from scipy import signal as sps

from .errors import NumericalError, PoleOnGridError, UnstableSystemError

__all__ = [
    "TransferFunction",
    "StateSpace",
    "FrequencyGrid",
    "tf",
    "tf_constant",
    "tf_mul",
    "tf_add",
    "tf_sub",
    "tf_inverse",
    "tf_scale",
    "dc_gain",
    "log_grid",
    "freq_response",
    "is_hurwitz",
    "to_state_space",
    "simulate_lti",
    "simulate_tf",
    "hinf_norm_on_grid",
]


def _as_poly(c) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(c, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("polynomial must be a nonempty 1-D coefficient list")
    if not np.all(np.isfinite(arr)):
        raise ValueError("polynomial coefficients must be finite")
    return arr


def _trim(c: np.ndarray) -> np.ndarray:
    """Strip leading (highest-power) zero coefficients, keeping at least one."""
    nz = np.flatnonzero(np.abs(c) > 0.0)
    if nz.size == 0:
        return c[-1:]
    return c[nz[0]:]


@dataclass(frozen=True)
class TransferFunction:
    """Rational SISO model num(s)/den(s), coefficients in descending powers."""

    num: np.ndarray
    den: np.ndarray
    io_units: str = ""

    def __post_init__(self):
        num = _trim(_as_poly(self.num))
        den = _trim(_as_poly(self.den))
        if den[0] == 0.0:
            raise ValueError("leading denominator coefficient must be nonzero")
        num.flags.writeable = False
        den.flags.writeable = False
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def order(self) -> int:
        return self.den.size - 1

    @property
    def is_proper(self) -> bool:
        return self.num.size <= self.den.size

    def __call__(self, s):
        """Evaluate num(s)/den(s) at complex s (scalar or array)."""
        return np.polyval(self.num, s) / np.polyval(self.den, s)


def tf(num, den, io_units: str = "") -> TransferFunction:
    return TransferFunction(np.asarray(num, float), np.asarray(den, float), io_units)


def tf_constant(gain: float) -> TransferFunction:
    return tf([float(gain)], [1.0])


def tf_mul(a: TransferFunction, b: TransferFunction) -> TransferFunction:
    return tf(np.polymul(a.num, b.num), np.polymul(a.den, b.den))


def tf_add(a: TransferFunction, b: TransferFunction) -> TransferFunction:
    num = np.polyadd(np.polymul(a.num, b.den), np.polymul(b.num, a.den))
    return tf(num, np.polymul(a.den, b.den))


def tf_sub(a: TransferFunction, b: TransferFunction) -> TransferFunction:
    return tf_add(a, tf_scale(b, -1.0))


def tf_scale(a: TransferFunction, c: float) -> TransferFunction:
    return tf(a.num * float(c), a.den)


def tf_inverse(a: TransferFunction) -> TransferFunction:
    if np.allclose(a.num, 0.0):
        raise ZeroDivisionError("cannot invert the zero transfer function")
    return tf(a.den, a.num)


def dc_gain(a: TransferFunction) -> float:
    """num(0)/den(0); inf for a pole at the origin."""
    n0, d0 = a.num[-1], a.den[-1]
    if d0 == 0.0:
        return np.inf if n0 != 0.0 else np.nan
    return float(n0 / d0)


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive angular frequencies (rad/s)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        if pts.size == 0:
            raise ValueError("frequency grid must be nonempty")
        if np.any(pts <= 0.0):
            raise ValueError("frequency grid points must be positive")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("frequency grid must be strictly increasing")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.size

    def bin_widths(self) -> np.ndarray:
        """Per-point bin widths from geometric-midpoint boundaries.

        Interior boundaries sit at sqrt(w_i * w_{i+1}); edge bins extend
        symmetrically. Degenerates to |w1 - w0| spacing for a 1-point grid
        fallback of zero width avoided by using the point itself.
        """
        w = self.points
        if w.size == 1:
            return np.array([w[0]])
        mids = np.sqrt(w[:-1] * w[1:])
        lo = np.concatenate(([w[0] * w[0] / mids[0]], mids))
        hi = np.concatenate((mids, [w[-1] * w[-1] / mids[-1]]))
        return hi - lo


def log_grid(lo: float, hi: float, n: int) -> FrequencyGrid:
    if not (0.0 < lo < hi):
        raise ValueError("log grid requires 0 < lo < hi")
    return FrequencyGrid(np.logspace(np.log10(lo), np.log10(hi), int(n)))


def freq_response(model: TransferFunction, grid: FrequencyGrid) -> np.ndarray:
    """Complex response num(jw)/den(jw) on the grid.

    Raises PoleOnGridError if a grid point coincides with an imaginary-axis
    pole (denominator evaluates to exactly zero there).
    """
    s = 1j * grid.points
    den_val = np.polyval(model.den, s)
    bad = np.abs(den_val) == 0.0
    if np.any(bad):
        w_bad = grid.points[np.argmax(bad)]
        raise PoleOnGridError(f"pole on grid at omega = {w_bad:g} rad/s")
    return np.polyval(model.num, s) / den_val


def is_hurwitz(poly) -> bool:
    """True iff all roots of the polynomial lie strictly in the open LHP.

    Decided by a Routh-Hurwitz table; no root extraction. A zero pivot or
    zero row means roots on the imaginary axis or in the RHP, hence False.
    Degree-0 polynomials are vacuously Hurwitz.
    """
    c = _as_poly(poly)
    if c[0] == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    c = c / c[0]
    n = c.size - 1
    if n == 0:
        return True
    # Necessary condition: with a positive leading coefficient every
    # coefficient must be strictly positive.
    if np.any(c <= 0.0):
        return False
    row_prev = c[0::2].astype(float)
    row_curr = c[1::2].astype(float)
    if row_curr.size < row_prev.size:
        row_curr = np.append(row_curr, 0.0)
    for _ in range(n - 1):
        pivot = row_curr[0]
        if pivot <= 0.0:
            return False
        nxt = row_prev[1:] - (row_prev[0] / pivot) * row_curr[1:]
        nxt = np.append(nxt, 0.0)
        row_prev = row_curr
        row_curr = nxt
    return bool(row_curr[0] > 0.0)


@dataclass(frozen=True)
class StateSpace:
    """Real matrices (A, B, C, D); I/O units are carried by the caller."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, float))
        B = np.atleast_2d(np.asarray(self.B, float))
        C = np.atleast_2d(np.asarray(self.C, float))
        D = np.atleast_2d(np.asarray(self.D, float))
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("A must be square")
        if B.shape[0] != n or C.shape[1] != n:
            raise ValueError("B/C dimensions inconsistent with A")
        if D.shape != (C.shape[0], B.shape[1]):
            raise ValueError("D dimensions inconsistent with B and C")
        for name, m in (("A", A), ("B", B), ("C", C), ("D", D)):
            if not np.all(np.isfinite(m)):
                raise ValueError(f"{name} must be finite")
            m.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    @property
    def n_states(self) -> int:
        return self.A.shape[0]


def to_state_space(model: TransferFunction) -> StateSpace:
    """Controllable-canonical realization of a proper transfer function."""
    if not model.is_proper:
        raise ValueError("only proper transfer functions can be realized")
    den = model.den / model.den[0]
    num = model.num / model.den[0]
    n = den.size - 1
    num_full = np.concatenate((np.zeros(n + 1 - num.size), num))
    d = num_full[0]
    rem = num_full[1:] - d * den[1:]   # strictly proper remainder, degree n-1
    if n == 0:
        return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)),
                          np.array([[d]]))
    A = np.zeros((n, n))
    A[:-1, 1:] = np.eye(n - 1)
    A[-1, :] = -den[1:][::-1]
    B = np.zeros((n, 1))
    B[-1, 0] = 1.0
    C = rem[::-1].reshape(1, n)
    D = np.array([[d]])
    return StateSpace(A, B, C, D)


def _zoh_discretize(ss: StateSpace, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact ZOH (Ad, Bd) via the matrix exponential of the augmented block."""
    n, m = ss.n_states, ss.B.shape[1]
    if n == 0:
        return np.zeros((0, 0)), np.zeros((0, m))
    blk = np.zeros((n + m, n + m))
    blk[:n, :n] = ss.A
    blk[:n, n:] = ss.B
    ex = sla.expm(blk * dt)
    return ex[:n, :n], ex[:n, n:]


def simulate_lti(ss: StateSpace, u, dt: float, x0=None) -> np.ndarray:
    """Sampled response y[k] = C x[k] + D u[k] under zero-order hold.

    Discretization is exact ZOH (matrix exponential of the augmented
    [A B; 0 0] block or, equivalently, per-mode exponentials when A is
    diagonalizable). x[0] is zero unless ``x0`` is given; the output has the
    input's length.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    u = np.asarray(u, dtype=float)
    if u.ndim != 1:
        raise ValueError("input must be a 1-D sample array")
    if not np.all(np.isfinite(u)):
        raise NumericalError("input samples must be finite")
    n = ss.n_states
    if n == 0:
        return ss.D[0, 0] * u
    if x0 is None and ss.B.shape[1] == 1 and ss.C.shape[0] == 1:
        modal = _modal_form(ss)
        if modal is not None:
            # Stable fast path: n independent first-order exact-ZOH
            # recursions. Avoids the ill-conditioned expanded discrete
            # polynomial when dt is far below the system time constants.
            lam, gain = modal
            y = np.zeros(u.size, dtype=complex)
            for lam_i, g_i in zip(lam, gain):
                r = np.exp(lam_i * dt)
                phi = dt if lam_i == 0.0 else (r - 1.0) / lam_i
                y += sps.lfilter([0.0, g_i * phi], [1.0, -r], u)
            return y.real + ss.D[0, 0] * u
    Ad, Bd = _zoh_discretize(ss, dt)
    x = np.zeros(n) if x0 is None else np.asarray(x0, float).reshape(n)
    y = np.empty(u.size)
    C, D = ss.C[0], ss.D[0, 0]
    for k in range(u.size):
        y[k] = C @ x + D * u[k]
        x = Ad @ x + Bd[:, 0] * u[k]
    return y


def _modal_form(ss: StateSpace):
    """Eigen-decomposed SISO form: returns (eigenvalues, per-mode gains
    c_i * b_i) or None when A is too close to defective to diagonalize."""
    lam, V = np.linalg.eig(ss.A)
    cond = np.linalg.cond(V)
    if not np.isfinite(cond) or cond > 1e9:
        return None
    beta = np.linalg.solve(V, ss.B[:, 0].astype(complex))
    gamma = ss.C[0].astype(complex) @ V
    return lam, gamma * beta


def simulate_tf(model: TransferFunction, u, dt: float) -> np.ndarray:
    return simulate_lti(to_state_space(model), u, dt)


def hinf_norm_on_grid(model: TransferFunction, grid: FrequencyGrid) -> float:
    """Peak magnitude over the grid, refined locally around the argmax.

    A grid-accurate lower bound of the true infinity norm: up to 3 refinement
    rounds insert a 10x-denser local log grid around the current argmax and
    stop once the peak changes by less than 0.1%.
    """
    if not is_hurwitz(model.den):
        raise UnstableSystemError("norm undefined for unstable system")
    pts = grid.points
    mags = np.abs(freq_response(model, grid))
    i = int(np.argmax(mags))
    best = float(mags[i])
    for _ in range(3):
        lo = pts[max(i - 1, 0)]
        hi = pts[min(i + 1, pts.size - 1)]
        if hi <= lo:
            break
        local = np.geomspace(lo, hi, 21)
        lmags = np.abs(freq_response(model, FrequencyGrid(local)))
        j = int(np.argmax(lmags))
        new_best = max(best, float(lmags[j]))
        converged = abs(new_best - best) < 1e-3 * max(best, 1e-300)
        pts, mags, i, best = local, lmags, j, new_best
        if converged:
            break
    return best
