"""Adaptive Dormand-Prince 5(4) integrator with PI step control and events.

Dense output between accepted nodes is the cubic Hermite interpolant built
from the stored states and derivatives.  Event roots are located on that
interpolant and then the state at the root is recomputed by one direct
Runge-Kutta step from the preceding node, so event states carry the full
5th-order accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import IntegrationStall

# Dormand-Prince 5(4) tableau.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B5 - _B4

# PI controller constants (Hairer, Norsett & Wanner, DOPRI5).
_SAFE = 0.9
_BETA = 0.04
_EXPO1 = 0.2 - 0.75 * _BETA
_FAC_MIN = 0.2
_FAC_MAX = 10.0


@dataclass
class Event:
    """Root of ``fn(t, y)``; ``direction`` +1/-1 keeps only rising/falling crossings.

    A terminal event stops the integration at its ``count``-th occurrence.
    """

    fn: Callable[[float, np.ndarray], float]
    direction: int = 0
    terminal: bool = True
    count: int = 1


@dataclass
class OdeSolution:
    t: np.ndarray
    y: np.ndarray
    f: np.ndarray
    n_rejected: int = 0
    n_fev: int = 0
    events: list = field(default_factory=list)
    status: str = "completed"

    def __call__(self, t):
        """Cubic Hermite interpolation at ``t`` (scalar)."""
        i = int(np.searchsorted(self.t, t, side="right")) - 1
        i = min(max(i, 0), len(self.t) - 2)
        return hermite(self.t[i], self.y[i], self.f[i], self.t[i + 1], self.y[i + 1], self.f[i + 1], t)


def hermite(t0, y0, f0, t1, y1, f1, t):
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def _step(fun, t, y, f0, h):
    """One Dormand-Prince step; returns (y_new, f_new, error_estimate)."""
    k = [f0]
    for i in range(1, 7):
        dy = h * sum(a * kj for a, kj in zip(_A[i], k) if a != 0.0)
        k.append(fun(t + _C[i] * h, y + dy))
    y_new = y + h * sum(b * kj for b, kj in zip(_B5, k) if b != 0.0)
    # FSAL: the 7th stage is evaluated at (t+h, y_new).
    f_new = k[6]
    err = h * sum(e * kj for e, kj in zip(_E, k) if e != 0.0)
    return y_new, f_new, err


def _initial_step(fun, t0, y0, f0, direction, rtol, atol, t_end):
    scale = atol + rtol * np.abs(y0)
    d0 = np.max(np.abs(y0) / scale)
    d1 = np.max(np.abs(f0) / scale)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, abs(t_end - t0))
    y1 = y0 + direction * h0 * f0
    f1 = fun(t0 + direction * h0, y1)
    d2 = np.max(np.abs(f1 - f0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, abs(t_end - t0))


def dopri54(
    fun: Callable[[float, np.ndarray], np.ndarray],
    t_span: tuple[float, float],
    y0,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    events: Sequence[Event] = (),
    max_step: float = math.inf,
    first_step: float | None = None,
    max_steps: int = 2_000_000,
) -> OdeSolution:
    """Integrate ``y' = fun(t, y)`` over ``t_span``.

    The local error is measured in the max-norm scaled by
    ``atol + rtol * max(|y_n|, |y_{n+1}|)``.  A step size below
    ``16 eps |t|`` raises ``IntegrationStall`` carrying the partial solution.
    """
    t0, t_end = float(t_span[0]), float(t_span[1])
    if t_end == t0:
        raise ValueError("empty integration interval")
    direction = 1.0 if t_end > t0 else -1.0
    y = np.array(y0, dtype=float)
    f = np.asarray(fun(t0, y), dtype=float)
    n_fev = 1
    ts, ys, fs = [t0], [y.copy()], [f.copy()]
    hits = [0] * len(events)
    found = []
    g_prev = [float(ev.fn(t0, y)) for ev in events]

    h = first_step if first_step else _initial_step(fun, t0, y, f, direction, rtol, atol, t_end)
    n_fev += 0 if first_step else 1
    h = min(h, max_step)
    t = t0
    facold = 1e-4
    n_rejected = 0
    reject_last = False

    def partial(status):
        return OdeSolution(np.array(ts), np.array(ys), np.array(fs), n_rejected, n_fev, found, status)

    for _ in range(max_steps):
        if direction * (t - t_end) >= 0:
            break
        h_min = 16 * np.finfo(float).eps * max(abs(t), 1.0)
        if h < h_min:
            raise IntegrationStall(f"step size underflow at t={t!r}", partial("stalled"))
        if direction * (t + direction * h - t_end) > 0:
            h = abs(t_end - t)
        y_new, f_new, err_vec = _step(fun, t, y, f, direction * h)
        n_fev += 6
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale))
        if not math.isfinite(err):
            h *= _FAC_MIN
            n_rejected += 1
            reject_last = True
            continue
        fac11 = err**_EXPO1
        if err <= 1.0:
            fac = fac11 / facold**_BETA
            fac = max(1 / _FAC_MAX, min(1 / _FAC_MIN, fac / _SAFE))
            h_new = h / fac
            if reject_last:
                h_new = min(h_new, h)
            facold = max(err, 1e-4)
            reject_last = False
            t_new = t + direction * h
            if t_new == t:
                raise IntegrationStall(f"step size underflow at t={t!r}", partial("stalled"))
            stop = False
            for j, ev in enumerate(events):
                g_new = float(ev.fn(t_new, y_new))
                crossed = (g_prev[j] < 0 < g_new and ev.direction >= 0) or (
                    g_prev[j] > 0 > g_new and ev.direction <= 0
                )
                if crossed or (g_new == 0.0 and g_prev[j] != 0.0):
                    t_e = _locate(ev, t, y, f, t_new, y_new, f_new)
                    if t_e == t:
                        y_e, f_e = y, f
                    else:
                        y_e, f_e, _ = _step(fun, t, y, f, t_e - t)
                        n_fev += 6
                    hits[j] += 1
                    found.append((j, t_e, y_e.copy()))
                    if ev.terminal and hits[j] >= ev.count:
                        t_new, y_new, f_new = t_e, y_e, f_e
                        stop = True
                g_prev[j] = g_new
            t, y, f = t_new, y_new, f_new
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
            if stop:
                return partial("event")
            h = min(h_new, max_step)
        else:
            h = h / min(1 / _FAC_MIN, fac11 / _SAFE)
            n_rejected += 1
            reject_last = True
    else:
        raise IntegrationStall(f"step budget exhausted at t={t!r}", partial("stalled"))
    return partial("completed")


def _locate(ev, t0, y0, f0, t1, y1, f1):
    def g(tt):
        return float(ev.fn(tt, hermite(t0, y0, f0, t1, y1, f1, tt)))

    ga, gb = g(t0), g(t1)
    if gb == 0.0:
        return t1
    if ga == 0.0 or ga * gb > 0:
        # Hermite interpolant disagrees with the nodes; fall back to the node.
        return t1
    lo, hi = (t0, t1) if t0 < t1 else (t1, t0)
    return brentq(g, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
