"""Numerical hot loops (numba-compiled).

Both kernels here are performance ports of straightforward reference
implementations that live next to them; the references are kept for use
as test oracles.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _sinc_series_core(tau: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Evaluates sum_n a_n * sinc(2*tau - n) using
    # sin(pi*(2*tau - n)) = (-1)^n * sin(2*pi*tau), so the inner loop is a
    # plain reciprocal sum over b_n = (-1)^n * a_n.  The term nearest
    # 2*tau (where the reciprocal is ill-conditioned) is handled directly.
    n_terms = b.size
    out = np.empty(tau.size)
    for i in range(tau.size):
        x = 2.0 * tau[i]
        n0 = int(round(x))
        if n0 < 0 or n0 >= n_terms:
            n0 = -1
        acc = 0.0
        for n in range(0, n0):
            acc += b[n] / (x - n)
        start = n0 + 1 if n0 >= 0 else 0
        for n in range(start, n_terms):
            acc += b[n] / (x - n)
        v = math.sin(math.pi * x) / math.pi * acc
        if n0 >= 0:
            d = x - n0
            if d == 0.0:
                s = 1.0
            else:
                pd = math.pi * d
                s = math.sin(pd) / pd
            sign = -1.0 if (n0 & 1) else 1.0
            v += sign * b[n0] * s
        out[i] = v
    return out


def warped_sinc_series(tau: np.ndarray, amplitudes: np.ndarray) -> np.ndarray:
    """Evaluate sum_n a_n * sinc(2*tau - n) at warped times tau."""
    tau = np.ascontiguousarray(tau, dtype=np.float64)
    a = np.asarray(amplitudes, dtype=np.float64)
    b = a * np.where(np.arange(a.size) % 2 == 0, 1.0, -1.0)
    return _sinc_series_core(tau, np.ascontiguousarray(b))


def warped_sinc_series_reference(tau, amplitudes, chunk: int = 4096):
    """Direct np.sinc summation; slow, used as an independent oracle."""
    tau = np.asarray(tau, dtype=np.float64)
    a = np.asarray(amplitudes, dtype=np.float64)
    n = np.arange(a.size)
    out = np.empty(tau.size)
    for lo in range(0, tau.size, chunk):
        hi = min(lo + chunk, tau.size)
        out[lo:hi] = np.sinc(2.0 * tau[lo:hi, None] - n[None, :]) @ a
    return out


@njit(cache=True)
def sod_walk(values: np.ndarray, t0: float, dt: float, level0: int,
             base: float, dl: float, n_levels: int):
    # Sequential send-on-delta walk over a uniform detection grid.  Within a
    # grid interval the signal is taken as linear, so crossings are emitted
    # in traversal order with linearly interpolated times.  An exact touch
    # of a threshold counts as a crossing.
    cap = 16 + n_levels
    tv = 0.0
    for k in range(1, values.size):
        tv += abs(values[k] - values[k - 1])
    cap += int(tv / dl)
    times = np.empty(cap)
    dirs = np.empty(cap, dtype=np.int8)
    m = 0
    level = level0
    prev = values[0]
    t_prev = t0
    for k in range(1, values.size):
        cur = values[k]
        t_k = t0 + k * dt
        while level < n_levels - 1:
            thr = base + (level + 1) * dl
            if cur >= thr:
                times[m] = t_prev + dt * (thr - prev) / (cur - prev)
                dirs[m] = 1
                m += 1
                level += 1
            else:
                break
        while level > 0:
            thr = base + (level - 1) * dl
            if cur <= thr:
                times[m] = t_prev + dt * (thr - prev) / (cur - prev)
                dirs[m] = -1
                m += 1
                level -= 1
            else:
                break
        prev = cur
        t_prev = t_k
    return times[:m].copy(), dirs[:m].copy()
