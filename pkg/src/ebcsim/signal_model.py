"""Varying-bandwidth test signals built by time-warping a bandlimited series.

A signal is the composition s(t) = s_tilde(gamma(t)) of a unit-bandwidth
sinc series s_tilde with a monotone warp gamma whose derivative is the
instantaneous bandwidth W(t).  W(t) is an offset Gaussian with a fixed
1 kHz peak at t = 0.5 s; the mean bandwidth w_mean is the free parameter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from ._kernels import warped_sinc_series

W_MAX = 1000.0
S_MAX = 4.0
DURATION = 1.0
GRID_RATE = 16000
DEFAULT_SYNTH_RATE = 128000


@dataclass(frozen=True)
class BandwidthProfile:
    """Instantaneous-bandwidth profile W(t) = offset + amp * gaussian(t)."""

    w_mean: float
    w_max: float = W_MAX
    sigma: float = 0.1
    center: float = 0.5
    duration: float = DURATION

    def __post_init__(self):
        if not 250.0 < self.w_mean < 1000.0:
            raise ValueError(
                f"w_mean must lie in (250, 1000) Hz, got {self.w_mean}")

    @property
    def offset(self) -> float:
        return (4.0 / 3.0) * (self.w_mean - 250.0)

    @property
    def gauss_amp(self) -> float:
        return (4.0 / 3.0) * (1000.0 - self.w_mean)


@dataclass(frozen=True, eq=False)
class VbwSignal:
    """An accepted varying-bandwidth realization (series coefficients)."""

    profile: BandwidthProfile
    amplitudes: np.ndarray
    s_max: float = S_MAX
    seed: int | None = None
    n_redraws: int = 0

    def evaluate(self, t) -> np.ndarray:
        tau = warp(self.profile, t)
        return warped_sinc_series(np.atleast_1d(tau), self.amplitudes)


@dataclass(frozen=True, eq=False)
class DenseTrace:
    """Uniform-grid evaluation of a signal, first point at t0."""

    rate: float
    values: np.ndarray
    t0: float = 0.0

    @property
    def duration(self) -> float:
        return len(self.values) / self.rate

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self.values)) / self.rate


def inst_bandwidth(profile: BandwidthProfile, t):
    """W(t) in Hz; defined for all real t."""
    t = np.asarray(t, dtype=float)
    z = (t - profile.center) / profile.sigma
    return profile.offset + profile.gauss_amp * np.exp(-0.5 * z * z)


def warp(profile: BandwidthProfile, t):
    """Closed-form antiderivative gamma(t) of W, with gamma(0) = 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < -1e-12) or np.any(t > profile.duration + 1e-12):
        raise ValueError("warp is defined on [0, duration]")
    s2 = profile.sigma * math.sqrt(2.0)
    gauss_part = erf((t - profile.center) / s2) - erf(-profile.center / s2)
    scale = profile.gauss_amp * profile.sigma * math.sqrt(math.pi / 2.0)
    return profile.offset * t + scale * gauss_part


def derivative_bound(profile: BandwidthProfile, t, s_max: float = S_MAX):
    """Slope bound 2*pi*s_max*W(t) for bounded warped signals."""
    return 2.0 * math.pi * s_max * inst_bandwidth(profile, t)


def num_amplitudes(profile: BandwidthProfile) -> int:
    """Series length: twice the warped extent of the observation window."""
    return int(round(2.0 * float(warp(profile, profile.duration))))


def synth_times(profile: BandwidthProfile, rate: int) -> np.ndarray:
    """Synthesis/detection grid over [0, duration], endpoint included."""
    n = int(round(rate * profile.duration))
    return np.arange(n + 1) / rate


def synthesize_vbw_traced(profile: BandwidthProfile, seed: int,
                          grid_rate: int = DEFAULT_SYNTH_RATE,
                          s_max: float = S_MAX,
                          max_redraws: int = 1000):
    """Draw standard-normal coefficients, rejecting until |s| <= s_max.

    Returns the accepted signal together with its values on the synthesis
    grid (endpoint included), so callers can reuse the evaluation.
    """
    rng = np.random.default_rng(seed)
    t = synth_times(profile, grid_rate)
    tau = warp(profile, t)
    n_a = num_amplitudes(profile)
    for attempt in range(max_redraws):
        a = rng.standard_normal(n_a)
        values = warped_sinc_series(tau, a)
        if np.max(np.abs(values)) <= s_max:
            sig = VbwSignal(profile=profile, amplitudes=a, s_max=s_max,
                            seed=seed, n_redraws=attempt)
            return sig, values
    raise RuntimeError(
        f"no realization with |s| <= {s_max} after {max_redraws} draws "
        f"(w_mean={profile.w_mean}, seed={seed})")


def synthesize_vbw(profile: BandwidthProfile, seed: int,
                   grid_rate: int = DEFAULT_SYNTH_RATE,
                   s_max: float = S_MAX,
                   max_redraws: int = 1000) -> VbwSignal:
    sig, _ = synthesize_vbw_traced(profile, seed, grid_rate, s_max,
                                   max_redraws)
    return sig


def eval_trace(signal: VbwSignal, rate: int) -> DenseTrace:
    """Evaluate the series at t_k = k/rate, k = 0 .. rate*duration - 1."""
    if rate < GRID_RATE:
        raise ValueError(f"rate must be >= {GRID_RATE} Hz")
    n = int(round(rate * signal.profile.duration))
    t = np.arange(n) / rate
    return DenseTrace(rate=rate, values=signal.evaluate(t))


def slope_ratio_max(profile: BandwidthProfile, values: np.ndarray,
                    rate: float, s_max: float = S_MAX) -> float:
    """Max of |finite-difference slope| / (2*pi*s_max*W(t_mid)) on a grid."""
    dt = 1.0 / rate
    slopes = np.abs(np.diff(values)) / dt
    t_mid = (np.arange(slopes.size) + 0.5) * dt
    bound = derivative_bound(profile, t_mid, s_max)
    return float(np.max(slopes / bound))


def item_seed(master_seed: int, w_index: int, realization: int) -> int:
    """Counter-style substream seed, independent of execution order."""
    ss = np.random.SeedSequence([master_seed, w_index, realization])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
