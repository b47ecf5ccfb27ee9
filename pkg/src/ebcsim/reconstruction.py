"""Receiver-side signal estimates.

Event samples are linearly interpolated (deliberately simple, a
worst-case reconstruction); uniform samples are dequantized and sinc-
interpolated back to the evaluation grid by full-length summation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bandlimited import bandlimited_resample
from .signal_model import DenseTrace, VbwSignal, GRID_RATE, DURATION, eval_trace
from .sod import NonuniformSamples
from .wsk import SymbolStream, antialias, uniform_sample, dequantize


@dataclass(frozen=True, eq=False)
class Reconstruction:
    rate: float
    values: np.ndarray
    source: str  # "EBC" or "WSK"


def reconstruct_ebc(samples: NonuniformSamples, grid_rate: int = GRID_RATE,
                    duration: float = DURATION) -> Reconstruction:
    """Piecewise-linear interpolation; held flat outside the sample span."""
    n = int(round(grid_rate * duration))
    t = np.arange(n) / grid_rate
    if len(samples) == 0:
        values = np.zeros(n)
    else:
        values = np.interp(t, samples.times, samples.values)
    return Reconstruction(rate=grid_rate, values=values, source="EBC")


def sinc_reconstruct(sample_values: np.ndarray, f_s: float,
                     grid_rate: int = GRID_RATE,
                     duration: float = DURATION) -> np.ndarray:
    """Full-length sinc interpolation of uniform samples onto the grid."""
    n = int(round(grid_rate * duration))
    return bandlimited_resample(sample_values, f_s, grid_rate, n)


def reconstruct_wsk(stream: SymbolStream, grid_rate: int = GRID_RATE,
                    duration: float = DURATION) -> Reconstruction:
    values = dequantize(stream.indices, stream.config.n_bits,
                        stream.config.s_max)
    est = sinc_reconstruct(values, stream.config.f_s, grid_rate, duration)
    return Reconstruction(rate=grid_rate, values=est, source="WSK")


def nyquist_reconstruct_reference(signal: VbwSignal, f_s: float,
                                  grid_rate: int = GRID_RATE) -> Reconstruction:
    """Unquantized control path: filter, sample, sinc-interpolate."""
    trace = eval_trace(signal, grid_rate)
    filtered = antialias(trace, f_s)
    samples = uniform_sample(filtered, f_s)
    est = sinc_reconstruct(samples, f_s, grid_rate, signal.profile.duration)
    return Reconstruction(rate=grid_rate, values=est, source="WSK")
