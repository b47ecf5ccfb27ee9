"""Uniform-sampling baseline: anti-alias filter, sampler, quantizer.

The filter is an 8th-order Butterworth at cutoff f_s/2, applied forward
and backward (zero phase) as second-order sections.  The quantizer is
mid-rise over [-s_max, s_max] with saturation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.signal import butter, sosfiltfilt

from .bandlimited import bandlimited_resample
from .signal_model import DenseTrace, S_MAX

FILTER_ORDER = 8


@dataclass(frozen=True)
class WskConfig:
    f_s: float
    n_bits: int
    filter_order: int = FILTER_ORDER
    s_max: float = S_MAX

    def __post_init__(self):
        if self.n_bits < 1:
            raise ValueError("n_bits must be >= 1")
        if self.f_s <= 0:
            raise ValueError("f_s must be positive")

    @property
    def r_symbol(self) -> float:
        return self.n_bits * self.f_s


@dataclass(frozen=True, eq=False)
class SymbolStream:
    config: WskConfig
    indices: np.ndarray
    duration: float


@lru_cache(maxsize=64)
def _aa_sos(f_s: float, rate: float, order: int) -> np.ndarray:
    return butter(order, f_s / 2.0, fs=rate, output="sos")


def antialias(trace: DenseTrace, f_s: float,
              order: int = FILTER_ORDER) -> DenseTrace:
    """Zero-phase Butterworth low-pass at cutoff f_s/2 on the trace grid."""
    if f_s / 2.0 >= trace.rate / 2.0:
        raise ValueError(
            f"cutoff {f_s / 2} Hz not below grid Nyquist {trace.rate / 2} Hz")
    sos = _aa_sos(float(f_s), float(trace.rate), order)
    return DenseTrace(rate=trace.rate, values=sosfiltfilt(sos, trace.values),
                      t0=trace.t0)


def uniform_sample(trace: DenseTrace, f_s: float) -> np.ndarray:
    """Values at t_k = k/f_s, k = 0 .. floor(f_s*duration) - 1.

    Grid-aligned rates reduce to integer-stride decimation; other rational
    rates use exact sinc interpolation of the grid samples.
    """
    n_out = int(np.floor(f_s * trace.duration))
    return bandlimited_resample(trace.values, trace.rate, f_s, n_out)


def quantize(x, n_bits: int, s_max: float = S_MAX) -> np.ndarray:
    """Mid-rise index: clamp(floor((x + s_max)/q), 0, 2^n_bits - 1)."""
    q = 2.0 * s_max / 2 ** n_bits
    idx = np.floor((np.asarray(x, dtype=float) + s_max) / q)
    return np.clip(idx, 0, 2 ** n_bits - 1).astype(np.int64)


def dequantize(index, n_bits: int, s_max: float = S_MAX) -> np.ndarray:
    q = 2.0 * s_max / 2 ** n_bits
    return -s_max + (np.asarray(index, dtype=float) + 0.5) * q


def wsk_encode(trace: DenseTrace, config: WskConfig) -> SymbolStream:
    """Anti-alias, sample, quantize."""
    filtered = antialias(trace, config.f_s, config.filter_order)
    samples = uniform_sample(filtered, config.f_s)
    indices = quantize(samples, config.n_bits, config.s_max)
    return SymbolStream(config=config, indices=indices,
                       duration=trace.duration)


def serialize_symbols(stream: SymbolStream) -> str:
    return ",".join(str(int(i)) for i in stream.indices)
