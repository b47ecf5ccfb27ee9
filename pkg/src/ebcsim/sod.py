"""Send-on-delta sampling: one-bit event encoding and timing figures.

An event is emitted whenever the signal moves delta_l away from the
amplitude of the previous event; levels are equidistant over [-s_max,
s_max] with the endpoints included.  The start level is carried as side
information and not counted as a transmitted event.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import signal_model
from ._kernels import sod_walk
from .signal_model import DenseTrace, VbwSignal, S_MAX, W_MAX, GRID_RATE


@dataclass(frozen=True)
class SodConfig:
    n_levels: int
    s_max: float = S_MAX

    def __post_init__(self):
        if self.n_levels < 2:
            raise ValueError("need at least two levels")

    @property
    def delta_l(self) -> float:
        return 2.0 * self.s_max / (self.n_levels - 1)

    def levels(self) -> np.ndarray:
        return -self.s_max + np.arange(self.n_levels) * self.delta_l


@dataclass(frozen=True, eq=False)
class EventStream:
    initial_level: int
    times: np.ndarray
    directions: np.ndarray  # entries +1 / -1
    duration: float

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True, eq=False)
class NonuniformSamples:
    times: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.times)


def initial_level_index(s0: float, config: SodConfig) -> int:
    """Nearest level to s0, ties resolved toward the negative side."""
    idx = math.ceil((s0 + config.s_max) / config.delta_l - 0.5)
    return min(max(idx, 0), config.n_levels - 1)


def t_lb(config: SodConfig, w_max: float = W_MAX) -> float:
    """Provable lower bound delta_l / (2*pi*s_max*w_max) on event gaps."""
    return config.delta_l / (2.0 * math.pi * config.s_max * w_max)


def detection_rate(config: SodConfig, w_max: float = W_MAX,
                   base_rate: int = GRID_RATE) -> int:
    """Grid rate giving >= 4 points per worst-case level traversal."""
    required = 4.0 / t_lb(config, w_max)
    stride = max(1, math.ceil(required / base_rate))
    return stride * base_rate


def encode_values(values: np.ndarray, rate: float, config: SodConfig,
                  t0: float = 0.0, duration: float | None = None) -> EventStream:
    """Run the SOD walk over uniform-grid samples of a bounded signal."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    level0 = initial_level_index(float(values[0]), config)
    times, dirs = sod_walk(values, t0, 1.0 / rate, level0,
                           -config.s_max, config.delta_l, config.n_levels)
    if duration is None:
        duration = t0 + (len(values) - 1) / rate
    return EventStream(initial_level=level0, times=times,
                       directions=dirs.astype(np.int8), duration=duration)


def sod_encode(signal: VbwSignal, config: SodConfig,
               grid_rate: int | None = None) -> EventStream:
    """Encode a varying-bandwidth signal on its detection grid."""
    if grid_rate is None:
        grid_rate = detection_rate(config, signal.profile.w_max)
    t = signal_model.synth_times(signal.profile, grid_rate)
    values = signal.evaluate(t)
    return encode_values(values, grid_rate, config,
                         duration=signal.profile.duration)


def events_to_samples(stream: EventStream, config: SodConfig) -> NonuniformSamples:
    """Cumulative level walk from the initial level, mapped to amplitudes."""
    levels = stream.initial_level + np.cumsum(stream.directions)
    if len(levels) and (levels.min() < 0 or levels.max() > config.n_levels - 1):
        raise ValueError("corrupt stream: running level leaves the grid")
    values = -config.s_max + levels * config.delta_l
    return NonuniformSamples(times=stream.times.copy(), values=values)


def min_gap(stream: EventStream) -> float | None:
    """Minimum spacing between consecutive events; None below 2 events."""
    if len(stream) < 2:
        return None
    return float(np.min(np.diff(stream.times)))


def event_rate(stream: EventStream) -> float:
    if stream.duration <= 0:
        raise ValueError("duration must be positive")
    return len(stream) / stream.duration


def serialize_events(stream: EventStream) -> str:
    """Text form: 'initial_level=<k>' header then 'time,direction' lines."""
    lines = [f"initial_level={stream.initial_level}"]
    for t, d in zip(stream.times, stream.directions):
        lines.append(f"{t:.9g},{int(d)}")
    return "\n".join(lines) + "\n"


def parse_events(text: str, duration: float = signal_model.DURATION) -> EventStream:
    lines = [ln for ln in text.strip().splitlines() if ln]
    head = lines[0]
    if not head.startswith("initial_level="):
        raise ValueError("missing initial_level header")
    initial = int(head.split("=", 1)[1])
    times, dirs = [], []
    for ln in lines[1:]:
        t_str, d_str = ln.split(",")
        times.append(float(t_str))
        dirs.append(int(d_str))
    return EventStream(initial_level=initial, times=np.array(times),
                       directions=np.array(dirs, dtype=np.int8),
                       duration=duration)
