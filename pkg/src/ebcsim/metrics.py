"""Error and efficiency figures."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signal_model import S_MAX, W_MAX


@dataclass(frozen=True)
class EfficiencyFigures:
    p_rel: float
    b_rel: float
    b_rel_worst: float
    t_min: float
    r_event: float
    r_symbol: float


def nmse(reference, estimate, pointwise: bool = False) -> float:
    """Normalized MSE of an estimate against a reference.

    Default is the ratio of sums sum|s - s_hat|^2 / sum|s|^2.  The
    pointwise variant averages per-sample ratios, skipping samples where
    the reference is exactly zero (it diverges near zero crossings and is
    provided for comparison only).
    """
    s = np.asarray(reference, dtype=float)
    e = np.asarray(estimate, dtype=float)
    if s.shape != e.shape:
        raise ValueError("reference and estimate lengths differ")
    err2 = np.abs(s - e) ** 2
    if pointwise:
        mask = s != 0.0
        if not np.any(mask):
            raise ValueError("reference has no nonzero samples")
        return float(np.mean(err2[mask] / np.abs(s[mask]) ** 2))
    denom = float(np.sum(np.abs(s) ** 2))
    if denom == 0.0:
        raise ValueError("zero-energy reference: NMSE undefined")
    return float(np.sum(err2)) / denom


def ensemble_nmse(per_signal: np.ndarray) -> float:
    """Mean of per-signal NMSE ratios over the realizations."""
    return float(np.mean(np.asarray(per_signal, dtype=float)))


def p_rel(r_event: float, n_bits: int, f_s: float) -> float:
    """Relative transmit power: event rate over WSK symbol rate."""
    denom = n_bits * f_s
    if denom <= 0:
        raise ValueError("symbol rate must be positive")
    return r_event / denom


def b_rel(t_min: float, n_bits: int, f_s: float) -> float:
    """Relative transmit bandwidth: 1 / (t_min * symbol rate)."""
    if t_min <= 0:
        raise ValueError("t_min must be positive")
    return 1.0 / (t_min * n_bits * f_s)


def b_rel_worst(delta_l: float, n_bits: int, f_s: float,
                s_max: float = S_MAX, w_max: float = W_MAX) -> float:
    """Worst-case bandwidth at the provable minimum event spacing."""
    return 2.0 * math.pi * s_max * w_max / (delta_l * n_bits * f_s)
