import math

import numpy as np
import pytest

from ebcsim.signal_model import BandwidthProfile, synthesize_vbw_traced

# one line per acceptance criterion, echoed after the test summary
acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def sod_oracle(values, rate, n_levels, s_max=4.0, t0=0.0):
    """Brute-force per-grid-step SOD reference.

    Walks every grid interval in pure Python, emitting linearly
    interpolated crossings one at a time.  Returns (initial_level,
    [(time, direction), ...]).
    """
    dl = 2.0 * s_max / (n_levels - 1)
    base = -s_max
    level = min(max(math.ceil((values[0] + s_max) / dl - 0.5), 0),
                n_levels - 1)
    level0 = level
    dt = 1.0 / rate
    events = []
    for k in range(1, len(values)):
        prev, cur = values[k - 1], values[k]
        while True:
            if level + 1 <= n_levels - 1 and cur >= base + (level + 1) * dl:
                thr = base + (level + 1) * dl
                frac = (thr - prev) / (cur - prev)
                events.append((t0 + (k - 1 + frac) * dt, +1))
                level += 1
            elif level - 1 >= 0 and cur <= base + (level - 1) * dl:
                thr = base + (level - 1) * dl
                frac = (thr - prev) / (cur - prev)
                events.append((t0 + (k - 1 + frac) * dt, -1))
                level -= 1
            else:
                break
    return level0, events


@pytest.fixture(scope="session")
def vbw_475():
    """One accepted realization at w_mean = 475 Hz with its grid values."""
    profile = BandwidthProfile(475.0)
    signal, values = synthesize_vbw_traced(profile, seed=7,
                                           grid_rate=128000)
    return signal, values, 128000


@pytest.fixture(scope="session")
def vbw_325():
    profile = BandwidthProfile(325.0)
    signal, values = synthesize_vbw_traced(profile, seed=3,
                                           grid_rate=128000)
    return signal, values, 128000
