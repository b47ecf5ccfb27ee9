import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from conftest import sod_oracle
from ebcsim.sod import (EventStream, SodConfig, detection_rate,
                        encode_values, event_rate, events_to_samples,
                        initial_level_index, min_gap, parse_events,
                        serialize_events, sod_encode, t_lb)


def ramp_values(rate=16000):
    t = np.arange(rate + 1) / rate  # endpoint included
    return 8.0 * t - 4.0, t


def sine_values(rate=16000):
    # phase reduced mod one period so the t=1 sample is exactly zero
    k = np.arange(rate + 1)
    t = k / rate
    return 3.5 * np.sin(2.0 * np.pi * (k % rate) / rate), t


class TestRampFixture:
    def test_nine_uniform_up_events(self):
        values, _ = ramp_values()
        stream = encode_values(values, 16000, SodConfig(10))
        assert stream.initial_level == 0
        assert len(stream) == 9
        assert np.all(stream.directions == 1)
        expected = (np.arange(1, 10) * (8.0 / 9.0)) / 8.0
        np.testing.assert_allclose(stream.times, expected, atol=1e-12)

    def test_round_trip_levels(self):
        values, _ = ramp_values()
        cfg = SodConfig(10)
        stream = encode_values(values, 16000, cfg)
        samples = events_to_samples(stream, cfg)
        expected = -4.0 + np.arange(1, 10) * cfg.delta_l
        np.testing.assert_allclose(samples.values, expected, atol=1e-12)

    def test_constant_gap(self):
        values, _ = ramp_values()
        stream = encode_values(values, 16000, SodConfig(10))
        gaps = np.diff(stream.times)
        np.testing.assert_allclose(gaps, gaps[0], rtol=1e-9)
        assert min_gap(stream) == pytest.approx(gaps[0])


class TestSineFixture:
    def test_twelve_events(self):
        values, _ = sine_values()
        cfg = SodConfig(9)  # unit level spacing, levels at the integers
        assert cfg.delta_l == 1.0
        stream = encode_values(values, 16000, cfg)
        assert stream.initial_level == 4
        assert len(stream) == 12
        dirs = stream.directions
        assert list(dirs[:3]) == [1, 1, 1]
        assert list(dirs[3:9]) == [-1] * 6
        assert list(dirs[9:]) == [1, 1, 1]

    def test_event_rate(self):
        values, _ = sine_values()
        stream = encode_values(values, 16000, SodConfig(9))
        assert event_rate(stream) == pytest.approx(12.0)


class TestZeroSignal:
    def test_no_events(self):
        stream = encode_values(np.zeros(1001), 1000, SodConfig(9))
        assert len(stream) == 0
        assert stream.initial_level == 4  # amplitude 0 is on the grid

    def test_even_level_count_snaps_negative(self):
        # no zero level with 10 levels; the tie resolves downward
        assert initial_level_index(0.0, SodConfig(10)) == 4
        assert -4.0 + 4 * SodConfig(10).delta_l < 0.0


class TestTimingBound:
    def test_coarse_grid_value(self):
        assert t_lb(SodConfig(10)) == pytest.approx(3.5368e-5, rel=1e-4)

    def test_fine_grid_value(self):
        assert t_lb(SodConfig(100)) == pytest.approx(3.215e-6, rel=1e-3)

    @given(n_levels=st.integers(2, 200))
    def test_linear_in_delta(self, n_levels):
        cfg = SodConfig(n_levels)
        assert t_lb(cfg) == pytest.approx(
            cfg.delta_l / (2.0 * math.pi * 4.0 * 1000.0))

    def test_detection_rate_covers_traversal(self):
        for n_levels in (10, 55, 100):
            cfg = SodConfig(n_levels)
            rate = detection_rate(cfg)
            assert rate % 16000 == 0
            assert 1.0 / rate <= t_lb(cfg) / 4.0

    def test_signal_respects_bound(self, vbw_475):
        signal, values, rate = vbw_475
        for n_levels in (10, 45):
            cfg = SodConfig(n_levels)
            stream = encode_values(values, rate, cfg)
            assert min_gap(stream) >= t_lb(cfg) * (1.0 - 1e-6)


class TestMinGap:
    def test_simple(self):
        stream = EventStream(0, np.array([0.1, 0.25, 0.30]),
                             np.array([1, 1, -1], dtype=np.int8), 1.0)
        assert min_gap(stream) == pytest.approx(0.05)

    def test_undefined_below_two_events(self):
        stream = EventStream(0, np.array([0.4]),
                             np.array([1], dtype=np.int8), 1.0)
        assert min_gap(stream) is None


class TestEventsToSamples:
    def test_cumulative_sum(self):
        cfg = SodConfig(9)
        stream = EventStream(4, np.array([0.1, 0.2, 0.3]),
                             np.array([1, 1, -1], dtype=np.int8), 1.0)
        samples = events_to_samples(stream, cfg)
        np.testing.assert_allclose(samples.values, [1.0, 2.0, 1.0])

    def test_empty(self):
        cfg = SodConfig(9)
        stream = EventStream(4, np.array([]), np.array([], dtype=np.int8),
                             1.0)
        assert len(events_to_samples(stream, cfg)) == 0

    def test_corrupt_stream_rejected(self):
        cfg = SodConfig(9)
        stream = EventStream(8, np.array([0.1, 0.2]),
                             np.array([1, 1], dtype=np.int8), 1.0)
        with pytest.raises(ValueError):
            events_to_samples(stream, cfg)


class TestEventRate:
    def test_counts_per_second(self):
        stream = EventStream(0, np.linspace(0.01, 0.99, 100),
                             np.ones(100, dtype=np.int8), 1.0)
        assert event_rate(stream) == pytest.approx(100.0)

    def test_zero_events(self):
        stream = EventStream(0, np.array([]), np.array([], dtype=np.int8),
                             1.0)
        assert event_rate(stream) == 0.0


class TestOracleAgreement:
    @pytest.mark.parametrize("n_levels", [10, 25])
    def test_matches_brute_force_on_vbw(self, vbw_325, n_levels):
        signal, values, rate = vbw_325
        stream = encode_values(values, rate, SodConfig(n_levels))
        level0, events = sod_oracle(values, rate, n_levels)
        assert stream.initial_level == level0
        assert len(stream) == len(events)
        np.testing.assert_array_equal(stream.directions,
                                      [d for _, d in events])
        np.testing.assert_allclose(stream.times, [t for t, _ in events],
                                   atol=1e-9)

    def test_monotone_event_count(self, vbw_325):
        signal, values, rate = vbw_325
        counts = [len(encode_values(values, rate, SodConfig(nl)))
                  for nl in range(10, 101, 10)]
        assert counts == sorted(counts)  # finer levels, more events

    def test_total_variation_bracket(self, vbw_325):
        signal, values, rate = vbw_325
        cfg = SodConfig(20)
        tv = float(np.sum(np.abs(np.diff(values))))
        count = len(encode_values(values, rate, cfg))
        net = abs(values[-1] - values[0])
        assert net / cfg.delta_l - 2.0 <= count
        assert count <= tv / cfg.delta_l + 1

    def test_samples_match_signal_at_event_times(self, vbw_325):
        signal, values, rate = vbw_325
        cfg = SodConfig(40)
        stream = sod_encode(signal, cfg)  # dedicated detection grid
        samples = events_to_samples(stream, cfg)
        actual = signal.evaluate(samples.times)
        assert np.max(np.abs(actual - samples.values)) <= 1e-3 * cfg.delta_l


@given(values=hnp.arrays(np.float64, st.integers(2, 200),
                         elements=st.floats(-4.0, 4.0)),
       n_levels=st.integers(2, 30))
@settings(max_examples=60, deadline=None)
def test_random_walks_round_trip(values, n_levels):
    cfg = SodConfig(n_levels)
    stream = encode_values(values, 1000.0, cfg)
    assert np.all(np.diff(stream.times) > 0.0)
    samples = events_to_samples(stream, cfg)  # never leaves the level grid
    if len(samples) > 1:
        steps = np.abs(np.diff(samples.values))
        np.testing.assert_allclose(steps, cfg.delta_l, rtol=1e-9)
    level0, events = sod_oracle(values, 1000.0, n_levels)
    assert len(stream) == len(events)
    assert stream.initial_level == level0


class TestSerialization:
    def test_round_trip(self):
        stream = EventStream(3, np.array([0.12345678901, 0.5]),
                             np.array([1, -1], dtype=np.int8), 1.0)
        text = serialize_events(stream)
        assert text.splitlines()[0] == "initial_level=3"
        back = parse_events(text)
        assert back.initial_level == 3
        np.testing.assert_allclose(back.times, stream.times, rtol=1e-8)
        np.testing.assert_array_equal(back.directions, stream.directions)

    def test_header_required(self):
        with pytest.raises(ValueError):
            parse_events("0.1,1\n")


def test_sod_encode_uses_detection_grid(vbw_325):
    signal, values, rate = vbw_325
    cfg = SodConfig(10)
    stream = sod_encode(signal, cfg)
    level0, events = sod_oracle(values, rate, 10)
    # detection_rate(cfg) == 128000 here, the fixture grid
    assert detection_rate(cfg) == rate
    assert len(stream) == len(events)
    np.testing.assert_allclose(stream.times, [t for t, _ in events],
                               atol=1e-9)
