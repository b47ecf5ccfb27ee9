#!/usr/bin/env python3
"""Synthesize one varying-bandwidth realization and print its vitals.

Useful for eyeballing the signal model: amplitude count, peak value,
measured power, slope margin against the derivative bound, and the event
count / minimum gap for a chosen level spacing.
"""
import argparse
import sys

import numpy as np

from ebcsim.signal_model import (BandwidthProfile, eval_trace, item_seed,
                                 slope_ratio_max, synthesize_vbw_traced, warp)
from ebcsim.sod import SodConfig, detection_rate, min_gap, sod_encode, t_lb


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--w-mean", type=float, default=475.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--realization", type=int, default=0)
    parser.add_argument("--n-levels", type=int, default=40)
    args = parser.parse_args(argv)

    profile = BandwidthProfile(args.w_mean)
    seed = item_seed(args.seed, 0, args.realization)
    signal, values = synthesize_vbw_traced(profile, seed)
    rate = 128000

    print(f"w_mean        {profile.w_mean:g} Hz")
    print(f"warp(1)       {warp(profile, 1.0):.4f}")
    print(f"amplitudes    {len(signal.amplitudes)}")
    print(f"redraws       {signal.n_redraws}")
    print(f"peak |s|      {np.max(np.abs(values)):.4f}")
    print(f"power         {np.mean(values[:-1] ** 2):.4f}")
    print(f"slope ratio   {slope_ratio_max(profile, values, rate):.4f}")

    config = SodConfig(args.n_levels)
    stream = sod_encode(signal, config)
    gap = min_gap(stream)
    print(f"n_levels      {config.n_levels} (delta_l {config.delta_l:.4f})")
    print(f"detection     {detection_rate(config):d} Hz")
    print(f"events        {len(stream)}")
    if gap is not None:
        print(f"min gap       {gap:.3e} s  (T_LB {t_lb(config):.3e} s, "
              f"ratio {gap / t_lb(config):.3f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
