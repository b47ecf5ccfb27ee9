"""Command-line front end: sweep, signal, report."""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .signal_model import (BandwidthProfile, eval_trace, item_seed,
                           synthesize_vbw, GRID_RATE)
from .sod import SodConfig, sod_encode, serialize_events
from .sweep import (SweepConfig, build_comparison, emit_outputs,
                    load_records, run_sweep)

_TUPLE_FIELDS = {"w_mean_list", "n_os_list", "n_bits_list", "n_levels_list",
                 "target_nmse_list"}
_INT_FIELDS = {"master_seed", "m_realizations", "grid_rate", "workers"}


def _parse_config_file(path: str) -> dict:
    """JSON or flat key=value lines; keys are SweepConfig field names."""
    with open(path) as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
    out = {}
    for key, value in raw.items():
        if key in _TUPLE_FIELDS:
            if isinstance(value, str):
                value = [v for v in value.replace(",", " ").split()]
            conv = int if key in ("n_bits_list", "n_levels_list") else float
            out[key] = tuple(conv(v) for v in value)
        elif key in _INT_FIELDS:
            out[key] = int(value)
        else:
            raise ValueError(f"unknown config key: {key}")
    return out


def _sweep_config(args) -> SweepConfig:
    kwargs = {}
    if args.config:
        kwargs.update(_parse_config_file(args.config))
    if args.seed is not None:
        kwargs["master_seed"] = args.seed
    if args.realizations is not None:
        kwargs["m_realizations"] = args.realizations
    if args.w_mean:
        kwargs["w_mean_list"] = tuple(args.w_mean)
    if args.workers is not None:
        kwargs["workers"] = args.workers
    return SweepConfig(**kwargs)


def _cmd_sweep(args) -> int:
    config = _sweep_config(args)
    print(f"running sweep: {len(config.w_mean_list)} profiles x "
          f"{config.m_realizations} realizations, "
          f"fine grid {config.fine_rate()} Hz", flush=True)
    result = run_sweep(config, verbose=args.verbose)
    rows = build_comparison(result.records, config)
    emit_outputs(result, rows, args.out_dir)
    print(f"wrote outputs to {args.out_dir}")
    return 0


def _cmd_signal(args) -> int:
    profile = BandwidthProfile(args.w_mean)
    w_idx = 0
    seed = item_seed(args.seed, w_idx, args.realization)
    signal = synthesize_vbw(profile, seed)
    trace = eval_trace(signal, GRID_RATE)
    os.makedirs(args.out_dir, exist_ok=True)
    stem = f"signal_w{args.w_mean:g}_m{args.realization}"
    trace_path = os.path.join(args.out_dir, stem + "_trace.csv")
    with open(trace_path, "w") as fh:
        fh.write("t,value\n")
        for t, v in zip(trace.times(), trace.values):
            fh.write(f"{t:.9g},{v:.9g}\n")
    stream = sod_encode(signal, SodConfig(args.n_levels))
    events_path = os.path.join(args.out_dir, stem + "_events.txt")
    with open(events_path, "w") as fh:
        fh.write(serialize_events(stream))
    print(f"wrote {trace_path} and {events_path} "
          f"({len(stream)} events, redraws={signal.n_redraws})")
    return 0


def _cmd_report(args) -> int:
    records = load_records(args.records)
    kwargs = {}
    if args.config:
        kwargs.update(_parse_config_file(args.config))
    w_means = tuple(sorted({r.w_mean for r in records}))
    kwargs.setdefault("w_mean_list", w_means)
    config = SweepConfig(**kwargs)
    rows = build_comparison(records, config)
    os.makedirs(args.out_dir, exist_ok=True)
    from .sweep import _fmt, _write
    fig5 = ["w_mean,target_nmse,p_rel"]
    fig6 = ["w_mean,target_nmse,b_rel,b_rel_worst"]
    for row in rows:
        p = row.figures.p_rel if row.attainable else None
        b = row.figures.b_rel if row.attainable else None
        bw = row.figures.b_rel_worst if row.attainable else None
        fig5.append(f"{_fmt(row.w_mean)},{_fmt(row.target_nmse)},{_fmt(p)}")
        fig6.append(f"{_fmt(row.w_mean)},{_fmt(row.target_nmse)},"
                    f"{_fmt(b)},{_fmt(bw)}")
    _write(os.path.join(args.out_dir, "fig5.csv"), fig5)
    _write(os.path.join(args.out_dir, "fig6.csv"), fig6)
    print(f"wrote comparison CSVs to {args.out_dir}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ebcsim",
        description="Event-based vs uniform-sampling link efficiency "
                    "simulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the full Monte-Carlo sweep")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--realizations", type=int, default=None)
    p_sweep.add_argument("--out-dir", default="sweep_out")
    p_sweep.add_argument("--w-mean", type=float, action="append",
                         help="restrict to given mean bandwidths "
                              "(repeatable)")
    p_sweep.add_argument("--config", help="JSON or key=value config file")
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--verbose", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_sig = sub.add_parser("signal",
                           help="dump one realization's trace and events")
    p_sig.add_argument("--seed", type=int, default=0)
    p_sig.add_argument("--w-mean", type=float, default=475.0)
    p_sig.add_argument("--realization", type=int, default=0)
    p_sig.add_argument("--n-levels", type=int, default=10)
    p_sig.add_argument("--out-dir", default="signal_out")
    p_sig.set_defaults(func=_cmd_signal)

    p_rep = sub.add_parser("report",
                           help="comparison rows from a saved sweep")
    p_rep.add_argument("--records", required=True,
                       help="records.csv from a previous sweep")
    p_rep.add_argument("--out-dir", default="report_out")
    p_rep.add_argument("--config", help="JSON or key=value config file")
    p_rep.set_defaults(func=_cmd_report)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
