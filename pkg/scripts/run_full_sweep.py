#!/usr/bin/env python3
"""Run the full comparison sweep (M=100 realizations) and emit CSVs.

Equivalent to `ebcsim sweep --realizations 100 --out-dir results/full`,
kept as a script so the defaults are recorded in one place.  Expect a
runtime of roughly half an hour on a single core; pass --workers to use
more cores.
"""
import argparse
import sys

from ebcsim.sweep import SweepConfig, build_comparison, emit_outputs, run_sweep


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--realizations", type=int, default=100)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out-dir", default="results/full")
    args = parser.parse_args(argv)

    config = SweepConfig(master_seed=args.seed,
                         m_realizations=args.realizations,
                         workers=args.workers)
    result = run_sweep(config, verbose=True)
    rows = build_comparison(result.records, config)
    emit_outputs(result, rows, args.out_dir)
    print(f"wrote {args.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
