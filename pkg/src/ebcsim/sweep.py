"""Monte-Carlo sweep over signal profiles and coder parameters.

One work item is a (profile, realization) pair: the signal is synthesized
once on a detection grid fine enough for the smallest level spacing in
the sweep, then encoded and reconstructed under every event-based and
uniform-sampling configuration.  Aggregation is in fixed index order, so
results are bit-identical for any worker count.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import metrics
from .reconstruction import reconstruct_ebc, sinc_reconstruct
from .signal_model import (BandwidthProfile, DenseTrace, GRID_RATE,
                           item_seed, slope_ratio_max, synthesize_vbw_traced)
from .sod import (SodConfig, detection_rate, encode_values,
                  events_to_samples, min_gap, t_lb)
from .wsk import antialias, dequantize, quantize, uniform_sample

DEFAULT_W_MEANS = (325.0, 475.0, 625.0, 775.0, 925.0)
DEFAULT_N_OS = tuple(round(0.2 + 0.1 * k, 1) for k in range(19))
DEFAULT_N_BITS = (3, 4, 5, 6, 7, 8)
DEFAULT_N_LEVELS = tuple(range(10, 101, 5))


def default_targets() -> tuple:
    return tuple(float(x) for x in np.logspace(-3.0, -1.0, 25))


@dataclass(frozen=True)
class SweepConfig:
    master_seed: int = 0
    m_realizations: int = 100
    w_mean_list: tuple = DEFAULT_W_MEANS
    n_os_list: tuple = DEFAULT_N_OS
    n_bits_list: tuple = DEFAULT_N_BITS
    n_levels_list: tuple = DEFAULT_N_LEVELS
    grid_rate: int = GRID_RATE
    target_nmse_list: tuple = field(default_factory=default_targets)
    workers: int = 1

    @property
    def f_s_list(self) -> tuple:
        return tuple(2.0 * 1000.0 * n_os for n_os in self.n_os_list)

    def fine_rate(self) -> int:
        cfgs = [SodConfig(nl) for nl in self.n_levels_list]
        return max(detection_rate(c, base_rate=self.grid_rate) for c in cfgs)


@dataclass(frozen=True)
class SweepRecord:
    system: str  # "EBC" or "WSK"
    w_mean: float
    nmse: float
    rate: float
    n_bits: int | None = None
    f_s: float | None = None
    n_levels: int | None = None
    delta_l: float | None = None
    t_min_mean: float | None = None


@dataclass
class Diagnostics:
    """Per-realization invariant checks collected during the sweep."""
    bernstein_ratio: dict  # w_mean -> (M,) max slope / bound per signal
    power: dict            # w_mean -> (M,) mean power on the 16 kHz grid
    min_gap_ratio: dict    # w_mean -> (n_levels,) min over m of gap / T_LB


@dataclass
class SweepResult:
    config: SweepConfig
    records: list
    diagnostics: Diagnostics
    fine_rate: int


def _run_item(args):
    """Full per-(profile, realization) evaluation; pure and picklable."""
    config, w_idx, m_idx = args
    w_mean = config.w_mean_list[w_idx]
    profile = BandwidthProfile(w_mean)
    seed = item_seed(config.master_seed, w_idx, m_idx)
    fine_rate = config.fine_rate()
    signal, fine_values = synthesize_vbw_traced(profile, seed,
                                                grid_rate=fine_rate)
    stride = fine_rate // config.grid_rate
    ref = fine_values[:-1][::stride]
    n_grid = int(round(config.grid_rate * profile.duration))
    assert ref.size == n_grid

    power = float(np.mean(ref ** 2))
    bern = slope_ratio_max(profile, fine_values, fine_rate)

    n_l = len(config.n_levels_list)
    ebc_nmse = np.empty(n_l)
    ebc_events = np.empty(n_l)
    ebc_gap = np.full(n_l, np.nan)
    for i, n_levels in enumerate(config.n_levels_list):
        cfg = SodConfig(n_levels)
        stream = encode_values(fine_values, fine_rate, cfg,
                               duration=profile.duration)
        ebc_events[i] = len(stream)
        gap = min_gap(stream)
        if gap is not None:
            ebc_gap[i] = gap
        samples = events_to_samples(stream, cfg)
        est = reconstruct_ebc(samples, config.grid_rate, profile.duration)
        ebc_nmse[i] = metrics.nmse(ref, est.values)

    trace = DenseTrace(rate=config.grid_rate, values=ref)
    wsk_nmse = np.empty((len(config.n_bits_list), len(config.f_s_list)))
    for j, f_s in enumerate(config.f_s_list):
        filtered = antialias(trace, f_s)
        samples = uniform_sample(filtered, f_s)
        rows = np.stack([
            dequantize(quantize(samples, bits), bits)
            for bits in config.n_bits_list
        ])
        ests = sinc_reconstruct(rows, f_s, config.grid_rate,
                                profile.duration)
        for b in range(len(config.n_bits_list)):
            wsk_nmse[b, j] = metrics.nmse(ref, ests[b])

    return {"w_idx": w_idx, "m_idx": m_idx, "power": power, "bern": bern,
            "ebc_nmse": ebc_nmse, "ebc_events": ebc_events,
            "ebc_gap": ebc_gap, "wsk_nmse": wsk_nmse}


def run_sweep(config: SweepConfig, verbose: bool = False) -> SweepResult:
    items = [(config, w, m)
             for w in range(len(config.w_mean_list))
             for m in range(config.m_realizations)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_item, items))
    else:
        results = []
        for it in items:
            results.append(_run_item(it))
            if verbose:
                w_mean = config.w_mean_list[it[1]]
                print(f"  w_mean={w_mean:g} realization {it[2] + 1}"
                      f"/{config.m_realizations}", flush=True)

    n_w = len(config.w_mean_list)
    m = config.m_realizations
    n_l = len(config.n_levels_list)
    ebc_nmse = np.empty((n_w, m, n_l))
    ebc_events = np.empty((n_w, m, n_l))
    ebc_gap = np.empty((n_w, m, n_l))
    wsk_nmse = np.empty((n_w, m, len(config.n_bits_list),
                         len(config.f_s_list)))
    power = np.empty((n_w, m))
    bern = np.empty((n_w, m))
    for r in results:
        w, i = r["w_idx"], r["m_idx"]
        ebc_nmse[w, i] = r["ebc_nmse"]
        ebc_events[w, i] = r["ebc_events"]
        ebc_gap[w, i] = r["ebc_gap"]
        wsk_nmse[w, i] = r["wsk_nmse"]
        power[w, i] = r["power"]
        bern[w, i] = r["bern"]

    records = []
    gap_ratio = {}
    for w, w_mean in enumerate(config.w_mean_list):
        for b, bits in enumerate(config.n_bits_list):
            for j, f_s in enumerate(config.f_s_list):
                records.append(SweepRecord(
                    system="WSK", w_mean=w_mean,
                    nmse=float(np.mean(wsk_nmse[w, :, b, j])),
                    rate=bits * f_s, n_bits=bits, f_s=f_s))
        ratios = np.empty(n_l)
        for i, n_levels in enumerate(config.n_levels_list):
            cfg = SodConfig(n_levels)
            gaps = ebc_gap[w, :, i]
            have = ~np.isnan(gaps)
            t_min_mean = float(np.mean(gaps[have])) if have.any() else None
            ratios[i] = (np.min(gaps[have]) / t_lb(cfg)
                         if have.any() else np.nan)
            records.append(SweepRecord(
                system="EBC", w_mean=w_mean,
                nmse=float(np.mean(ebc_nmse[w, :, i])),
                rate=float(np.mean(ebc_events[w, :, i])),
                n_levels=n_levels, delta_l=cfg.delta_l,
                t_min_mean=t_min_mean))
        gap_ratio[w_mean] = ratios

    diag = Diagnostics(
        bernstein_ratio={wm: bern[w].copy()
                         for w, wm in enumerate(config.w_mean_list)},
        power={wm: power[w].copy()
               for w, wm in enumerate(config.w_mean_list)},
        min_gap_ratio=gap_ratio)
    return SweepResult(config=config, records=records, diagnostics=diag,
                       fine_rate=config.fine_rate())


# ---------------------------------------------------------------------------
# target-NMSE selection and comparison rows


def _pareto_knots(rates: np.ndarray, nmses: np.ndarray):
    """Indices of strictly improving (rate asc, nmse desc) points."""
    order = np.argsort(rates, kind="stable")
    keep = []
    best = math.inf
    for i in order:
        if nmses[i] < best:
            best = nmses[i]
            keep.append(i)
    return np.asarray(keep, dtype=int)


def _interp_at_target(nmses: np.ndarray, target: float, columns: dict):
    """Log-log interpolation of each column at the target NMSE.

    nmses must be strictly decreasing.  Targets above the first knot clamp
    to it (the cheapest configuration already beats them); targets below
    the last knot are unattainable (returns None).
    """
    if target < nmses[-1]:
        return None
    if target >= nmses[0]:
        return {k: float(v[0]) for k, v in columns.items()}
    j = int(np.searchsorted(-nmses, -target, side="left"))
    if nmses[j] == target:
        return {k: float(v[j]) for k, v in columns.items()}
    # bracket: nmses[j-1] > target > nmses[j]
    f = ((math.log(target) - math.log(nmses[j - 1]))
         / (math.log(nmses[j]) - math.log(nmses[j - 1])))
    out = {}
    for k, v in columns.items():
        if v[j - 1] > 0 and v[j] > 0:
            out[k] = float(math.exp(
                math.log(v[j - 1])
                + f * (math.log(v[j]) - math.log(v[j - 1]))))
        else:
            out[k] = float(v[j - 1] + f * (v[j] - v[j - 1]))
    return out


def wsk_best_at(records, w_mean: float, target_nmse: float):
    """Lowest symbol rate reaching the target, interpolated per bit depth.

    Returns (n_bits, f_s, r_symbol) or None when no bit depth attains the
    target anywhere on its curve.
    """
    best = None
    recs = [r for r in records if r.system == "WSK" and r.w_mean == w_mean]
    for bits in sorted({r.n_bits for r in recs}):
        sub = [r for r in recs if r.n_bits == bits]
        rates = np.array([r.rate for r in sub])
        nmses = np.array([r.nmse for r in sub])
        knots = _pareto_knots(rates, nmses)
        got = _interp_at_target(nmses[knots], target_nmse,
                                {"rate": rates[knots]})
        if got is None:
            continue
        if best is None or got["rate"] < best[2]:
            best = (bits, got["rate"] / bits, got["rate"])
    return best


def ebc_at(records, w_mean: float, target_nmse: float):
    """EBC curve read at a target NMSE: (r_event, t_min, delta_l) or None."""
    sub = [r for r in records if r.system == "EBC" and r.w_mean == w_mean]
    rates = np.array([r.rate for r in sub])
    nmses = np.array([r.nmse for r in sub])
    t_mins = np.array([np.nan if r.t_min_mean is None else r.t_min_mean
                       for r in sub])
    deltas = np.array([r.delta_l for r in sub])
    knots = _pareto_knots(rates, nmses)
    cols = {"rate": rates[knots], "delta_l": deltas[knots]}
    have_t = np.all(np.isfinite(t_mins[knots]))
    if have_t:
        cols["t_min"] = t_mins[knots]
    got = _interp_at_target(nmses[knots], target_nmse, cols)
    if got is None:
        return None
    return (got["rate"], got.get("t_min", math.nan), got["delta_l"])


@dataclass(frozen=True)
class ComparisonRow:
    w_mean: float
    target_nmse: float
    attainable: bool
    n_bits: int | None = None
    f_s: float | None = None
    delta_l: float | None = None
    figures: metrics.EfficiencyFigures | None = None


def build_comparison(records, config: SweepConfig):
    rows = []
    for w_mean in config.w_mean_list:
        for target in config.target_nmse_list:
            choice = wsk_best_at(records, w_mean, target)
            point = ebc_at(records, w_mean, target)
            if choice is None or point is None:
                rows.append(ComparisonRow(w_mean=w_mean, target_nmse=target,
                                          attainable=False))
                continue
            bits, f_s, r_symbol = choice
            r_event, t_min, delta_l = point
            figs = metrics.EfficiencyFigures(
                p_rel=metrics.p_rel(r_event, bits, f_s),
                b_rel=metrics.b_rel(t_min, bits, f_s),
                b_rel_worst=metrics.b_rel_worst(delta_l, bits, f_s),
                t_min=t_min, r_event=r_event, r_symbol=r_symbol)
            rows.append(ComparisonRow(w_mean=w_mean, target_nmse=target,
                                      attainable=True, n_bits=bits, f_s=f_s,
                                      delta_l=delta_l, figures=figs))
    return rows


# ---------------------------------------------------------------------------
# flat-file outputs


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    return format(float(x), ".9g")


def _write(path: str, lines) -> None:
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def emit_outputs(result: SweepResult, rows, out_dir: str) -> None:
    """Write per-profile rate/NMSE curves, comparison CSVs and a manifest."""
    os.makedirs(out_dir, exist_ok=True)
    config = result.config
    for w_mean in config.w_mean_list:
        lines = ["system,n_bits,rate_hz,nmse"]
        for r in result.records:
            if r.w_mean != w_mean:
                continue
            bits = "" if r.n_bits is None else str(r.n_bits)
            lines.append(f"{r.system},{bits},{_fmt(r.rate)},{_fmt(r.nmse)}")
        _write(os.path.join(out_dir, f"fig4_{w_mean:g}.csv"), lines)

    fig5 = ["w_mean,target_nmse,p_rel"]
    fig6 = ["w_mean,target_nmse,b_rel,b_rel_worst"]
    for row in rows:
        p = row.figures.p_rel if row.attainable else None
        b = row.figures.b_rel if row.attainable else None
        bw = row.figures.b_rel_worst if row.attainable else None
        fig5.append(f"{_fmt(row.w_mean)},{_fmt(row.target_nmse)},{_fmt(p)}")
        fig6.append(f"{_fmt(row.w_mean)},{_fmt(row.target_nmse)},"
                    f"{_fmt(b)},{_fmt(bw)}")
    _write(os.path.join(out_dir, "fig5.csv"), fig5)
    _write(os.path.join(out_dir, "fig6.csv"), fig6)

    rec_lines = ["system,w_mean,n_bits,f_s,n_levels,delta_l,nmse,rate_hz,"
                 "t_min_mean"]
    for r in result.records:
        bits = "" if r.n_bits is None else str(r.n_bits)
        nl = "" if r.n_levels is None else str(r.n_levels)
        rec_lines.append(
            f"{r.system},{_fmt(r.w_mean)},{bits},{_fmt(r.f_s)},{nl},"
            f"{_fmt(r.delta_l)},{_fmt(r.nmse)},{_fmt(r.rate)},"
            f"{_fmt(r.t_min_mean)}")
    _write(os.path.join(out_dir, "records.csv"), rec_lines)

    grids = {
        "f_s": [_fmt(x) for x in config.f_s_list],
        "n_bits": list(config.n_bits_list),
        "n_levels": list(config.n_levels_list),
        "targets": [_fmt(x) for x in config.target_nmse_list],
    }
    config_echo = asdict(config)
    config_echo.pop("workers")  # execution detail, not part of the result
    manifest = {
        "config": config_echo,
        "fine_rate": result.fine_rate,
        "grid_hashes": {k: hashlib.sha256(repr(v).encode()).hexdigest()
                        for k, v in grids.items()},
    }
    with open(os.path.join(out_dir, "run_manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_records(path: str):
    """Read a records.csv written by emit_outputs."""
    records = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        expected = ["system", "w_mean", "n_bits", "f_s", "n_levels",
                    "delta_l", "nmse", "rate_hz", "t_min_mean"]
        if header != expected:
            raise ValueError(f"unexpected records header in {path}")
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) != len(expected):
                continue
            sys_, w, bits, f_s, nl, dl, nm, rate, tm = parts
            records.append(SweepRecord(
                system=sys_, w_mean=float(w), nmse=float(nm),
                rate=float(rate),
                n_bits=int(bits) if bits else None,
                f_s=float(f_s) if f_s else None,
                n_levels=int(nl) if nl else None,
                delta_l=float(dl) if dl else None,
                t_min_mean=float(tm) if tm else None))
    return records
