"""Send-on-delta event-based communication vs uniform-sampling baseline."""

from .signal_model import (BandwidthProfile, DenseTrace, VbwSignal,
                           inst_bandwidth, warp, derivative_bound,
                           synthesize_vbw, eval_trace)
from .sod import (SodConfig, EventStream, NonuniformSamples, sod_encode,
                  events_to_samples, t_lb, min_gap, event_rate)
from .wsk import (WskConfig, SymbolStream, antialias, uniform_sample,
                  quantize, dequantize, wsk_encode)
from .reconstruction import (Reconstruction, reconstruct_ebc,
                             reconstruct_wsk, nyquist_reconstruct_reference)
from .metrics import (EfficiencyFigures, nmse, ensemble_nmse, p_rel, b_rel,
                      b_rel_worst)
from .sweep import (SweepConfig, SweepRecord, SweepResult, ComparisonRow,
                    run_sweep, wsk_best_at, ebc_at, build_comparison,
                    emit_outputs, load_records)

__version__ = "0.1.0"
