"""Fixed-outage capacity of diversity and hybrid-ARQ schemes over iid
Rayleigh block fading: closed forms, a Monte Carlo twin for every
estimate, and reproducible figure datasets.
"""

from .analytic import (AntennaConfig, awgn_capacity, cc_expected_rounds,
                       cc_initial_rate, cc_throughput, gap_small_eps_approx,
                       gap_to_capacity, outage_capacity, outage_capacity_miso,
                       outage_capacity_simo)
from .channel import (FadingDraw, RngStream, SnrPoint, accumulated_mi_prefixes,
                      accumulated_snr_mi_prefixes, block_mutual_info,
                      sample_draw, sample_gains)
from .erlang import MAX_ORDER, erlang_cdf, erlang_inv_cdf, erlang_pdf
from .harq import (DiagnosticRow, HarqOperatingPoint, asymptotic_diagnostic,
                   solve_operating_point)
from .montecarlo import (HarqTrace, McConfig, McEstimate, PrecisionError,
                         estimate_ir_expected_rounds, estimate_ir_initial_rate,
                         estimate_tf_outage_capacity, ir_throughput,
                         iter_harq_traces, simulate_harq_protocol)
from .report import (CapacityCurve, CurveRecord, FIGURE_PRESETS, GapRow,
                     SweepRequest, evaluate_curve, format_gap_table,
                     run_figure_preset, run_gap_report, run_sweep, snr_grid_db,
                     write_gap_csv)
from .solver import (BracketError, ConvergenceError, MonotoneProblem,
                     expand_bracket, invert_monotone)
from .version import __version__

__all__ = [
    "AntennaConfig", "BracketError", "CapacityCurve", "ConvergenceError",
    "CurveRecord", "DiagnosticRow", "FIGURE_PRESETS", "FadingDraw", "GapRow",
    "HarqOperatingPoint", "HarqTrace", "MAX_ORDER", "McConfig", "McEstimate",
    "MonotoneProblem", "PrecisionError", "RngStream", "SnrPoint",
    "SweepRequest", "__version__", "accumulated_mi_prefixes",
    "accumulated_snr_mi_prefixes", "asymptotic_diagnostic", "awgn_capacity",
    "block_mutual_info", "cc_expected_rounds", "cc_initial_rate",
    "cc_throughput", "erlang_cdf", "erlang_inv_cdf", "erlang_pdf",
    "estimate_ir_expected_rounds", "estimate_ir_initial_rate",
    "estimate_tf_outage_capacity", "evaluate_curve", "expand_bracket",
    "format_gap_table", "gap_small_eps_approx", "gap_to_capacity",
    "invert_monotone", "ir_throughput", "iter_harq_traces", "outage_capacity",
    "outage_capacity_miso", "outage_capacity_simo", "run_figure_preset",
    "run_gap_report", "run_sweep", "sample_draw", "sample_gains",
    "simulate_harq_protocol", "snr_grid_db", "solve_operating_point",
    "write_gap_csv",
]
