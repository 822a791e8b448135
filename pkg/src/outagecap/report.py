"""Sweeps over SNR grids and the files they produce.

A sweep evaluates one scheme over an ascending dB grid and lands in a
CSV or JSON file plus a .meta.json sidecar.  The data file is a pure
function of (scheme, order, eps, grid, seed, n_samples, chunk_size), so
re-running a sweep reproduces it byte for byte; wall-clock time lives
only in the sidecar.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .analytic import (AntennaConfig, awgn_capacity, check_eps, gap_small_eps_approx,
                       gap_to_capacity, outage_capacity_miso, outage_capacity_simo)
from .channel import SnrPoint
from .erlang import check_order
from .harq import solve_operating_point
from .montecarlo import McConfig, estimate_tf_outage_capacity
from .version import __version__

SCHEMES = ("awgn", "miso", "simo", "tf", "harq-ir", "harq-cc", "noarq")

_HARQ_SCHEMES = {"harq-ir": "ir", "harq-cc": "cc", "noarq": "noarq"}
_MC_SCHEMES = ("tf", "harq-ir", "noarq")

_MAX_GRID = 10_000

_BASE_COLUMNS = ("snr_db", "rate_bits_per_symbol", "std_error")
_HARQ_COLUMNS = _BASE_COLUMNS + ("initial_rate", "expected_rounds", "advantage_ratio")


@dataclass(frozen=True)
class CurveRecord:
    """One grid point of a capacity or throughput curve.

    The three trailing fields are populated only for ARQ schemes, where
    rate_bits_per_symbol is the long-run throughput; std_error is 0 for
    closed-form rows.
    """

    snr_db: float
    rate_bits_per_symbol: float
    std_error: float = 0.0
    initial_rate: float | None = None
    expected_rounds: float | None = None
    advantage_ratio: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.rate_bits_per_symbol) or self.rate_bits_per_symbol < 0.0:
            raise ValueError(f"rate must be finite and >= 0, got {self.rate_bits_per_symbol}")
        if not math.isfinite(self.std_error) or self.std_error < 0.0:
            raise ValueError(f"std_error must be finite and >= 0, got {self.std_error}")
        harq_fields = (self.initial_rate, self.expected_rounds, self.advantage_ratio)
        present = [v is not None for v in harq_fields]
        if any(present) != all(present):
            raise ValueError("initial_rate, expected_rounds and advantage_ratio "
                             "must be set together")


def snr_grid_db(start: float, stop: float, step: float) -> list[float]:
    """Ascending dB grid start, start+step, ..., up to stop inclusive
    (within a 1e-9 step tolerance)."""
    start, stop, step = float(start), float(stop), float(step)
    if not step > 0.0:
        raise ValueError(f"snr step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"snr stop {stop} below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count > _MAX_GRID:
        raise ValueError(f"grid of {count} points exceeds the {_MAX_GRID} cap")
    return [start + i * step for i in range(count)]


@dataclass(frozen=True)
class SweepRequest:
    """Everything needed to evaluate and write one curve.

    mc may be None for closed-form schemes (awgn, miso, simo, harq-cc);
    the Monte Carlo schemes (tf, harq-ir, noarq) require it.
    """

    scheme: str
    order: int = 1            # antennas, blocks, or rounds; ignored for awgn
    epsilon: float = 0.01
    snr_db_start: float = 0.0
    snr_db_stop: float = 45.0
    snr_db_step: float = 1.0
    mc: McConfig | None = None
    output_path: str = ""
    format: str = "csv"

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.scheme != "awgn":
            check_order(self.order)
        check_eps(self.epsilon)
        snr_grid_db(self.snr_db_start, self.snr_db_stop, self.snr_db_step)
        if self.scheme in _MC_SCHEMES and self.mc is None:
            raise ValueError(f"scheme {self.scheme!r} needs a Monte Carlo config")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if not self.output_path:
            raise ValueError("output_path must be set")


@dataclass(frozen=True)
class CapacityCurve:
    """Evaluated sweep: records plus the provenance that shaped them."""

    scheme: str
    label: str
    epsilon: float
    analytic: bool
    seed: int | None
    n_samples: int | None
    records: tuple[CurveRecord, ...]


def evaluate_curve(scheme: str, order: int, eps: float, grid_db: Sequence[float],
                   mc: McConfig | None = None, workers: int = 1,
                   ) -> list[CurveRecord]:
    """CurveRecords for one scheme over a dB grid.

    awgn/miso/simo and harq-cc are closed-form; tf, harq-ir and noarq
    need a Monte Carlo config.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    if scheme in _MC_SCHEMES and mc is None:
        raise ValueError(f"scheme {scheme!r} needs a Monte Carlo config")
    records = []
    for db in grid_db:
        snr = SnrPoint.from_db(db)
        if scheme == "awgn":
            records.append(CurveRecord(db, awgn_capacity(snr)))
        elif scheme == "miso":
            records.append(CurveRecord(db, outage_capacity_miso(snr, eps, order)))
        elif scheme == "simo":
            records.append(CurveRecord(db, outage_capacity_simo(snr, eps, order)))
        elif scheme == "tf":
            est = estimate_tf_outage_capacity(snr, order, eps, mc, workers)
            records.append(CurveRecord(db, est.value, est.std_error))
        else:
            op = solve_operating_point(_HARQ_SCHEMES[scheme], order, eps, snr,
                                       mc, workers)
            records.append(CurveRecord(
                db, op.throughput, op.throughput_se,
                initial_rate=op.initial_rate,
                expected_rounds=op.expected_rounds,
                advantage_ratio=op.advantage_ratio))
    return records


# --- file output ----------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    return format(v, ".9g")


def _record_columns(scheme: str):
    return _HARQ_COLUMNS if scheme in _HARQ_SCHEMES else _BASE_COLUMNS


def _write_records(path: Path, scheme: str, records: Sequence[CurveRecord],
                   file_format: str) -> None:
    cols = _record_columns(scheme)
    if file_format == "csv":
        lines = [",".join(cols)]
        lines += [",".join(_fmt(getattr(r, c)) for c in cols) for r in records]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        rows = [{c: getattr(r, c) for c in cols} for r in records]
        path.write_text(json.dumps({"records": rows}, indent=2) + "\n",
                        encoding="utf-8")


def _write_sidecar(path: Path, meta: dict, wall_time_s: float) -> None:
    sidecar = dict(meta)
    sidecar["wall_time_s"] = wall_time_s
    side_path = path.with_name(path.name + ".meta.json")
    side_path.write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")


def run_sweep(request: SweepRequest, workers: int = 1) -> CapacityCurve:
    """Evaluate a request, write the data file and its sidecar, and
    return the curve.  The data file is deterministic for fixed request
    fields; wall_time_s appears only in the sidecar."""
    t0 = time.perf_counter()
    grid = snr_grid_db(request.snr_db_start, request.snr_db_stop, request.snr_db_step)
    analytic = request.scheme not in _MC_SCHEMES
    records = evaluate_curve(request.scheme, request.order, request.epsilon,
                             grid, request.mc, workers)
    path = Path(request.output_path)
    _write_records(path, request.scheme, records, request.format)
    mc = request.mc
    meta = {
        "scheme": request.scheme,
        "order": request.order,
        "epsilon": request.epsilon,
        "seed": None if analytic or mc is None else mc.seed,
        "n_samples": None if analytic or mc is None else mc.n_samples,
        "chunk_size": None if analytic or mc is None else mc.chunk_size,
        "grid": {"start_db": request.snr_db_start,
                 "stop_db": request.snr_db_stop,
                 "step_db": request.snr_db_step},
        "version": __version__,
    }
    _write_sidecar(path, meta, time.perf_counter() - t0)
    label = request.scheme if request.scheme == "awgn" else f"{request.scheme}_{request.order}"
    return CapacityCurve(
        scheme=request.scheme, label=label, epsilon=request.epsilon,
        analytic=analytic,
        seed=meta["seed"], n_samples=meta["n_samples"],
        records=tuple(records))


# --- figure presets -------------------------------------------------------

# (label, scheme, order) per curve; epsilon per preset
FIGURE_PRESETS: dict[str, dict] = {
    "1b": {"epsilon": 0.01, "curves": [
        ("miso_1x1", "miso", 1), ("simo_1x2", "simo", 2)]},
    "2": {"epsilon": 0.01, "curves": [
        ("awgn", "awgn", 1), ("miso_1x1", "miso", 1),
        ("miso_2x1", "miso", 2), ("simo_1x2", "simo", 2)]},
    "3": {"epsilon": 0.01, "curves": [
        ("tf_l1", "tf", 1), ("tf_l2", "tf", 2), ("tf_l3", "tf", 3),
        ("miso_2x1", "miso", 2), ("miso_3x1", "miso", 3)]},
    "4": {"epsilon": 0.01, "curves": [
        ("ir_l1", "harq-ir", 1), ("ir_l2", "harq-ir", 2), ("ir_l3", "harq-ir", 3),
        ("noarq_l1", "noarq", 1), ("noarq_l2", "noarq", 2), ("noarq_l3", "noarq", 3)]},
    "5": {"epsilon": 0.05, "curves": [
        ("ir_l4", "harq-ir", 4), ("cc_l4", "harq-cc", 4), ("noarq_l4", "noarq", 4)]},
}


def run_figure_preset(preset: str, mc: McConfig | None, out_dir,
                      grid: tuple[float, float, float] = (0.0, 45.0, 1.0),
                      eps: float | None = None, workers: int = 1) -> dict:
    """Write every curve of one preset as CSV plus a manifest.

    Curves land in out_dir as fig<preset>_<label>.csv; the deterministic
    manifest fig<preset>_manifest.json lists them, and the run's wall
    time goes to a separate .meta.json.  eps overrides the preset's
    default outage level; mc = None falls back to McConfig() defaults.
    Returns the manifest dict.
    """
    if preset not in FIGURE_PRESETS:
        raise ValueError(f"preset must be one of {tuple(FIGURE_PRESETS)}, got {preset!r}")
    plan = FIGURE_PRESETS[preset]
    eps = plan["epsilon"] if eps is None else check_eps(eps)
    if mc is None:
        mc = McConfig()
    t0 = time.perf_counter()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid_db = snr_grid_db(*grid)
    entries = []
    for label, scheme, order in plan["curves"]:
        records = evaluate_curve(scheme, order, eps, grid_db, mc, workers)
        fname = f"fig{preset}_{label}.csv"
        _write_records(out / fname, scheme, records, "csv")
        entries.append({"label": label, "scheme": scheme, "order": order,
                        "file": fname})
    manifest = {
        "preset": preset,
        "epsilon": eps,
        "seed": mc.seed,
        "n_samples": mc.n_samples,
        "chunk_size": mc.chunk_size,
        "grid": {"start_db": grid[0], "stop_db": grid[1], "step_db": grid[2]},
        "version": __version__,
        "curves": entries,
    }
    man_path = out / f"fig{preset}_manifest.json"
    man_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    _write_sidecar(man_path, {"preset": preset, "version": __version__},
                   time.perf_counter() - t0)
    return manifest


# --- gap report -----------------------------------------------------------


@dataclass(frozen=True)
class GapRow:
    """Gap factor of one antenna config at a fixed outage level."""

    label: str
    gamma_linear: float
    gamma_db: float
    approx_linear: float
    approx_db: float
    db_gain_vs_1x1: float


def run_gap_report(eps: float, configs: Sequence[AntennaConfig] | None = None,
                   ) -> list[GapRow]:
    """Gap factors Gamma (exact and small-eps approximation) and the dB
    gain each config buys over the single-antenna baseline.

    gamma_db is 10 log10(Gamma), the (negative) offset of the fixed-
    outage curve from log2(1 + P); db_gain_vs_1x1 compares configs at
    the same eps.
    """
    eps = check_eps(eps)
    if configs is None:
        configs = (AntennaConfig(1, 1), AntennaConfig(2, 1), AntennaConfig(1, 2))
    if not configs:
        raise ValueError("need at least one antenna config")
    base = gap_to_capacity(eps, AntennaConfig(1, 1))
    rows = []
    for cfg in configs:
        gamma = gap_to_capacity(eps, cfg)
        # receive diversity skips the transmit power split, so its
        # small-eps form is the transmit one scaled by the order
        approx = gap_small_eps_approx(eps, cfg.order)
        if not cfg.is_miso:
            approx *= cfg.order
        rows.append(GapRow(
            label=cfg.label,
            gamma_linear=gamma,
            gamma_db=10.0 * math.log10(gamma),
            approx_linear=approx,
            approx_db=10.0 * math.log10(approx),
            db_gain_vs_1x1=10.0 * math.log10(gamma / base)))
    return rows


_GAP_COLUMNS = ("label", "gamma_linear", "gamma_db", "approx_linear",
                "approx_db", "db_gain_vs_1x1")


def format_gap_table(rows: Sequence[GapRow]) -> str:
    """Fixed-width text table of a gap report."""
    header = f"{'config':>8} {'gamma':>12} {'gamma_dB':>10} {'approx':>12} " \
             f"{'approx_dB':>10} {'gain_vs_1x1_dB':>15}"
    lines = [header]
    for r in rows:
        lines.append(f"{r.label:>8} {r.gamma_linear:>12.6g} {r.gamma_db:>10.3f} "
                     f"{r.approx_linear:>12.6g} {r.approx_db:>10.3f} "
                     f"{r.db_gain_vs_1x1:>15.3f}")
    return "\n".join(lines)


def write_gap_csv(path, rows: Sequence[GapRow]) -> None:
    lines = [",".join(_GAP_COLUMNS)]
    for r in rows:
        lines.append(",".join(
            r.label if c == "label" else _fmt(getattr(r, c)) for c in _GAP_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
