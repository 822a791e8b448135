"""Command-line front end.

Subcommands produce curve files (antenna, tf-div, harq), gap tables
(gap) and whole figure datasets (figure).  Exit codes: 0 success,
2 invalid arguments, 3 numerical failure, 4 file I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .analytic import AntennaConfig
from .montecarlo import McConfig, PrecisionError
from .report import (FIGURE_PRESETS, SweepRequest, format_gap_table,
                     run_figure_preset, run_gap_report, run_sweep, write_gap_csv)
from .solver import BracketError, ConvergenceError
from .version import __version__

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _add_mc_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="Monte Carlo draws per estimate (ignored by closed-form schemes)")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed")
    p.add_argument("--chunk-size", type=int, default=1 << 16,
                   help="draws per RNG stream chunk")
    p.add_argument("--workers", type=int, default=1,
                   help="thread count; never affects the numbers")


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", type=float, default=0.01, help="outage level (default 0.01)")
    p.add_argument("--snr-start", type=float, default=0.0, help="grid start, dB")
    p.add_argument("--snr-stop", type=float, default=45.0, help="grid stop, dB")
    p.add_argument("--snr-step", type=float, default=1.0, help="grid step, dB")
    _add_mc_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   dest="file_format", help="data file format")
    p.add_argument("--out", required=True, help="output file path")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outagecap",
        description="Fixed-outage capacity and hybrid-ARQ throughput over "
                    "Rayleigh block fading.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antenna", help="MISO/SIMO fixed-outage capacity sweep")
    p.add_argument("--nt", type=int, default=1, help="transmit antennas")
    p.add_argument("--nr", type=int, default=1, help="receive antennas")
    _add_sweep_flags(p)
    p.set_defaults(func=_cmd_antenna)

    p = sub.add_parser("tf-div", help="time/frequency diversity sweep")
    p.add_argument("-L", "--blocks", type=int, required=True,
                   help="independent fading blocks spanned by one codeword")
    _add_sweep_flags(p)
    p.set_defaults(func=_cmd_tf_div)

    p = sub.add_parser("harq", help="hybrid-ARQ throughput sweep")
    p.add_argument("--strategy", choices=("ir", "cc", "noarq"), required=True,
                   help="ir: incremental redundancy, cc: Chase combining, "
                        "noarq: fixed L-slot code baseline")
    p.add_argument("-L", "--rounds", type=int, required=True,
                   help="maximum transmission rounds")
    _add_sweep_flags(p)
    p.set_defaults(func=_cmd_harq)

    p = sub.add_parser("gap", help="gap-to-capacity factors for antenna configs")
    p.add_argument("--eps", type=float, default=0.01, help="outage level")
    p.add_argument("--config", action="append", metavar="NTxNR",
                   help="antenna config like 2x1; repeatable "
                        "(default: 1x1 2x1 1x2)")
    p.add_argument("--out", help="write CSV here instead of printing a table")
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("figure", help="write a complete figure dataset")
    p.add_argument("preset", choices=tuple(FIGURE_PRESETS),
                   help="which figure dataset to produce")
    p.add_argument("--out-dir", required=True, help="directory for the curve files")
    p.add_argument("--eps", type=float, default=None,
                   help="override the preset's outage level")
    p.add_argument("--snr-start", type=float, default=0.0)
    p.add_argument("--snr-stop", type=float, default=45.0)
    p.add_argument("--snr-step", type=float, default=1.0)
    _add_mc_flags(p)
    p.set_defaults(func=_cmd_figure)

    return parser


def _mc_from(args) -> McConfig:
    return McConfig(n_samples=args.samples, seed=args.seed,
                    chunk_size=args.chunk_size)


def _request_from(args, scheme: str, order: int,
                  mc: McConfig | None = None) -> SweepRequest:
    return SweepRequest(
        scheme=scheme, order=order, epsilon=args.eps,
        snr_db_start=args.snr_start, snr_db_stop=args.snr_stop,
        snr_db_step=args.snr_step, mc=mc,
        output_path=args.out, format=args.file_format)


def _cmd_antenna(args) -> int:
    cfg = AntennaConfig(args.nt, args.nr)
    scheme = "miso" if cfg.is_miso else "simo"
    curve = run_sweep(_request_from(args, scheme, cfg.order))
    print(f"wrote {args.out} ({len(curve.records)} rows, {cfg.label} {scheme})")
    return EXIT_OK


def _cmd_tf_div(args) -> int:
    curve = run_sweep(_request_from(args, "tf", args.blocks, _mc_from(args)),
                      args.workers)
    print(f"wrote {args.out} ({len(curve.records)} rows, L={args.blocks})")
    return EXIT_OK


def _cmd_harq(args) -> int:
    scheme = {"ir": "harq-ir", "cc": "harq-cc", "noarq": "noarq"}[args.strategy]
    curve = run_sweep(_request_from(args, scheme, args.rounds, _mc_from(args)),
                      args.workers)
    print(f"wrote {args.out} ({len(curve.records)} rows, {args.strategy} L={args.rounds})")
    return EXIT_OK


def _parse_antenna(text: str) -> AntennaConfig:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"bad antenna config {text!r}, expected NTxNR like 2x1")
    try:
        n_t, n_r = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"bad antenna config {text!r}, expected NTxNR like 2x1") from None
    return AntennaConfig(n_t, n_r)


def _cmd_gap(args) -> int:
    configs = [_parse_antenna(t) for t in args.config] if args.config else None
    rows = run_gap_report(args.eps, configs)
    if args.out:
        write_gap_csv(args.out, rows)
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        print(format_gap_table(rows))
    return EXIT_OK


def _cmd_figure(args) -> int:
    manifest = run_figure_preset(
        args.preset, _mc_from(args), args.out_dir,
        grid=(args.snr_start, args.snr_stop, args.snr_step),
        eps=args.eps, workers=args.workers)
    print(f"wrote {len(manifest['curves'])} curves to {args.out_dir} "
          f"(preset {args.preset}, eps={manifest['epsilon']})")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketError, ConvergenceError, PrecisionError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as e:
        print(f"i/o failure: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
