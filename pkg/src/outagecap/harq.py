"""Hybrid-ARQ operating points at a fixed outage level.

An operating point fixes the protocol (incremental redundancy, Chase
combining, or no ARQ at all), the round budget L, the outage level and
the SNR, then reports the initial rate R, the mean rounds E[X] a message
actually consumes, and the long-run throughput eta = R / E[X].  The
advantage_ratio L / E[X] is the factor by which early stopping beats a
fixed-length code with the same outage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analytic import cc_expected_rounds, cc_initial_rate, check_eps
from .channel import SnrPoint
from .erlang import check_order
from .montecarlo import (McConfig, estimate_ir_expected_rounds,
                         estimate_ir_initial_rate)

PROTOCOLS = ("ir", "cc", "noarq")

_REL = 1e-12


@dataclass(frozen=True)
class HarqOperatingPoint:
    """Solved protocol state; construction re-checks the accounting.

    throughput must equal initial_rate / expected_rounds to 1e-12
    relative, and advantage_ratio must equal n_rounds / expected_rounds;
    both are identities of the model, not estimates, so violating them
    means a caller mixed quantities from different runs.
    """

    strategy: str
    n_rounds: int
    epsilon: float
    snr: SnrPoint
    initial_rate: float
    expected_rounds: float
    throughput: float
    advantage_ratio: float
    initial_rate_se: float = 0.0
    expected_rounds_se: float = 0.0
    throughput_se: float = 0.0

    def __post_init__(self):
        if self.strategy not in PROTOCOLS:
            raise ValueError(f"strategy must be one of {PROTOCOLS}, got {self.strategy!r}")
        check_order(self.n_rounds)
        check_eps(self.epsilon)
        if not self.initial_rate > 0.0:
            raise ValueError(f"initial_rate must be positive, got {self.initial_rate}")
        if not 1.0 - 1e-9 <= self.expected_rounds <= self.n_rounds * (1.0 + 1e-9):
            raise ValueError(
                f"expected_rounds {self.expected_rounds} outside [1, {self.n_rounds}]")
        if abs(self.throughput * self.expected_rounds - self.initial_rate) \
                > _REL * self.initial_rate:
            raise ValueError("throughput is not initial_rate / expected_rounds")
        if abs(self.advantage_ratio * self.expected_rounds - self.n_rounds) \
                > 1e-9 * self.n_rounds:
            raise ValueError("advantage_ratio is not n_rounds / expected_rounds")
        for name in ("initial_rate_se", "expected_rounds_se", "throughput_se"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


def solve_operating_point(strategy: str, n_rounds: int, eps: float,
                          snr: SnrPoint, mc: McConfig | None = None,
                          workers: int = 1) -> HarqOperatingPoint:
    """Operating point of one protocol at (L, eps, P).

    cc is fully closed-form and ignores mc.  ir and noarq rest on the
    accumulated-MI quantile, so they require a Monte Carlo config; ir
    additionally measures E[X] on the same draws.  noarq models a fixed
    L-slot code: R = L * C_tf, every message consumes all L slots, hence
    eta = C_tf and advantage_ratio = 1 identically.
    """
    if strategy not in PROTOCOLS:
        raise ValueError(f"strategy must be one of {PROTOCOLS}, got {strategy!r}")
    n_rounds = check_order(n_rounds)
    eps = check_eps(eps)

    if strategy == "cc":
        r = cc_initial_rate(snr, eps, n_rounds)
        ex = cc_expected_rounds(r, snr, n_rounds)
        return HarqOperatingPoint(
            strategy, n_rounds, eps, snr,
            initial_rate=r, expected_rounds=ex, throughput=r / ex,
            advantage_ratio=n_rounds / ex)

    if mc is None:
        raise ValueError(f"strategy {strategy!r} needs a Monte Carlo config")

    if strategy == "ir":
        rate = estimate_ir_initial_rate(snr, n_rounds, eps, mc, workers)
        rounds = estimate_ir_expected_rounds(rate.value, snr, n_rounds, mc, workers)
        eta = rate.value / rounds.value
        rel = math.hypot(rate.std_error / rate.value if rate.value > 0.0 else 0.0,
                         rounds.std_error / rounds.value)
        return HarqOperatingPoint(
            strategy, n_rounds, eps, snr,
            initial_rate=rate.value, expected_rounds=rounds.value,
            throughput=eta, advantage_ratio=n_rounds / rounds.value,
            initial_rate_se=rate.std_error,
            expected_rounds_se=rounds.std_error,
            throughput_se=eta * rel)

    rate = estimate_ir_initial_rate(snr, n_rounds, eps, mc, workers)
    return HarqOperatingPoint(
        strategy, n_rounds, eps, snr,
        initial_rate=rate.value, expected_rounds=float(n_rounds),
        throughput=rate.value / n_rounds, advantage_ratio=1.0,
        initial_rate_se=rate.std_error,
        throughput_se=rate.std_error / n_rounds)


@dataclass(frozen=True)
class DiagnosticRow:
    """One SNR point of the ARQ-advantage diagnostic."""

    snr_db: float
    expected_rounds: float
    throughput: float
    baseline: float
    throughput_gap: float
    gap_se: float


def asymptotic_diagnostic(strategy: str, n_rounds: int, eps: float,
                          snr_grid: list[SnrPoint], mc: McConfig,
                          workers: int = 1) -> list[DiagnosticRow]:
    """Throughput advantage of an ARQ protocol over the no-ARQ baseline
    along an ascending SNR grid.

    As P grows the L-round rate quantile scales like L log2(P), so no
    single round can carry it and early stopping dies out: E[X] climbs
    toward L and the gap eta_arq - eta_noarq collapses.  Nothing is
    asserted here; the rows report measured values with propagated
    standard errors so callers can judge the trend.
    """
    if strategy not in ("ir", "cc"):
        raise ValueError(f"diagnostic compares ir or cc against noarq, got {strategy!r}")
    if len(snr_grid) < 2:
        raise ValueError("need at least two grid points")
    dbs = [pt.p_db for pt in snr_grid]
    if any(b <= a for a, b in zip(dbs, dbs[1:])):
        raise ValueError("snr grid must be strictly ascending in dB")
    rows = []
    for pt in snr_grid:
        op = solve_operating_point(strategy, n_rounds, eps, pt, mc, workers)
        base = solve_operating_point("noarq", n_rounds, eps, pt, mc, workers)
        rows.append(DiagnosticRow(
            snr_db=pt.p_db,
            expected_rounds=op.expected_rounds,
            throughput=op.throughput,
            baseline=base.throughput,
            throughput_gap=op.throughput - base.throughput,
            gap_se=math.hypot(op.throughput_se, base.throughput_se)))
    return rows
