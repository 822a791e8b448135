"""Monte Carlo estimation of outage quantiles and hybrid-ARQ behaviour.

Work is split into fixed-size chunks; chunk j draws its gains from a
Philox stream keyed (seed, j).  The chunk plan depends only on the
config, never on the worker count, and chunk results are reduced in plan
order, so a given (n_samples, seed, chunk_size) triple produces bit-for-
bit identical estimates whether it runs on one thread or many.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .analytic import check_eps
from .channel import LN2, RngStream, SnrPoint, sample_gains
from .erlang import check_order


class PrecisionError(RuntimeError):
    """The sample size cannot resolve the requested tail."""


STRATEGIES = ("ir", "cc")

_KDE_MAX = 10_000


@dataclass(frozen=True)
class McConfig:
    """Sample budget and reproducibility knobs for one experiment.

    Worker count is deliberately not a field: it must never change the
    numbers, so it travels as a plain function argument instead.
    """

    n_samples: int = 1_000_000
    seed: int = 0
    chunk_size: int = 1 << 16

    def __post_init__(self):
        for name, v in (("n_samples", self.n_samples), ("chunk_size", self.chunk_size)):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")


@dataclass(frozen=True)
class McEstimate:
    """Point estimate with its standard error and provenance."""

    value: float
    std_error: float
    n_samples: int
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"estimate must be finite, got {self.value}")
        if not (math.isfinite(self.std_error) and self.std_error >= 0.0):
            raise ValueError(f"std_error must be finite and >= 0, got {self.std_error}")
        if self.n_samples < 1:
            raise ValueError("n_samples must be positive")


@dataclass(frozen=True)
class HarqTrace:
    """Outcome of one simulated message: rounds consumed, decode flag,
    and the accumulated mutual information when the process stopped."""

    rounds_used: int
    decoded: bool
    final_mutual_info: float

    def __post_init__(self):
        if self.rounds_used < 1:
            raise ValueError("rounds_used must be at least 1")
        if not math.isfinite(self.final_mutual_info) or self.final_mutual_info < 0.0:
            raise ValueError("final_mutual_info must be finite and nonnegative")


# --- chunked execution ----------------------------------------------------


def _chunk_plan(mc: McConfig) -> list[tuple[int, int]]:
    """(chunk_id, size) pairs covering exactly n_samples draws."""
    full, rem = divmod(mc.n_samples, mc.chunk_size)
    plan = [(j, mc.chunk_size) for j in range(full)]
    if rem:
        plan.append((full, rem))
    return plan


def _run_chunks(mc: McConfig, worker_fn, workers: int = 1) -> list:
    plan = _chunk_plan(mc)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker_fn, plan))   # map preserves plan order
    return [worker_fn(item) for item in plan]


# --- quantile machinery ---------------------------------------------------


def _quantile_index(eps: float, n: int) -> int:
    """1-based index ceil(eps n), guarded against float-ceiling overshoot
    on exact multiples (0.01 * 1e6 lands a hair above 10000)."""
    k = math.floor(eps * n)
    if eps * n > k + 1e-9:
        k += 1
    return max(k, 1)


def _check_quantile_feasible(eps: float, mc: McConfig) -> float:
    eps = check_eps(eps)
    if eps <= 0.01 and mc.n_samples < 10_000:
        raise ValueError(
            f"outage level {eps} needs at least 1e4 samples, got {mc.n_samples}")
    k = _quantile_index(eps, mc.n_samples)
    if k < 50:
        raise PrecisionError(
            f"only {k} samples sit at or below the {eps} quantile; increase n_samples")
    return eps


def _density_at(sorted_vals: np.ndarray, q: float) -> float:
    """Gaussian-kernel density estimate at q, Silverman bandwidth.

    Evaluated on an evenly strided subsample of at most 10^4 points so
    the cost stays flat in n; the stride is deterministic.
    """
    m = sorted_vals.size
    if m > _KDE_MAX:
        idx = np.linspace(0, m - 1, _KDE_MAX).round().astype(np.int64)
        sub = sorted_vals[idx]
    else:
        sub = sorted_vals
    sd = float(np.std(sub))
    iqr = float(np.quantile(sub, 0.75) - np.quantile(sub, 0.25))
    spread = min(sd, iqr / 1.34) if iqr > 0.0 else sd
    if spread <= 0.0:
        return math.inf   # point mass: the quantile carries no sampling noise
    h = 0.9 * spread * sub.size ** -0.2
    z = (q - sub) / h
    return float(np.mean(np.exp(-0.5 * z * z)) / (h * math.sqrt(2.0 * math.pi)))


def _quantile_estimate(chunks: list[np.ndarray], eps: float, mc: McConfig) -> McEstimate:
    vals = np.sort(np.concatenate(chunks))
    n = vals.size
    k = _quantile_index(eps, n)
    q = float(vals[k - 1])   # lower order statistic: measured outage <= eps
    f = _density_at(vals, q)
    se = 0.0 if math.isinf(f) else math.sqrt(eps * (1.0 - eps) / n) / f
    return McEstimate(q, se, n, mc.seed)


def _mi_chunks(snr: SnrPoint, n_blocks: int, mc: McConfig, workers: int,
               per_block: bool) -> list[np.ndarray]:
    p = snr.p_linear

    def one(item):
        j, size = item
        g = sample_gains(RngStream(mc.seed, j), size, n_blocks)
        total = np.log1p(p * g).sum(axis=1) / LN2
        return total / n_blocks if per_block else total

    return _run_chunks(mc, one, workers)


def estimate_tf_outage_capacity(snr: SnrPoint, n_blocks: int, eps: float,
                                mc: McConfig, workers: int = 1) -> McEstimate:
    """eps-quantile of the per-block mutual information
    (1/L) sum_i log2(1 + P g_i): the fixed-outage rate of coding across
    L independent time/frequency blocks.

    Standard error: sqrt(eps(1-eps)/n) over a kernel density estimate at
    the quantile.
    """
    n_blocks = check_order(n_blocks)
    eps = _check_quantile_feasible(eps, mc)
    return _quantile_estimate(_mi_chunks(snr, n_blocks, mc, workers, True), eps, mc)


def estimate_ir_initial_rate(snr: SnrPoint, n_rounds: int, eps: float,
                             mc: McConfig, workers: int = 1) -> McEstimate:
    """eps-quantile of the full L-round accumulated mutual information:
    the largest initial rate incremental redundancy can carry while
    failing with probability eps."""
    n_rounds = check_order(n_rounds)
    eps = _check_quantile_feasible(eps, mc)
    return _quantile_estimate(_mi_chunks(snr, n_rounds, mc, workers, False), eps, mc)


# --- hybrid ARQ -----------------------------------------------------------


def _accumulate(strategy: str, gains: np.ndarray, p_linear: float) -> np.ndarray:
    """Per-round decodable-information prefixes, nondecreasing along axis 1.

    ir combines information (sum of per-round MI); cc combines energy
    (MI of summed SNR).
    """
    if strategy == "ir":
        return np.cumsum(np.log1p(p_linear * gains), axis=1) / LN2
    if strategy == "cc":
        return np.log1p(p_linear * np.cumsum(gains, axis=1)) / LN2
    raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")


def estimate_ir_expected_rounds(r_bits: float, snr: SnrPoint, n_rounds: int,
                                mc: McConfig, workers: int = 1) -> McEstimate:
    """Mean rounds per message for incremental redundancy at rate r_bits.

    Survivor-sum form E[X] = 1 + sum_{i=1}^{L-1} P[prefix_i < R], each
    survivor probability estimated on the same draws; undecoded messages
    consume all L rounds.  Strict inequality makes R = 0 give exactly 1.
    Standard error is the conservative sum of the per-round binomial
    standard errors (the indicators are positively correlated, so the
    true error is no larger).
    """
    n_rounds = check_order(n_rounds)
    r_bits = float(r_bits)
    if r_bits < 0.0:
        raise ValueError(f"rate must be nonnegative, got {r_bits}")
    n = mc.n_samples
    if n_rounds == 1:
        return McEstimate(1.0, 0.0, n, mc.seed)
    p = snr.p_linear

    def one(item):
        j, size = item
        g = sample_gains(RngStream(mc.seed, j), size, n_rounds)
        acc = np.cumsum(np.log1p(p * g), axis=1) / LN2
        return (acc[:, :-1] < r_bits).sum(axis=0, dtype=np.int64)

    counts = sum(_run_chunks(mc, one, workers))
    phat = counts / n
    value = 1.0 + float(phat.sum())
    se = float(np.sqrt(phat * (1.0 - phat) / n).sum())
    return McEstimate(value, se, n, mc.seed)


def ir_throughput(snr: SnrPoint, n_rounds: int, eps: float, mc: McConfig,
                  workers: int = 1) -> McEstimate:
    """Long-run rate R / E[X] of incremental redundancy at outage eps.

    Both stages replay the same (seed, chunk) streams, so the rate
    quantile and the round counts come from identical draws and the
    value is exactly estimate_ir_initial_rate / estimate_ir_expected_rounds
    for the same config.
    """
    rate = estimate_ir_initial_rate(snr, n_rounds, eps, mc, workers)
    rounds = estimate_ir_expected_rounds(rate.value, snr, n_rounds, mc, workers)
    eta = rate.value / rounds.value
    rel = math.hypot(rate.std_error / rate.value if rate.value > 0.0 else 0.0,
                     rounds.std_error / rounds.value)
    return McEstimate(eta, eta * rel, mc.n_samples, mc.seed)


def simulate_harq_protocol(strategy: str, r_bits: float, snr: SnrPoint,
                           n_rounds: int, mc: McConfig, workers: int = 1,
                           ) -> tuple[McEstimate, McEstimate, McEstimate]:
    """Event-level protocol run: returns (outage_rate, mean_rounds,
    long_run_rate) at fixed initial rate r_bits.

    Each message draws fresh gains every round, stops at the first round
    whose accumulated information exceeds r_bits, and burns all L rounds
    when it never does.  long_run_rate is r_bits * n / total_rounds, the
    realized bits per slot including outage losses of entire messages.

    This path shares no formulas with the analytic route, so it is the
    arbiter when closed forms are in doubt.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    n_rounds = check_order(n_rounds)
    r_bits = float(r_bits)
    if not r_bits > 0.0:
        raise ValueError(f"rate must be positive, got {r_bits}")
    p = snr.p_linear

    def one(item):
        j, size = item
        g = sample_gains(RngStream(mc.seed, j), size, n_rounds)
        acc = _accumulate(strategy, g, p)
        passed = acc > r_bits
        decoded = passed[:, -1]   # prefixes are nondecreasing
        rounds = np.where(decoded, np.argmax(passed, axis=1) + 1, n_rounds)
        rounds = rounds.astype(np.int64)
        return int((~decoded).sum()), int(rounds.sum()), int((rounds * rounds).sum())

    n_out, s1, s2 = (sum(col) for col in zip(*_run_chunks(mc, one, workers)))
    n = mc.n_samples
    out_hat = n_out / n
    out_se = math.sqrt(out_hat * (1.0 - out_hat) / n)
    mean = s1 / n
    mean_se = 0.0 if n < 2 else math.sqrt(max(s2 - s1 * s1 / n, 0.0) / (n - 1) / n)
    rate = r_bits / mean
    rate_se = r_bits * mean_se / (mean * mean)
    return (McEstimate(out_hat, out_se, n, mc.seed),
            McEstimate(mean, mean_se, n, mc.seed),
            McEstimate(rate, rate_se, n, mc.seed))


def iter_harq_traces(strategy: str, r_bits: float, snr: SnrPoint,
                     n_rounds: int, stream: RngStream, n_messages: int,
                     ) -> Iterator[HarqTrace]:
    """Yield per-message HarqTrace records in generation order.

    Same decision rule as simulate_harq_protocol, exposed one message at
    a time for invariant checks on individual trajectories.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    n_rounds = check_order(n_rounds)
    r_bits = float(r_bits)
    if not r_bits > 0.0:
        raise ValueError(f"rate must be positive, got {r_bits}")
    if n_messages < 1:
        raise ValueError("n_messages must be at least 1")
    left = n_messages
    while left > 0:
        size = min(left, 8192)
        g = sample_gains(stream, size, n_rounds)
        acc = _accumulate(strategy, g, snr.p_linear)
        passed = acc > r_bits
        decoded = passed[:, -1]
        rounds = np.where(decoded, np.argmax(passed, axis=1) + 1, n_rounds)
        final = acc[np.arange(size), rounds - 1]
        for i in range(size):
            yield HarqTrace(int(rounds[i]), bool(decoded[i]), float(final[i]))
        left -= size
