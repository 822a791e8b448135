"""Closed-form capacities: AWGN, fixed-outage diversity, Chase combining.

All rates are bits per symbol.  The fixed-outage rate at outage level
eps is the eps-quantile of the mutual-information distribution; for
transmit (MISO) and receive (SIMO) antenna diversity with one antenna on
the other side the quantile reduces to the Erlang inverse CDF, giving a
gap factor Gamma with C_eps(P) = log2(1 + Gamma P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import LN2, SnrPoint
from .erlang import check_order, erlang_cdf, erlang_inv_cdf


def check_eps(eps: float) -> float:
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise ValueError(f"outage level must lie strictly inside (0, 1), got {eps}")
    return eps


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts with at most one side having multiple antennas.

    Only MISO (n_t x 1) and SIMO (1 x n_r) are modeled; a config with
    min(n_t, n_r) > 1 is rejected because the scalar-gain reduction to an
    Erlang quantile no longer applies there.
    """

    n_t: int = 1
    n_r: int = 1

    def __post_init__(self):
        for name, v in (("n_t", self.n_t), ("n_r", self.n_r)):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if min(self.n_t, self.n_r) != 1:
            raise ValueError(f"need min(n_t, n_r) = 1, got {self.n_t}x{self.n_r}")

    @property
    def order(self) -> int:
        """Diversity order: number of independent branches."""
        return max(self.n_t, self.n_r)

    @property
    def is_miso(self) -> bool:
        return self.n_r == 1

    @property
    def label(self) -> str:
        return f"{self.n_t}x{self.n_r}"


def awgn_capacity(snr: SnrPoint) -> float:
    """log2(1 + P): the no-fading ceiling every scheme here sits under."""
    return math.log1p(snr.p_linear) / LN2


def gap_to_capacity(eps: float, config: AntennaConfig) -> float:
    """Linear gap factor Gamma with C_eps(P) = log2(1 + Gamma P).

    Gamma = F_n^{-1}(eps) / n_t: the transmit side pays the power split
    across its antennas, the receive side does not.
    """
    eps = check_eps(eps)
    return erlang_inv_cdf(eps, config.order) / config.n_t


def gap_small_eps_approx(eps: float, n_t: int) -> float:
    """Small-eps expansion of the transmit-diversity gap factor:

        Gamma ~ eps^(1/n) (n!)^(1/n) / n

    from F_n(x) ~ x^n / n! near zero.  The receive-diversity gap is this
    times n (no transmit power split).
    """
    eps = check_eps(eps)
    if isinstance(n_t, bool) or not isinstance(n_t, int) or n_t < 1:
        raise ValueError(f"n_t must be a positive integer, got {n_t!r}")
    return eps ** (1.0 / n_t) * math.exp(math.lgamma(n_t + 1) / n_t) / n_t


def outage_capacity_miso(snr: SnrPoint, eps: float, n_t: int) -> float:
    """Fixed-outage rate of n_t x 1 transmit diversity.

    For n_t = 1 this is log2(1 + ln(1/(1 - eps)) P) exactly, since the
    order-1 Erlang quantile is -ln(1 - eps).
    """
    config = AntennaConfig(n_t=n_t, n_r=1)
    return math.log1p(gap_to_capacity(eps, config) * snr.p_linear) / LN2


def outage_capacity_simo(snr: SnrPoint, eps: float, n_r: int) -> float:
    """Fixed-outage rate of 1 x n_r receive diversity.

    Equals outage_capacity_miso(eps, n_r P, n_r): combining after the
    channel recovers exactly the transmit power split.
    """
    config = AntennaConfig(n_t=1, n_r=n_r)
    return math.log1p(gap_to_capacity(eps, config) * snr.p_linear) / LN2


def outage_capacity(snr: SnrPoint, eps: float, config: AntennaConfig) -> float:
    """Fixed-outage rate for any accepted antenna config."""
    return math.log1p(gap_to_capacity(eps, config) * snr.p_linear) / LN2


# --- Chase combining ------------------------------------------------------
#
# Retransmissions carry the same codeword; the receiver adds SNR, so the
# information after l rounds is log2(1 + P sum_{i<=l} g_i) and every
# round-count event is again an Erlang tail.


def cc_initial_rate(snr: SnrPoint, eps: float, n_rounds: int) -> float:
    """Rate R such that energy combining over n_rounds rounds fails with
    probability eps:  R = log2(1 + P F_L^{-1}(eps))."""
    eps = check_eps(eps)
    return math.log1p(snr.p_linear * erlang_inv_cdf(eps, n_rounds)) / LN2


def cc_expected_rounds(r_bits: float, snr: SnrPoint, n_rounds: int) -> float:
    """Mean rounds consumed per message at initial rate r_bits.

    Survivor sum E[X] = 1 + sum_{i=1}^{L-1} F_i((2^R - 1)/P): the message
    is still running after round i exactly when the combined SNR has not
    yet reached the decoding threshold.  Undecoded messages consume all L
    rounds.
    """
    n_rounds = check_order(n_rounds)
    r_bits = float(r_bits)
    if r_bits < 0.0:
        raise ValueError(f"rate must be nonnegative, got {r_bits}")
    x = math.expm1(r_bits * LN2) / snr.p_linear
    return 1.0 + sum(erlang_cdf(x, i) for i in range(1, n_rounds))


def cc_throughput(snr: SnrPoint, eps: float, n_rounds: int) -> float:
    """Long-run rate R / E[X] of Chase combining at outage level eps."""
    r = cc_initial_rate(snr, eps, n_rounds)
    return r / cc_expected_rounds(r, snr, n_rounds)
