"""Distribution of a sum of n iid unit-mean exponential power gains.

This is the fading statistic behind every antenna-diversity result here:
with n independent Rayleigh branches the combined power gain is Erlang
with shape n and unit scale.  The CDF is the classic finite sum

    F_n(x) = 1 - exp(-x) * sum_{k=0}^{n-1} x^k / k!

evaluated with incrementally updated terms so no explicit factorial is
ever formed.  Orders up to 64 stay well inside double-precision range
for the incremental recurrence; larger orders are rejected.
"""

from __future__ import annotations

import math

import numpy as np

from .solver import ConvergenceError, expand_bracket

MAX_ORDER = 64

_CDF_TOL = 1e-12
_MAX_NEWTON = 200


def check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ValueError(f"order must be an integer, got {n!r}")
    n = int(n)
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {n}")
    return n


def _cdf_lower_series(xx: np.ndarray, n: int) -> np.ndarray:
    """F_n(x) = exp(-x) sum_{k>=n} x^k / k!, all terms positive.

    Converges geometrically for x < n + 1; used on the left tail where
    the complementary form 1 - exp(-x) * S cancels to rounding noise.
    """
    term = np.exp(n * np.log(xx) - xx - math.lgamma(n + 1))
    total = term.copy()
    k = n
    while True:
        k += 1
        term = term * (xx / k)
        total = total + term
        if k > 4 * n + 60 or np.all(term <= total * 1e-17):
            return total


def erlang_cdf(x, n: int):
    """P[sum of n unit-mean exponential gains <= x].

    Accepts a scalar or ndarray; negative x maps to probability 0 and the
    result is clamped to [0, 1] against rounding spill.  The n = 1 case
    uses expm1, and the left tail (x < n/2) a positive-term series, so
    small quantiles keep relative accuracy at every order and the output
    is nondecreasing in x despite rounding.
    """
    n = check_order(n)
    arr = np.asarray(x, dtype=float)
    xx = np.atleast_1d(np.maximum(arr, 0.0))
    if n == 1:
        out = -np.expm1(-xx)
    else:
        term = np.ones_like(xx)
        total = np.ones_like(xx)
        for k in range(1, n):
            term = term * (xx / k)
            total = total + term
        out = np.clip(1.0 - np.exp(-xx) * total, 0.0, 1.0)
        left = (xx > 0.0) & (xx < 0.5 * n)
        if np.any(left):
            out[left] = _cdf_lower_series(xx[left], n)
    if arr.ndim == 0:
        return float(out[0])
    return out


def erlang_pdf(x, n: int):
    """Density x^(n-1) exp(-x) / (n-1)! of the n-gain sum; 0 for x < 0."""
    n = check_order(n)
    arr = np.asarray(x, dtype=float)
    if n == 1:
        out = np.where(arr < 0.0, 0.0, np.exp(-np.maximum(arr, 0.0)))
    else:
        pos = arr > 0.0
        safe = np.where(pos, arr, 1.0)
        out = np.where(pos, np.exp((n - 1) * np.log(safe) - safe - math.lgamma(n)), 0.0)
    if arr.ndim == 0:
        return float(out)
    return out


def erlang_inv_cdf(p: float, n: int) -> float:
    """x such that erlang_cdf(x, n) = p, solved to 1e-12 in CDF value.

    Doubling expansion finds a bracket, then Newton on the analytic
    density with bisection fallback whenever a step would leave the
    bracket.  Newton is polished until the residual stops improving, so
    for n = 1 the result matches -log1p(-p) to machine relative accuracy.
    """
    n = check_order(n)
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly inside (0, 1), got {p}")
    # generous seed: 4n covers the bulk (mean n), the log term covers p -> 1
    hi0 = max(4.0 * n, 8.0 * -math.log1p(-p))
    lo, hi = expand_bracket(lambda t: erlang_cdf(t, n), p, (0.0, hi0))

    x = 0.5 * (lo + hi)
    best_x, best_resid = x, math.inf
    prev_resid = math.inf
    for _ in range(_MAX_NEWTON):
        resid = erlang_cdf(x, n) - p
        aresid = abs(resid)
        if aresid < best_resid:
            best_x, best_resid = x, aresid
        if resid == 0.0 or (aresid <= _CDF_TOL and aresid >= prev_resid):
            # inside tolerance and no longer improving: numeric floor
            return best_x
        prev_resid = aresid
        if resid > 0.0:
            hi = x
        else:
            lo = x
        d = erlang_pdf(x, n)
        nxt = x - resid / d if d > 0.0 else math.nan
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
            if nxt == lo or nxt == hi:
                break   # bracket exhausted at float resolution
        x = nxt
    if best_resid <= _CDF_TOL:
        return best_x
    raise ConvergenceError(
        f"erlang inverse cdf stalled at |F - p| = {best_resid:.3e} for n = {n}",
        best=best_x, bracket=(lo, hi))
