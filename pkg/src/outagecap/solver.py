"""Bracketed inversion of scalar monotone functions.

Everything downstream that needs an inverse (quantile of a fading
distribution, operating point of a throughput curve) reduces to solving
f(x) = target for a monotone f on an interval.  Bisection is used as the
workhorse because it only needs monotonicity and tolerates noisy f when
the caller sets f_tol to the noise level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


class BracketError(RuntimeError):
    """The supplied or expanded interval never straddled the target."""


class ConvergenceError(RuntimeError):
    """Iteration cap hit before tolerances were met.

    Carries the best iterate and the final bracket so callers can decide
    whether the partial answer is usable.
    """

    def __init__(self, message: str, best: float | None = None,
                 bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.best = best
        self.bracket = bracket


@dataclass(frozen=True)
class MonotoneProblem:
    """One scalar equation f(x) = target on [lo, hi], f monotone.

    direction declares whether f increases or decreases on the interval;
    the solver trusts the declaration and raises BracketError if the
    endpoint values contradict it.  f_tol above zero lets noisy f's
    (Monte Carlo estimates) terminate on function value instead of
    grinding the bracket below the noise floor.
    """

    f: Callable[[float], float]
    target: float
    lo: float
    hi: float
    x_tol: float = 1e-9
    f_tol: float = 1e-15
    max_iter: int = 200
    direction: str = "increasing"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")
        if not self.x_tol > 0.0:
            raise ValueError("x_tol must be positive")
        if not self.f_tol > 0.0:
            raise ValueError("f_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.direction not in ("increasing", "decreasing"):
            raise ValueError("direction must be 'increasing' or 'decreasing'")


def invert_monotone(problem: MonotoneProblem,
                    trace: list[tuple[float, float]] | None = None) -> float:
    """Solve problem.f(x) = problem.target by bisection.

    Returns x with |x - x*| <= x_tol or |f(x) - target| <= f_tol.  If
    trace is a list, the bracket after every iteration is appended to it
    (handy for asserting the bracket always shrinks and keeps the root).
    """
    p = problem
    sgn = 1.0 if p.direction == "increasing" else -1.0
    glo = sgn * (p.f(p.lo) - p.target)
    ghi = sgn * (p.f(p.hi) - p.target)
    if abs(glo) <= p.f_tol:
        return p.lo
    if abs(ghi) <= p.f_tol:
        return p.hi
    if glo > 0.0 or ghi < 0.0:
        raise BracketError(
            f"target {p.target} not bracketed on [{p.lo}, {p.hi}] "
            f"(endpoint values {p.f(p.lo)}, {p.f(p.hi)})")
    lo, hi = p.lo, p.hi
    for _ in range(p.max_iter):
        mid = 0.5 * (lo + hi)
        gm = sgn * (p.f(mid) - p.target)
        if gm < 0.0:
            lo = mid
        else:
            hi = mid
        if trace is not None:
            trace.append((lo, hi))
        if abs(gm) <= p.f_tol or hi - lo <= p.x_tol:
            return mid
    raise ConvergenceError(
        f"no convergence in {p.max_iter} bisection steps",
        best=0.5 * (lo + hi), bracket=(lo, hi))


def expand_bracket(f: Callable[[float], float], target: float,
                   seed_interval: tuple[float, float],
                   growth: float = 2.0, max_expansions: int = 60,
                   ) -> tuple[float, float]:
    """Grow seed_interval geometrically until f straddles target.

    f must be monotone; the direction is inferred from the seed endpoint
    values.  Only the deficient side is pushed outward, so a seed that
    already straddles is returned unchanged.  Raises BracketError after
    max_expansions failed growth steps (monotonicity violations surface
    the same way: the pushed side never crosses).
    """
    lo, hi = float(seed_interval[0]), float(seed_interval[1])
    if not lo < hi:
        raise ValueError("seed interval must have positive width")
    if not growth > 1.0:
        raise ValueError("growth must exceed 1")
    glo = f(lo) - target
    ghi = f(hi) - target
    increasing = ghi >= glo
    for _ in range(max_expansions):
        # for increasing f want glo <= 0 <= ghi; mirrored when decreasing
        lo_ok = glo <= 0.0 if increasing else glo >= 0.0
        hi_ok = ghi >= 0.0 if increasing else ghi <= 0.0
        if lo_ok and hi_ok:
            return lo, hi
        width = hi - lo
        if not lo_ok:
            lo -= growth * width
            glo = f(lo) - target
        else:
            hi += growth * width
            ghi = f(hi) - target
    raise BracketError(
        f"no bracket for target {target} after {max_expansions} expansions "
        f"(reached [{lo}, {hi}])")
