"""Generic scalar numerics: bracketed root finding, adaptive quadrature on a
finite interval, and bounded 1-D maximization (coarse scan + local polish)."""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _si
from scipy import optimize as _so

__all__ = [
    "ToleranceSpec",
    "DEFAULT_TOL",
    "BracketError",
    "ConvergenceError",
    "IntegrandError",
    "ObjectiveError",
    "find_root_monotone",
    "grow_bracket",
    "integrate",
    "maximize_scalar",
]


class BracketError(ValueError):
    """No sign change over the supplied (or grown) interval."""


class ConvergenceError(RuntimeError):
    """Iteration or subdivision budget exhausted before reaching tolerance."""


class IntegrandError(ValueError):
    """Integrand returned a non-finite value."""


class ObjectiveError(ValueError):
    """Objective returned a non-finite value at a probe point."""


@dataclass(frozen=True)
class ToleranceSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 10:
            raise ValueError("max_iter must be at least 10")


DEFAULT_TOL = ToleranceSpec()


def find_root_monotone(
    f: Callable[[float], float], lo: float, hi: float, tol: ToleranceSpec = DEFAULT_TOL
) -> float:
    """Root of a continuous monotone f on [lo, hi] with f(lo), f(hi) of
    opposite signs.  Brent's method: bisection-safe, interpolation-accelerated.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    f_lo = f(lo)
    f_hi = f(hi)
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)):
        raise ObjectiveError(f"f non-finite at bracket ends: f({lo})={f_lo}, f({hi})={f_hi}")
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")
    root, res = _so.brentq(
        f,
        lo,
        hi,
        xtol=tol.abs_tol,
        rtol=max(tol.rel_tol, 4.0 * np.finfo(float).eps),
        maxiter=tol.max_iter,
        full_output=True,
    )
    if not res.converged:
        raise ConvergenceError(f"root finder did not converge within {tol.max_iter} iterations")
    return min(max(float(root), lo), hi)


def grow_bracket(
    f: Callable[[float], float], lo: float, step: float = 1.0, cap: float | None = None
) -> tuple[float, float]:
    """Expand an upper bracket end from lo+step by doubling until the sign of
    f flips relative to f(lo).  Used where the natural upper limit is open."""
    if cap is None:
        cap = 1e3 * max(lo, 1.0) + 1e3
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo, lo
    sign_lo = math.copysign(1.0, f_lo)
    width = step
    while True:
        hi = lo + width
        f_hi = f(hi)
        if not math.isfinite(f_hi):
            raise ObjectiveError(f"f non-finite at {hi} while growing bracket")
        if f_hi == 0.0 or math.copysign(1.0, f_hi) != sign_lo:
            return lo, hi
        if hi > cap:
            raise BracketError(f"no sign change up to {hi} (cap {cap}) from lo={lo}")
        width *= 2.0


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: ToleranceSpec = DEFAULT_TOL,
) -> float:
    """Adaptive quadrature of f over the finite interval [lo, hi]; estimated
    absolute error must reach max(abs_tol, rel_tol*|result|)."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return 0.0

    def checked(t: float) -> float:
        v = f(t)
        if not math.isfinite(v):
            raise IntegrandError(f"integrand non-finite at t={t}: {v}")
        return v

    out = _si.quad(
        checked,
        lo,
        hi,
        epsabs=tol.abs_tol,
        epsrel=tol.rel_tol,
        limit=max(tol.max_iter, 50),
        full_output=1,
    )
    if len(out) > 3:
        raise ConvergenceError(f"quadrature on [{lo}, {hi}] failed: {out[-1]}")
    result, abserr = float(out[0]), float(out[1])
    if abserr > max(tol.abs_tol, tol.rel_tol * abs(result)):
        raise ConvergenceError(
            f"quadrature error estimate {abserr:.3e} exceeds tolerance on [{lo}, {hi}]"
        )
    return result


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: ToleranceSpec = DEFAULT_TOL,
    n_seeds: int = 64,
) -> tuple[float, float]:
    """Maximize f on [lo, hi]: coarse scan over n_seeds points, then bounded
    local polish around the best seed.  Robust to mild multimodality; the
    returned value never falls below the best coarse seed.  Ties go to the
    smaller abscissa."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if n_seeds < 2:
        raise ValueError("need at least 2 seed points")
    xs = np.linspace(lo, hi, n_seeds)
    vals = np.empty(n_seeds)
    for i, xv in enumerate(xs):
        v = f(float(xv))
        if not math.isfinite(v):
            raise ObjectiveError(f"objective non-finite at x={xv}: {v}")
        vals[i] = v
    best = int(np.argmax(vals))
    a = float(xs[max(best - 1, 0)])
    b = float(xs[min(best + 1, n_seeds - 1)])

    xatol = tol.abs_tol + tol.rel_tol * (hi - lo)
    res = _so.minimize_scalar(
        lambda t: -f(t),
        bounds=(a, b),
        method="bounded",
        options={"xatol": xatol, "maxiter": max(tol.max_iter, 200)},
    )
    x_ref = float(res.x)
    v_ref = f(x_ref)
    if not math.isfinite(v_ref):
        raise ObjectiveError(f"objective non-finite at refined x={x_ref}")
    if v_ref >= vals[best]:
        return x_ref, float(v_ref)
    return float(xs[best]), float(vals[best])
