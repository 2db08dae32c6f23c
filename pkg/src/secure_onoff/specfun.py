"""First-order Marcum Q-function and principal-branch Lambert W.

Both are scalar double-precision routines tuned for the accuracy the closed
forms in :mod:`secure_onoff.outage` need (quadrature over Q1 amplifies error,
so the target is ~1e-13 absolute).
"""

import math

from scipy.special import gammaincc

__all__ = ["marcum_q1", "lambert_w0"]

# Remaining geometric tail of the series must drop below this before stopping.
_TAIL_BOUND = 1e-17
# 0.5*(b-a)^2 beyond which Q1 (resp. 1-Q1) is below ~1e-304 by Chernoff bound.
_FAR_TAIL = 700.0

_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)


def _stirlerr(n: float) -> float:
    """ln n! - (n ln n - n + 0.5 ln(2 pi n)), accurate for all n >= 1."""
    if n < 16:
        return math.lgamma(n + 1.0) - ((n + 0.5) * math.log(n) - n + _HALF_LN_2PI)
    nn = n * n
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * nn)) / nn) / nn) / n


def _bd0(k: float, mu: float) -> float:
    """Binomial deviance k*ln(k/mu) + mu - k without cancellation near k = mu."""
    if abs(k - mu) < 0.1 * (k + mu):
        v = (k - mu) / (k + mu)
        s = (k - mu) * v
        ej = 2.0 * k * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
            j += 1
    return k * math.log(k / mu) + mu - k


def _poisson_pmf(k: int, mu: float) -> float:
    """e^-mu mu^k / k! to a few ulp (saddle-point form; the direct log-space
    expression loses ~eps*mu accuracy in the exponent for large mu)."""
    if k == 0:
        return math.exp(-mu)
    expo = -_stirlerr(float(k)) - _bd0(float(k), mu)
    if expo < -745.0:
        return 0.0
    return math.exp(expo) / math.sqrt(2.0 * math.pi * k)


def marcum_q1(a: float, b: float) -> float:
    """Marcum Q-function Q1(a, b).

    Equals Pr(X > b^2) for X noncentral chi-square with 2 degrees of freedom
    and noncentrality a^2.  Evaluated as the Poisson mixture of Erlang tail
    probabilities

        Q1(a, b) = sum_k  e^-x x^k / k!  *  Q(k+1, y),  x = a^2/2, y = b^2/2,

    summed outward from the Poisson mode with term recurrences.  Every term is
    positive, so truncation error is bounded by the unscanned Poisson mass;
    absolute error is ~1e-13.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or a < 0.0 or b < 0.0:
        raise ValueError(f"marcum_q1 needs finite a >= 0, b >= 0, got a={a}, b={b}")
    if b == 0.0:
        return 1.0
    if a == 0.0:
        return math.exp(-0.5 * b * b)

    gap = 0.5 * (b - a) ** 2
    if gap > _FAR_TAIL:
        # Chernoff bounds: Q1 <= exp(-gap) for b > a, 1 - Q1 <= exp(-gap) for a > b.
        return 0.0 if b > a else 1.0

    x = 0.5 * a * a
    y = 0.5 * b * b
    k0 = int(x)

    # Anchor terms at the Poisson mode.
    p0 = _poisson_pmf(k0, x)  # e^-x x^k0 / k0!
    t0 = _poisson_pmf(k0, y)  # e^-y y^k0 / k0!
    s0 = float(gammaincc(k0 + 1, y))  # Erlang tail Q(k0+1, y)

    total = p0 * s0

    # Upward sweep: k0+1, k0+2, ...  Poisson weights decay once k > x; the
    # Erlang factor can still grow toward 1, so the stopping bound may only
    # use the remaining Poisson mass (s <= 1), never the current s.
    p, s, t = p0, s0, t0
    k = k0
    while True:
        k += 1
        p *= x / k
        t *= y / k
        s = min(s + t, 1.0)
        total += p * s
        r = x / (k + 2)
        if r < 1.0 and p * r / (1.0 - r) < _TAIL_BOUND:
            break

    # Downward sweep: k0-1, ..., 0.  s shrinks with k, p decays below the mode.
    p, s, t = p0, s0, t0
    k = k0
    while k > 0:
        p *= k / x
        s = max(s - t, 0.0)  # drop t_k from the Erlang partial sum
        t *= k / y
        k -= 1
        term = p * s
        total += term
        if k == 0 or s == 0.0:
            break
        r = k / x
        if r < 1.0 and term * r / (1.0 - r) < _TAIL_BOUND:
            break

    return min(total, 1.0)


def lambert_w0(x: float) -> float:
    """Principal branch of Lambert W on x >= 0: the w >= 0 with w*e^w = x.

    Halley iteration from a logarithmic initial guess; residual |w e^w - x|
    is driven below 1e-13 * max(1, x).
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"lambert_w0 supports x >= 0 only, got x={x}")
    if x == 0.0:
        return 0.0

    if x > math.e:
        lx = math.log(x)
        w = lx - math.log(lx)
    else:
        # log1p(x) >= W(x) on [0, e] and lies well inside the convergence basin.
        w = math.log1p(x)

    for _ in range(60):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= 1e-13 * max(1.0, x):
            return w
        wp1 = w + 1.0
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))

    if abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, x):
        return w
    raise ArithmeticError(f"lambert_w0 failed to converge for x={x}")
