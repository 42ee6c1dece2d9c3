"""Real-argument binomial coefficients and the scalar inequalities built on them.

All logarithms are base 2.  Values that feed an inequality check are
evaluated in exact rational arithmetic (a float ``y`` is an exact binary
fraction) so a reported violation is never a rounding artefact.
"""
import math
from fractions import Fraction
from math import comb, isqrt, log2
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .errors import InvalidArgument, NumericError

SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0


class Inequality(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


class NewtonBounds(NamedTuple):
    lower: float
    sum: float
    upper: float

    @property
    def holds(self):
        return self.lower < self.sum <= self.upper


def _check_index(i, name="i"):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or i < 0:
        raise InvalidArgument(f"{name} must be a non-negative integer, got {i!r}")
    return int(i)


def _exact(y):
    return y if isinstance(y, Fraction) else Fraction(y)


def binom_exact(y, i):
    """``C(y, i)`` as an exact :class:`~fractions.Fraction`."""
    i = _check_index(i)
    y = _exact(y)
    if y.denominator == 1 and y >= 0:
        return Fraction(comb(y.numerator, i))
    num = Fraction(1)
    for j in range(i):
        num *= y - j
    return num / math.factorial(i)


def binom_row_exact(y, top):
    """``[C(y, 0), ..., C(y, top)]`` exactly, by the ratio recurrence."""
    y = _exact(y)
    row = [Fraction(1)]
    for j in range(top):
        row.append(row[-1] * (y - j) / (j + 1))
    return row


def binom_real(y, i):
    """Generalised binomial ``y (y-1) ... (y-i+1) / i!`` for real ``y >= 0``.

    Exact for integral ``y``; otherwise the exact rational product rounded
    once.  Results beyond the float range come back as ``+-inf``; use
    :func:`log2_binom_real` for those.  Negative only when ``i > ceil(y)``.
    """
    i = _check_index(i)
    if y < 0:
        raise InvalidArgument(f"y must be non-negative, got {y!r}")
    if i == 0:
        return 1.0
    value = binom_exact(y, i)
    try:
        return float(value)
    except OverflowError:
        return math.copysign(math.inf, value)


def log2_binom_real(y, i):
    """``(sign, log2|C(y, i)|)``; ``(0, -inf)`` when the product vanishes."""
    i = _check_index(i)
    sign, terms = 1, []
    for j in range(i):
        f = y - j
        if f == 0:
            return 0, -math.inf
        if f < 0:
            sign = -sign
        terms.append(log2(abs(f)))
    return sign, math.fsum(terms) - math.lgamma(i + 1) / math.log(2)


def _binom_float(y, k):
    """Fast float ``C(y, k)`` for the bisection (monotone on ``y >= k-1``)."""
    val = 1.0
    for j in range(k):
        val *= (y - j) / (j + 1)
    return val


def invert_binomial(m, k):
    """The root ``y >= k-1`` of ``C(y, k) = m``, rounded down.

    A float bisection brackets the root to 1e-9, then an exact rational
    bisection shrinks the bracket to adjacent floats and returns its lower
    end: the largest float ``y`` with ``C(y, k) <= m``.  Rounding down keeps
    every derived ``C(y, i)`` from overshooting the true value.
    """
    k = _check_index(k, "k")
    if k < 1:
        raise InvalidArgument("k must be at least 1")
    if m < 0:
        raise InvalidArgument(f"m must be non-negative, got {m!r}")
    floor_y = float(k - 1)
    if m == 0:
        return floor_y
    lo = floor_y
    hi = lo + max(2.0, 2.0 * float(m) ** (1.0 / k) * k)
    grow = 0
    while _binom_float(hi, k) < m:
        hi = lo + 2.0 * (hi - lo)
        grow += 1
        if grow > 2000:
            raise NumericError(f"could not bracket C(y,{k}) = {m}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-9 or mid <= lo or mid >= hi:
            break
        if _binom_float(mid, k) < m:
            lo = mid
        else:
            hi = mid
    target = Fraction(m)
    width = max(hi - lo, 1e-9)
    while lo > floor_y and binom_exact(lo, k) > target:
        lo = max(floor_y, lo - 2.0 * width)
    while binom_exact(hi, k) <= target:
        hi += 2.0 * width
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return lo
        if binom_exact(mid, k) <= target:
            lo = mid
        else:
            hi = mid
    raise NumericError(f"bisection for C(y,{k}) = {m} did not converge")


def entropy(p):
    """Binary entropy in bits, with ``H(0) = H(1) = 0``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"entropy argument {p!r} outside [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)


def _check_alpha(alpha):
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgument(f"alpha must lie in (0, 1], got {alpha!r}")


def mu(r, alpha):
    """Trace exponent ``(r + 1 - log(1+alpha)) / (2 - log(1+alpha))``."""
    _check_alpha(alpha)
    if r < 1:
        raise InvalidArgument(f"r must be at least 1, got {r!r}")
    a = log2(1.0 + alpha)
    return (r + 1.0 - a) / (2.0 - a)


def lambda_br(alpha):
    """Bollobas-Radcliffe lower-bound exponent (per unit of ``r``)."""
    _check_alpha(alpha)
    a = log2(1.0 + alpha)
    if alpha >= SQRT2_MINUS_1:
        return a
    return a / entropy(a)


def sum_binom_gamma_lower(k, x, gamma):
    """Both sides of ``sum_i C(x,i) g^i >= (1/4) (sum_i C(x,i))^log(1+g)``, ``i <= k``."""
    k = _check_index(k, "k")
    if k < 1 or not 0.0 <= gamma <= 1.0 or x < k:
        raise InvalidArgument(f"need k >= 1, 0 <= gamma <= 1, x >= k; got k={k}, x={x}, gamma={gamma}")
    row = binom_row_exact(x, k)
    g = Fraction(gamma)
    lhs = float(sum(c * g ** i for i, c in enumerate(row)))
    total = float(sum(row))
    rhs = 0.25 * total ** log2(1.0 + gamma)
    return Inequality(lhs, rhs, lhs >= rhs)


def newton_partial_sum_bounds(x):
    """``(2^(x-1), sum_{i <= floor x} C(x,i), 2^x)``; ``.holds`` checks strict/weak order."""
    if not x > 0:
        raise InvalidArgument(f"x must be positive, got {x!r}")
    row = binom_row_exact(x, math.floor(x))
    exact_sum = sum(row)
    lower, upper = 2.0 ** (x - 1.0), 2.0 ** x
    return NewtonBounds(lower, float(exact_sum), upper)


def binom_ratio_lower(x, y, k, i, delta):
    """Both sides of ``C(y,i)/C(y,k) >= i^-delta C(x,i-delta)/C(x,k-delta)``.

    Requires ``delta <= i <= k`` and ``C(y,k) <= C(x,k-delta)`` with every
    binomial involved strictly positive.  Compared exactly.
    """
    k, i, delta = (_check_index(v, name) for v, name in ((k, "k"), (i, "i"), (delta, "delta")))
    if not delta <= i <= k:
        raise InvalidArgument(f"need delta <= i <= k, got delta={delta}, i={i}, k={k}")
    if not (x > 0 and y > 0):
        raise InvalidArgument("x and y must be positive")
    cyk, cyi = binom_exact(y, k), binom_exact(y, i)
    cxk, cxi = binom_exact(x, k - delta), binom_exact(x, i - delta)
    if min(cyk, cyi, cxk, cxi) <= 0:
        raise InvalidArgument("all binomials must be positive (need y > k-1 and x > k-delta-1)")
    if cyk > cxk:
        raise InvalidArgument("hypothesis C(y,k) <= C(x,k-delta) fails")
    lhs = cyi / cyk
    rhs = Fraction(1, i ** delta) * cxi / cxk if delta else cxi / cxk
    return Inequality(float(lhs), float(rhs), lhs >= rhs)


def _gap_upper(x):
    # e^{-x} - (1 - x), evaluated without cancellation near 0
    if abs(x) < 1e-3:
        return x * x * (0.5 - x / 6.0 + x * x / 24.0)
    return math.expm1(-x) + x


def _gap_lower(x):
    # (1 - x) - e^{-2x}
    if abs(x) < 1e-3:
        return x * (1.0 - 2.0 * x + 4.0 * x * x / 3.0 - 2.0 * x ** 3 / 3.0)
    return -x - math.expm1(-2.0 * x)


def exp_sandwich(x):
    """``(lower_ok, upper_ok)`` for ``e^-2x <= 1 - x <= e^-x``.

    ``lower_ok`` is ``None`` outside ``[0, 1/2]`` where it is not claimed.
    """
    upper_ok = _gap_upper(x) >= 0.0
    lower_ok = _gap_lower(x) >= 0.0 if 0.0 <= x <= 0.5 else None
    return lower_ok, upper_ok


def _hg_domain(n, x, y, h):
    for name, v in (("n", n), ("x", x), ("y", y), ("h", h)):
        _check_index(v, name)
    if not (h <= x <= n and y <= n):
        raise InvalidArgument(f"need 0 <= h <= x <= n and y <= n, got n={n}, x={x}, y={y}, h={h}")


def hypergeom_pmf_exact(n, x, y, h):
    _hg_domain(n, x, y, h)
    return Fraction(comb(y, h) * comb(n - y, x - h), comb(n, x))


def hypergeom_pmf(n, x, y, h):
    """``P[|X & Y| = h]`` for a uniform ``x``-subset ``X`` and fixed ``y``-set ``Y`` of ``[n]``."""
    return float(hypergeom_pmf_exact(n, x, y, h))


def binom_pmf_exact(x, p, h):
    _check_index(x, "x")
    _check_index(h, "h")
    if not 0 <= p <= 1 or h > x:
        raise InvalidArgument(f"need 0 <= p <= 1 and h <= x, got p={p}, h={h}, x={x}")
    p = _exact(p)
    return comb(x, h) * p ** h * (1 - p) ** (x - h)


def binom_pmf(x, p, h):
    return float(binom_pmf_exact(x, p, h))


def hypergeom_dominated_exact(n, x, y, h):
    """Integer-exact test of ``P[H=h] <= 2 P[B=h]`` with ``B ~ Bin(x, y/n)``."""
    _hg_domain(n, x, y, h)
    lhs = comb(y, h) * comb(n - y, x - h) * n ** x
    rhs = 2 * comb(x, h) * y ** h * (n - y) ** (x - h) * comb(n, x)
    return lhs <= rhs


def _log_comb(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ok = (b >= 0) & (b <= a)
    out = np.full(np.broadcast(a, b).shape, -np.inf)
    aa, bb = np.broadcast_arrays(a, b)
    out[ok] = gammaln(aa[ok] + 1) - gammaln(bb[ok] + 1) - gammaln(aa[ok] - bb[ok] + 1)
    return out


def hypergeom_domination_grid(n, x, margin=1e-9):
    """Check ``P[H=h] <= 2 P[B=h]`` for every ``y in [0,n]``, ``h in [0,x]``.

    Screened in log space; any cell within ``margin`` of the boundary is
    settled by :func:`hypergeom_dominated_exact`.  Returns
    ``(violations, max_ratio)`` where violations lists ``(y, h)`` cells.
    """
    y = np.arange(n + 1, dtype=float)[:, None]
    h = np.arange(x + 1, dtype=float)[None, :]
    log_h = _log_comb(y, h) + _log_comb(n - y, x - h) - _log_comb(n, x)
    p = y / n
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.where(h > 0, h * np.log(p), 0.0)
        lq = np.where(x - h > 0, (x - h) * np.log1p(-p), 0.0)
    log_b = _log_comb(x, h) + lp + lq
    with np.errstate(invalid="ignore"):
        diff = log_h - log_b
    diff = np.where(np.isneginf(log_h), -np.inf, diff)
    suspicious = ~(diff <= math.log(2.0) - margin)
    violations = []
    for yy, hh in zip(*np.nonzero(suspicious)):
        if not hypergeom_dominated_exact(n, x, int(yy), int(hh)):
            violations.append((int(yy), int(hh)))
    finite = diff[np.isfinite(diff)]
    max_ratio = float(np.exp(finite.max())) if finite.size else 0.0
    return violations, max_ratio


def max_hg_draws(n, cap=20):
    """Largest ``x`` with ``x <= sqrt(n)`` (and ``x <= cap``)."""
    return min(cap, isqrt(n))
