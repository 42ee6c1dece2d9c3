"""Link decomposition of uniform hypergraphs and sparse Kruskal-Katona bounds.

The constructive steps (regularisation, heavy vertices, heavy tuples and
link-shadow collection) run on real hypergraphs.  The bound evaluators work
in log2 space because their constants are astronomically large at desk
scale; they return :class:`Bound` with a ``vacuous`` flag instead of
failing when the guarantee drops below one.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, log2
from typing import NamedTuple

from .binomials import invert_binomial, log2_binom_real, mu
from .errors import ContractError, InvalidArgument
from .hypergraph import Hypergraph, bits, colex_subsets, wp


class Bound(NamedTuple):
    value: float
    log2_value: float
    vacuous: bool
    clamped: bool = False


def _bound_from_log2(log2_value, clamped=False):
    value = 2.0 ** log2_value if log2_value < 1024 else math.inf
    return Bound(value, log2_value, value < 1.0, clamped)


@dataclass(frozen=True)
class RegularizationResult:
    subgraph: Hypergraph
    vertices: tuple
    removed_order: tuple
    min_degree_bound: float

    def guarantees(self, F):
        """The three regularisation guarantees, each as a bool."""
        n0, m0 = F.n, len(F)
        n1, m1 = len(self.vertices), len(self.subgraph)
        degrees = self.subgraph.degrees()
        bound = m1 / (2 * n1 * log2(n0))
        return {
            "density": m1 * n0 >= m0 * n1,
            "min_degree": all(d >= bound for d in degrees),
            "half_edges": 2 * m1 > m0,
        }


def regularize(F):
    """Drop minimum-degree vertices until every degree is at least
    ``|E'| / (2 |V'| log|V|)``; ties go to the smallest vertex index."""
    if not len(F):
        raise InvalidArgument("regularize needs a non-empty hypergraph")
    if F.n < 2:
        raise InvalidArgument("regularize needs at least two vertices (log|V| > 0)")
    if F.edges == (0,):
        raise InvalidArgument("regularize needs a non-empty edge")
    logn = log2(F.n)
    incident = [[] for _ in range(F.n)]
    for idx, e in enumerate(F.edges):
        for v in bits(e):
            incident[v].append(idx)
    deg = [len(lst) for lst in incident]
    alive_edge = [True] * len(F)
    alive = set(range(F.n))
    m_cur = len(F)
    removed = []
    while len(alive) > 1:
        bound = m_cur / (2 * len(alive) * logn)
        v = min(alive, key=lambda u: (deg[u], u))
        if deg[v] >= bound:
            break
        alive.remove(v)
        removed.append(v)
        for idx in incident[v]:
            if alive_edge[idx]:
                alive_edge[idx] = False
                m_cur -= 1
                for u in bits(F.edges[idx]):
                    deg[u] -= 1
    kept = tuple(sorted(alive))
    positions = {v: j for j, v in enumerate(kept)}
    masks = []
    for idx, e in enumerate(F.edges):
        if alive_edge[idx]:
            masks.append(sum(1 << positions[v] for v in bits(e)))
    sub = Hypergraph.from_masks(len(kept), masks)
    return RegularizationResult(sub, kept, tuple(removed), m_cur / (2 * len(kept) * logn))


def heavy_vertices(F, i, wp_value=None):
    """Vertices of degree at least ``|F| / 2n``.

    Hypothesis ``wp(F, i) <= |F|/2`` is checked (pass ``wp_value`` to skip
    the exhaustive computation); under it more than ``i`` vertices qualify.
    """
    n = F.n
    if not 0 < i < n:
        raise InvalidArgument(f"need 0 < i < n, got i={i}, n={n}")
    if wp_value is None:
        wp_value = wp(F, i)
    if 2 * wp_value > len(F):
        raise ContractError("wp(F, i) exceeds |F|/2", wp=wp_value, edges=len(F), i=i)
    return [v for v, d in enumerate(F.degrees()) if 2 * n * d >= len(F)]


@dataclass(frozen=True)
class HeavyLinkFamily:
    tuples: list
    threshold: float
    level_counts: list = field(default_factory=list)


def heavy_tuples(F, s, i, wp_value=None):
    """``s``-tuples ``U`` (repetition allowed) with ``|F(U)| >= |F| / (2n)^s``.

    Built level by level: each heavy ``(j-1)``-tuple is extended by every
    vertex whose degree inside ``F^U`` reaches ``|F| / (2n)^j``.  Under the
    hypothesis ``wp(F, i) <= |F| / (2^s n^(s-1))`` at least ``i^s`` tuples
    come back.  Output is sorted lexicographically.
    """
    n, m = F.n, len(F)
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    if s == 0:
        return HeavyLinkFamily([()], float(m), [1])
    if not 0 < i < n:
        raise InvalidArgument(f"need 0 < i < n, got i={i}, n={n}")
    if wp_value is None:
        wp_value = wp(F, i)
    if wp_value * (2 ** s) * n ** (s - 1) > m:
        raise ContractError("wp(F, i) exceeds |F| / (2^s n^(s-1))", wp=wp_value, edges=m, s=s, i=i)
    level = [((), 0, F.edges)]
    counts = []
    for j in range(1, s + 1):
        scale = (2 * n) ** j
        nxt = []
        for U, umask, edges in level:
            deg = [0] * n
            for e in edges:
                for v in bits(e):
                    deg[v] += 1
            for v in range(n):
                if deg[v] * scale >= m:
                    vm = umask | (1 << v)
                    nxt.append((U + (v,), vm, [e for e in edges if e >> v & 1]))
        level = nxt
        counts.append(len(level))
    tuples = sorted(U for U, _, _ in level)
    return HeavyLinkFamily(tuples, m / (2 * n) ** s, counts)


def _surjections(t, d):
    return sum((-1) ** j * comb(d, j) * (d - j) ** t for j in range(d + 1))


def collect_link_shadow_lower(F, t, i):
    """``i^-t * sum_{U in V^t} C(x_U, i - |U|)`` with ``|F(U)| = C(x_U, k - |U|)``.

    Tuples sharing a distinct vertex set contribute equally, so each
    ``d``-set is weighted by the number of ``t``-tuples onto it.  Empty links
    contribute nothing.  With ``t = 0`` this is ``C(y, i)``, ``|F| = C(y, k)``.
    """
    k = F.uniformity
    if k is None:
        if len(F):
            raise InvalidArgument("F must be uniform")
        return 0.0
    if not 0 <= t <= i <= k:
        raise InvalidArgument(f"need 0 <= t <= i <= k, got t={t}, i={i}, k={k}")
    total = 0.0
    for d in range(0, min(t, F.n) + 1):
        weight = _surjections(t, d) if t else 1
        if weight == 0:
            continue
        for umask in colex_subsets(F.n, d):
            size = sum(1 for e in F.edges if e & umask == umask)
            if size == 0:
                continue
            if k - d == 0:
                term = 1.0
            else:
                x_u = invert_binomial(size, k - d)
                sign, lg = log2_binom_real(x_u, i - d)
                term = max(sign, 0) * 2.0 ** lg
            total += weight * term
    return total / (i ** t if t else 1)


def _ceil(v):
    # guards r values such as 2.0000000000000004 coming out of log ratios
    return ceil(round(v, 9))


def _to_float(q):
    try:
        return float(q)
    except OverflowError:
        return math.inf


def _log2_pow(base, exponent):
    return exponent * log2(base)


@dataclass(frozen=True)
class SparseKKParams:
    """Constants of the sparse Kruskal-Katona bound for one hypergraph."""

    n: int
    r: float
    alpha: float
    k: int
    x: float
    s: int
    t: int
    c: float
    C_err: float
    F_size: int
    wp_value: int
    log2_c: float
    log2_C_err: float

    @property
    def sigma(self):
        return self.c * self.wp_value

    def log2_C_intro(self):
        return _log2_pow(8 * self.k / self.alpha, _ceil(5 * self.r)) + log2(log2(self.n))

    def log2_C_prime(self, gamma):
        return _log2_pow(8 * self.k / (self.alpha * gamma), _ceil(5 * self.r)) + log2(log2(self.n))

    def log2_C_double_prime(self):
        return _log2_pow(8 * self.r * log2(self.n) / self.alpha ** 2, _ceil(6 * self.r))

    def certified(self, wp_value=None):
        """Whether ``wp <= min{C(x, k-t) n, |F|/2}`` holds for these constants."""
        wp_value = self.wp_value if wp_value is None else wp_value
        sign, lg = log2_binom_real(self.x, self.k - self.t)
        cap = sign * 2.0 ** lg * self.n if sign > 0 else 0.0
        return wp_value <= cap * (1 + 1e-12) and 2 * wp_value <= self.F_size


def certified_x(wp_value, n, degree):
    """Smallest ``x`` with ``C(x, degree) * n >= wp_value`` (largest bound)."""
    if degree <= 0:
        return float(max(degree, 0))
    return invert_binomial(wp_value / n, degree)


def sparse_kk_params(n, alpha, k, wp_value, F_size, r=None, x=None):
    """Compute ``c``, ``s``, ``t = s + 1`` and ``C`` for the sparse KK bound.

    ``s`` is the smallest integer with ``|F| / (2n)^s < c * wp``; the
    closed form ``ceil(log(|F|/sigma) / log 2n)`` is evaluated first and
    bumped when it lands exactly on the boundary.  ``x`` defaults to the
    smallest value certifying ``wp <= C(x, k-t) n``.
    """
    if n < 2 or k < 1 or F_size < 1:
        raise InvalidArgument(f"need n >= 2, k >= 1, |F| >= 1; got n={n}, k={k}, |F|={F_size}")
    if not 0 < alpha <= 1:
        raise InvalidArgument(f"alpha must lie in (0, 1], got {alpha}")
    if wp_value < 1:
        raise InvalidArgument("wp must be at least 1")
    if r is None:
        r = math.log(F_size) / math.log(n)
    a = Fraction(alpha)
    c_exact = Fraction(8 * k) ** _ceil(2 * r) / a ** _ceil(r)
    log2_c = _log2_pow(8 * k, _ceil(2 * r)) - _log2_pow(alpha, _ceil(r))
    log2_C_err = _log2_pow(8 * k / alpha, _ceil(4 * r)) + log2(log2(n))
    log2_sigma = log2_c + log2(wp_value)
    sigma = c_exact * wp_value
    # smallest s with |F| < sigma (2n)^s, exact in rationals
    s = max(0, ceil((log2(F_size) - log2_sigma) / log2(2 * n)) - 1)
    while F_size >= sigma * (2 * n) ** s:
        s += 1
    while s > 0 and F_size < sigma * (2 * n) ** (s - 1):
        s -= 1
    t = s + 1
    diagnostics = dict(s=s, t=t, r=r, k=k, log2_sigma=log2_sigma, F_size=F_size, wp=wp_value)
    if not t <= _ceil(r) <= k:
        raise ContractError("relations t <= ceil(r) <= k fail", **diagnostics)
    if x is None:
        x = certified_x(wp_value, n, k - t)
    c = _to_float(c_exact)
    C_err = _to_float(Fraction(8 * k) ** _ceil(4 * r) / a ** _ceil(4 * r)) * log2(n)
    return SparseKKParams(n, r, alpha, k, float(x), s, t, c, C_err, F_size, wp_value, log2_c, log2_C_err)


def _log2_ratio(x, top, bottom):
    s1, l1 = log2_binom_real(x, top)
    s2, l2 = log2_binom_real(x, bottom)
    if s1 <= 0 or s2 <= 0:
        return -math.inf, True
    return l1 - l2, False


def sparse_kk_bound(params, i, variant="sharp"):
    """Guaranteed ``|shadow(F, i)|``.

    ``variant="sharp"``: ``(1/C) C(x, i-t)/C(x, k-t) |F|`` for ``t <= i <= k``.
    ``variant="intro"``: ``(1/C) C(x, i)/C(x, k) |F|`` with the larger
    constant ``(8k/alpha)^ceil(5r) log n``, ``x >= 2k`` and ``r + 1 <= i <= k``.
    Non-positive binomials (``x`` below the degree) clamp the bound to 0.
    """
    p = params
    if not p.t <= i <= p.k:
        raise InvalidArgument(f"i={i} outside [t, k] = [{p.t}, {p.k}]")
    if variant == "sharp":
        lr, clamped = _log2_ratio(p.x, i - p.t, p.k - p.t)
        log2_C = p.log2_C_err
    elif variant == "intro":
        if i < p.r + 1:
            raise InvalidArgument(f"intro variant needs i >= r + 1, got i={i}, r={p.r}")
        x = max(2.0 * p.k, certified_x(p.wp_value, p.n, p.k - _ceil(p.r)))
        lr, clamped = _log2_ratio(x, i, p.k)
        log2_C = p.log2_C_intro()
    else:
        raise InvalidArgument(f"unknown variant {variant!r}")
    return _bound_from_log2(log2(p.F_size) + lr - log2_C, clamped)


def expected_trace_lower(params, B, gamma):
    """Lower bound on the mean trace over uniform ``gamma n``-subsets:
    ``|F| / (C' B^(1 - log(1+gamma)))``, ``C' = (8k/(alpha gamma))^ceil(5r) log n``."""
    p = params
    if not 0 < gamma <= 1:
        raise InvalidArgument(f"gamma must lie in (0, 1], got {gamma}")
    if B <= 0:
        raise InvalidArgument("B must be positive")
    if p.k * p.k > gamma * p.n:
        raise ContractError("k > sqrt(gamma n)", k=p.k, gamma=gamma, n=p.n)
    if p.wp_value > B * p.n or 2 * p.wp_value > p.F_size:
        raise ContractError("wp exceeds min{B n, |F|/2}", wp=p.wp_value, B=B, n=p.n, F_size=p.F_size)
    exponent = 1.0 - log2(1.0 + gamma)
    return _bound_from_log2(log2(p.F_size) - exponent * log2(B) - p.log2_C_prime(gamma))


class TraceLowerBound(NamedTuple):
    value: float
    log2_value: float
    mu: float
    log_loss: float
    vacuous: bool


def trace_tau_lower(n, r, alpha):
    """``n^mu / C''`` with ``C'' = (8 r log n / alpha^2)^ceil(6r)``.

    ``log_loss`` is ``log_n C''``, the exponent given up at this ``n``.
    """
    if n < 2:
        raise InvalidArgument("n must be at least 2")
    m = mu(r, alpha)
    log2_cpp = _log2_pow(8 * r * log2(n) / alpha ** 2, _ceil(6 * r))
    log2_value = m * log2(n) - log2_cpp
    b = _bound_from_log2(log2_value)
    return TraceLowerBound(b.value, log2_value, m, log2_cpp / log2(n), b.vacuous)
