"""Randomized extremal constructions with event checking and retries.

Two families are built from ``l`` uniform random ``x``-subsets ``S_j`` of
``range(n)``:

* the sparse Kruskal-Katona extremal k-graph, the union of the complete
  k-graphs on the ``S_j`` (event E1: pairwise ``|S_j & S_j'| < 3r``);
* the trace upper-bound family, the union of the power sets ``2^{S_j}``
  (event E1: at least ``n^r`` members).

Failed events trigger a rebuild from a fresh derived seed.
"""
import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import NamedTuple

import numpy as np
from scipy import sparse

from .binomials import mu
from .decompose import trace_tau_lower
from .errors import CapacityError, ConstructionFailure, InvalidArgument
from .hypergraph import Hypergraph, shadow_size
from .rng import DEFAULT_SEED, derive_seed, map_ordered, numpy_rng, sample_subset
from .sampling import SubsetUnion, sample_windows

EXACT_WP_MAX_N = 24
Z99 = 2.5758293035489004
CHUNK = 1024


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    r: float
    alpha: float
    k: int = None
    x: int = None
    ell: int = None
    seed: int = DEFAULT_SEED
    max_retries: int = 16
    relaxed: bool = False

    @property
    def window(self):
        return math.floor(self.alpha * self.n)

    def target_size(self):
        """``ceil(n^r)``, the edge count the constructions aim for."""
        return _ceil_pow(self.n, self.r)

    def as_dict(self):
        return {
            "n": self.n, "r": self.r, "alpha": self.alpha, "k": self.k, "x": self.x,
            "ell": self.ell, "seed": self.seed, "max_retries": self.max_retries,
            "relaxed": self.relaxed,
        }


def _ceil_pow(n, r):
    v = n ** r
    # n^r for integral-looking r should not be bumped by float noise
    return math.ceil(round(v, 6))


@dataclass
class ConstructionReport:
    mode: str
    spec: ConstructionSpec
    union: SubsetUnion
    untrimmed_size: int
    e1_holds: bool
    max_pairwise_intersection: int
    intersection_histogram: dict
    retries_used: int
    attempt_seed: int
    stats: dict = field(default_factory=dict)
    _family: Hypergraph = None

    @property
    def size(self):
        return self.union.size

    @property
    def family(self):
        if self._family is None:
            self._family = self.union.to_hypergraph()
        return self._family

    def vertex_lists(self):
        return self.union.iter_vertex_lists()

    def as_dict(self):
        return {
            "mode": self.mode,
            "spec": self.spec.as_dict(),
            "size": self.size,
            "untrimmed_size": self.untrimmed_size,
            "e1_holds": self.e1_holds,
            "max_pairwise_intersection": self.max_pairwise_intersection,
            "intersection_histogram": {str(k): v for k, v in sorted(self.intersection_histogram.items())},
            "retries_used": self.retries_used,
            "attempt_seed": self.attempt_seed,
            "stats": self.stats,
        }


def draw_bases(n, x, ell, seed, threads=None):
    """``ell`` uniform ``x``-subsets; base ``j`` uses ``derive_seed(seed, j)``."""
    if not 0 <= x <= n:
        raise InvalidArgument(f"need 0 <= x <= n, got x={x}, n={n}")
    chunks = [range(a, min(ell, a + CHUNK)) for a in range(0, ell, CHUNK)]
    parts = map_ordered(
        lambda js: [sample_subset(n, x, derive_seed(seed, j)) for j in js], chunks, threads
    )
    return [b for part in parts for b in part]


def pairwise_intersections(n, bases):
    """``(max, histogram)`` of ``|S_j & S_j'|`` over pairs ``j < j'``.

    Zero counts are obtained by subtraction, so the histogram sums to ``C(l, 2)``.
    """
    ell = len(bases)
    if ell < 2:
        return 0, {}
    rows = np.repeat(np.arange(ell), [len(b) for b in bases])
    cols = np.concatenate([np.asarray(b, dtype=np.int64) for b in bases])
    M = sparse.csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(ell, n))
    MT = M.T.tocsc()
    counts = {}
    for a in range(0, ell, CHUNK):
        block = (M[a:a + CHUNK] @ MT).tocoo()
        keep = block.col > block.row + a
        vals, freq = np.unique(block.data[keep], return_counts=True)
        for v, f in zip(vals.tolist(), freq.tolist()):
            if v:
                counts[v] = counts.get(v, 0) + f
    nonzero = sum(counts.values())
    counts[0] = ell * (ell - 1) // 2 - nonzero
    top = max((v for v, f in counts.items() if f), default=0)
    return top, counts


def _check_sparse_kk_regime(spec):
    n, r, k, x, a = spec.n, spec.r, spec.k, spec.x, spec.alpha
    if k is None or x is None:
        raise InvalidArgument("sparse-kk construction needs k and x")
    if not (1 <= k <= x <= n):
        raise InvalidArgument(f"need 1 <= k <= x <= n, got k={k}, x={x}, n={n}")
    if not 0 < a <= 1:
        raise InvalidArgument(f"alpha must lie in (0, 1], got {a}")
    if spec.relaxed:
        return
    problems = []
    if not 3 * r <= k:
        problems.append("3r <= k")
    if not x <= n ** (1 / 6):
        problems.append("x <= n^(1/6)")
    mid = a ** k * n ** r
    if not n <= mid <= math.comb(x, k) * n:
        problems.append("n <= alpha^k n^r <= C(x,k) n")
    if spec.ell is not None and not n ** r / math.comb(x, k) <= spec.ell <= n / a ** k:
        problems.append("n^r/C(x,k) <= ell <= n/alpha^k")
    if problems:
        raise InvalidArgument("outside the proven regime (use relaxed): " + ", ".join(problems))


def sparse_kk_ell(spec):
    return spec.ell if spec.ell is not None else max(1, math.ceil(round(spec.n ** spec.r / math.comb(spec.x, spec.k), 9)))


def build_sparse_kk_extremal(spec, threads=None):
    """Union of complete k-graphs on random ``x``-sets, trimmed to ``ceil(n^r)``."""
    _check_sparse_kk_regime(spec)
    ell = sparse_kk_ell(spec)
    limit = 3 * spec.r
    hist_total = {}
    for attempt in range(spec.max_retries + 1):
        aseed = derive_seed(spec.seed, attempt)
        bases = draw_bases(spec.n, spec.x, ell, aseed, threads)
        top, hist = pairwise_intersections(spec.n, bases)
        for v, f in hist.items():
            hist_total[v] = hist_total.get(v, 0) + f
        if top < limit:
            union = SubsetUnion.build(spec.n, bases, sizes={spec.k})
            untrimmed = union.size
            target = spec.target_size()
            if untrimmed >= target:
                union = union.trim(target)
            return ConstructionReport(
                "sparse-kk", replace(spec, ell=ell), union, untrimmed, True, top, hist, attempt, aseed,
                {"ell": ell, "relaxed": spec.relaxed, "target_size": target},
            )
    raise ConstructionFailure(
        f"E1 failed in all {spec.max_retries + 1} attempts", hist_total, spec.max_retries + 1
    )


class ShadowCheck(NamedTuple):
    shadow_size: int
    bound: float
    holds: bool


def verify_shadow_upper(report, spec, i):
    """Exact ``|shadow(F, i)|`` against ``l * C(x, i)``."""
    if not 0 <= i <= spec.k:
        raise InvalidArgument(f"need 0 <= i <= k, got i={i}")
    ell = report.stats.get("ell", sparse_kk_ell(spec))
    size = shadow_size(report.family, i)
    bound = ell * math.comb(spec.x, i)
    return ShadowCheck(size, float(bound), size <= bound)


class SampleStats(NamedTuple):
    kind: str
    trials: int
    max: int
    mean: float
    ci_low: float
    ci_high: float
    bound: float
    holds: bool

    def as_dict(self):
        return self._asdict()


def _summary(values, kind, bound):
    values = np.asarray(values, dtype=np.float64)
    t = len(values)
    mean = float(values.mean()) if t else 0.0
    se = float(values.std(ddof=1) / math.sqrt(t)) if t > 1 else 0.0
    top = int(values.max()) if t else 0
    return SampleStats(kind, t, top, mean, mean - Z99 * se, mean + Z99 * se, float(bound), top <= bound)


def _all_windows(n, q, batch=4096):
    combos = combinations(range(n), q)
    while True:
        chunk = [c for _, c in zip(range(batch), combos)]
        if not chunk:
            return
        member = np.zeros((len(chunk), n), dtype=bool)
        rows = np.repeat(np.arange(len(chunk)), q)
        member[rows, np.asarray(chunk, dtype=np.int64).reshape(-1)] = True
        yield member


def verify_wp_upper(report, spec, mode="sample", trials=10_000, seed=None, threads=None):
    """wp(F, floor(alpha n)) against ``6 C(x, k) n``.

    ``exact`` enumerates every window (``n <= 24``); ``sample`` reports the
    largest induced count seen, which is only a lower bound on wp.
    """
    q = spec.window
    bound = 6 * math.comb(spec.x, spec.k) * spec.n
    if mode == "exact":
        if spec.n > EXACT_WP_MAX_N:
            raise CapacityError(f"exact wp needs n <= {EXACT_WP_MAX_N}, got {spec.n}")
        vals = np.concatenate([report.union.window_counts(m) for m in _all_windows(spec.n, q)])
        return _summary(vals, "exact", bound)
    if mode != "sample":
        raise InvalidArgument(f"mode must be exact or sample, got {mode!r}")
    seed = report.attempt_seed if seed is None else seed
    vals = sample_windows(spec.n, q, trials, seed, report.union.window_counts, tag=1, threads=threads)
    return _summary(vals, "sampled-lower-bound", bound)


def trace_ub_parameters(n, r, alpha):
    """``(mu, x, ell)`` with ``x = floor((mu-1) log n)`` and ``ell = ceil(2 n^r / 2^x)``."""
    m = mu(r, alpha)
    x = math.floor((m - 1) * math.log2(n) + 1e-9)
    ell = math.ceil(round(2 * n ** r / 2 ** x, 9))
    return m, x, ell


def build_trace_ub_family(spec, threads=None):
    """Union of the power sets of ``l`` random ``x``-subsets."""
    n, r = spec.n, spec.r
    if n < 2:
        raise InvalidArgument("n must be at least 2")
    if not spec.relaxed and r > math.sqrt(n) / math.log2(n):
        raise InvalidArgument("r exceeds sqrt(n)/log n (use relaxed)")
    m, x0, ell0 = trace_ub_parameters(n, r, spec.alpha)
    x = spec.x if spec.x is not None else x0
    ell = spec.ell if spec.ell is not None else ell0
    if x < 1:
        raise InvalidArgument(f"x = {x} < 1 after flooring")
    target = n ** r
    attempts_sizes = {}
    for attempt in range(spec.max_retries + 1):
        aseed = derive_seed(spec.seed, attempt)
        bases = draw_bases(n, x, ell, aseed, threads)
        union = SubsetUnion.build(n, bases)
        attempts_sizes[attempt] = union.size
        if union.size >= target * (1 - 1e-12):
            top, hist = pairwise_intersections(n, bases)
            return ConstructionReport(
                "trace-ub", replace(spec, x=x, ell=ell), union, union.size, True, top, hist, attempt, aseed,
                {"mu": m, "x": x, "ell": ell, "relaxed": spec.relaxed},
            )
    raise ConstructionFailure(
        f"|F| < n^r in all {spec.max_retries + 1} attempts", attempts_sizes, spec.max_retries + 1
    )


def estimate_trace_ub(report, spec, trials=10_000, seed=None, threads=None):
    """Sampled trace and ``X = sum_j 2^{|S_j & I|}`` on ``floor(alpha n)``-windows."""
    union = report.union
    n, q = spec.n, spec.window
    m = report.stats["mu"]
    n_mu = n ** m

    def stat(member):
        counts = union.window_counts(member)
        X = np.exp2(union.intersections(member)).sum(axis=1)
        return np.stack([counts.astype(np.float64), X], axis=1)

    seed = report.attempt_seed if seed is None else seed
    vals = sample_windows(n, q, trials, seed, stat, tag=2, threads=threads)
    vals = vals.reshape(-1, 2)
    trace = _summary(vals[:, 0], "sampled-lower-bound", 8 * n_mu)
    X = _summary(vals[:, 1], "sampled", 4 * n_mu)
    lower = trace_tau_lower(n, spec.r, spec.alpha).value
    return {
        "trace": trace.as_dict(),
        "X": X.as_dict(),
        "x_mean_within_ci": X.ci_low <= X.bound,
        "trace_max_within_bound": trace.max <= trace.bound,
        "n_mu": n_mu,
        "lower_bound": lower,
        "sandwich_lower_holds": lower <= trace.max,
    }


class TailCheck(NamedTuple):
    empirical: float
    bound: float
    holds: bool


def chernoff_tail_check(trials, dist, x_param, seed=DEFAULT_SEED):
    """Monte Carlo ``Pr(X >= 6x)`` against ``exp(-x)``.

    ``dist`` is ``(kind, count, p)`` with kind ``bernoulli`` (success
    probability ``p``), ``uniform`` (on [0, 1], ``p`` ignored) or
    ``constant`` (every variable equals ``p``).
    """
    kind, count, p = dist
    if trials < 1 or count < 0:
        raise InvalidArgument("trials must be positive and count non-negative")
    if kind in ("bernoulli", "constant") and not 0 <= p <= 1:
        raise InvalidArgument(f"variables must lie in [0, 1], got p={p}")
    means = {"bernoulli": p, "uniform": 0.5, "constant": p}
    if kind not in means:
        raise InvalidArgument(f"unknown distribution {kind!r}")
    mean = count * means[kind]
    if x_param < mean / 3 - 1e-12:
        raise InvalidArgument(f"x = {x_param} is below mean/3 = {mean / 3}")
    rng = numpy_rng(seed, 3)
    if kind == "bernoulli":
        X = rng.binomial(count, p, size=trials).astype(np.float64)
    elif kind == "uniform":
        X = rng.random((trials, count)).sum(axis=1) if count else np.zeros(trials)
    else:
        X = np.full(trials, count * p)
    empirical = float(np.mean(X >= 6 * x_param))
    bound = math.exp(-x_param)
    sigma = math.sqrt(bound * (1 - bound) / trials)
    return TailCheck(empirical, bound, empirical <= bound + 3 * sigma)
