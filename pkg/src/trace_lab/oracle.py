"""Brute-force ground truth and the property-suite harness.

The ``*_exact`` functions deliberately avoid every helper of the bitmask
core: edges are frozensets and windows come from ``itertools``.  Agreement
between the two implementations is itself one of the suites.
"""
import math
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from . import binomials as bn
from . import construct as cs
from . import decompose as dc
from . import hypergraph as hg
from .edgelist import format_edge_list
from .errors import CapacityError, ContractError, InvalidArgument, PartialResult
from .rng import derive_seed, numpy_rng

ORACLE_MAX_N = 20


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 14
    max_m: int = 1 << 16
    max_families: int = 10 ** 8
    time_limit: float = 600.0

    @property
    def empty(self):
        return self.max_n <= 0 or self.max_m <= 0 or self.max_families <= 0 or self.time_limit <= 0


@dataclass
class VerificationReport:
    property: str
    params: dict
    expected: str
    observed: dict
    passed: bool
    witness: str = None

    def as_dict(self):
        out = {
            "property": self.property,
            "params": self.params,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# naive reimplementations ---------------------------------------------------

def _edge_sets(F):
    if isinstance(F, hg.Hypergraph):
        return F.n, [frozenset(e) for e in F.edge_lists()]
    n, edges = F
    return n, [frozenset(e) for e in edges]


def _check_n(n):
    if n > ORACLE_MAX_N:
        raise CapacityError(f"oracle handles n <= {ORACLE_MAX_N}, got {n}")


def trace_onto_exact(F, I):
    _, edges = _edge_sets(F)
    I = frozenset(I)
    return {e & I for e in edges}


def trace_exact(F, k):
    n, edges = _edge_sets(F)
    _check_n(n)
    best = 0
    for I in combinations(range(n), k):
        I = frozenset(I)
        best = max(best, len({e & I for e in edges}))
    return best


def shadow_exact(F, i):
    n, edges = _edge_sets(F)
    _check_n(n)
    out = set()
    for e in edges:
        for c in combinations(sorted(e), i):
            out.add(frozenset(c))
    return len(out)


def wp_exact(F, i):
    n, edges = _edge_sets(F)
    _check_n(n)
    best = 0
    for I in combinations(range(n), i):
        I = frozenset(I)
        best = max(best, sum(1 for e in edges if e <= I))
    return best


def vc_exact(F):
    n, edges = _edge_sets(F)
    _check_n(n)
    if not edges:
        return -1
    best = 0
    for k in range(1, n + 1):
        if any(len({e & frozenset(I) for e in edges}) == 2 ** k for I in combinations(range(n), k)):
            best = k
        else:
            break
    return best


# exact tau -----------------------------------------------------------------

def tau_exact(n, m, k, budget=None):
    """min over m-edge families on n vertices of the largest k-window trace.

    Depth-first over increasing index tuples of the ``2^n`` sets.  A prefix
    is abandoned when its trace maximum already reaches the best family
    found (adding sets never shrinks a trace) or when it is not the
    lexicographically least image of itself under vertex permutations (a
    canonical family has only canonical prefixes).
    """
    budget = budget or OracleBudget()
    if n < 0 or not 0 <= k <= n:
        raise InvalidArgument(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 0 <= m <= 2 ** n:
        raise InvalidArgument(f"need 0 <= m <= 2^n, got m={m}")
    if n > budget.max_n or m > budget.max_m:
        raise PartialResult("instance exceeds the oracle budget", None, 0)
    if m == 0:
        return 0
    sets = sorted((frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)),
                  key=lambda s: (len(s), sorted(s)))
    index = {s: j for j, s in enumerate(sets)}
    windows = [frozenset(c) for c in combinations(range(n), k)]
    proj = [[index[s & w] for s in sets] for w in windows]
    images = [[index[frozenset(p[v] for v in s)] for s in sets] for p in permutations(range(n))][1:]
    total = len(sets)
    counts = [dict() for _ in windows]
    state = {"best": min(m, 2 ** k) + 1, "nodes": 0}
    deadline = time.monotonic() + budget.time_limit
    chosen = []

    def canonical():
        cur = chosen
        for img in images:
            if sorted(img[c] for c in cur) < cur:
                return False
        return True

    def dfs(start, current_max):
        if len(chosen) == m:
            state["best"] = current_max
            return
        for j in range(start, total - (m - len(chosen)) + 1):
            state["nodes"] += 1
            if state["nodes"] > budget.max_families or (
                state["nodes"] % 1024 == 0 and time.monotonic() > deadline
            ):
                raise _Abort
            chosen.append(j)
            if canonical():
                top = current_max
                for w in range(len(windows)):
                    c = counts[w]
                    p = proj[w][j]
                    c[p] = c.get(p, 0) + 1
                    top = max(top, len(c))
                if top < state["best"]:
                    dfs(j + 1, top)
                for w in range(len(windows)):
                    c = counts[w]
                    p = proj[w][j]
                    c[p] -= 1
                    if not c[p]:
                        del c[p]
            chosen.pop()

    try:
        dfs(0, 0)
    except _Abort:
        best = state["best"] if state["best"] <= min(m, 2 ** k) else None
        raise PartialResult("oracle budget exhausted", best, state["nodes"]) from None
    return state["best"]


class _Abort(Exception):
    pass


# property suites -------------------------------------------------------------

class SuiteContext:
    def __init__(self, budget, seed, tag):
        self.budget = budget
        self.rng = numpy_rng(seed, tag)
        self.seed = derive_seed(seed, tag)
        self.deadline = time.monotonic() + budget.time_limit

    def out_of_time(self):
        return time.monotonic() > self.deadline

    def n_cap(self, default):
        return min(default, self.budget.max_n)


class _Tally:
    """Aggregates one sweep into a single report, keeping the first failure."""

    def __init__(self, prop, params, expected):
        self.prop, self.params, self.expected = prop, dict(params), expected
        self.checked = 0
        self.violations = 0
        self.witness = None
        self.first = None
        self.extra = {}
        self.truncated = False

    def add(self, ok, witness=None, detail=None):
        self.checked += 1
        if not ok:
            self.violations += 1
            if self.witness is None:
                self.witness = witness if witness is not None else "(no instance)"
                self.first = detail

    def report(self):
        observed = {"checked": self.checked, "violations": self.violations, **self.extra}
        if self.first is not None:
            observed["first_failure"] = self.first
        params = dict(self.params)
        if self.truncated:
            params["truncated"] = True
        return VerificationReport(self.prop, params, self.expected, observed,
                                  self.violations == 0, self.witness)


def _rand_kgraph(rng, n, k, m=None, seed=None):
    total = math.comb(n, k)
    if m is None:
        m = int(rng.integers(1, total + 1))
    return hg.random_hypergraph(n, m, int(rng.integers(0, 2 ** 63)) if seed is None else seed, k=k)


def check_sauer(ctx, count=100, max_n=12, max_k=4):
    top_n = ctx.n_cap(max_n)
    t = _Tally("sauer-perles-shelah", {"count": count, "max_n": top_n, "max_k": max_k},
               "trace_value(F, k) == 2^k whenever m > sum_{i<k} C(n, i)")
    for _ in range(count):
        if ctx.out_of_time():
            t.truncated = True
            break
        k = int(ctx.rng.integers(1, max_k + 1))
        if k > top_n:
            continue
        n = int(ctx.rng.integers(k, top_n + 1))
        lo = sum(math.comb(n, i) for i in range(k)) + 1
        if lo > 2 ** n:
            continue
        m = int(ctx.rng.integers(lo, min(2 ** n, lo + 3 * n) + 1))
        F = hg.random_hypergraph(n, m, int(ctx.rng.integers(0, 2 ** 63)))
        val = hg.trace_value(F, k)
        t.add(val == 2 ** k, format_edge_list(F), {"n": n, "m": m, "k": k, "trace": val})
    return t.report()


def _kk_instance(t, F, k):
    y = bn.invert_binomial(len(F), k)
    for i in range(k + 1):
        size = hg.shadow_size(F, i)
        bound = bn.binom_real(y, i)
        t.add(size >= bound - 1e-9, format_edge_list(F),
              {"k": k, "i": i, "shadow": size, "bound": bound})


def check_kruskal_katona(ctx, random_count=200, exhaustive_n=5, random_n=14):
    top = ctx.n_cap(exhaustive_n)
    t = _Tally("kruskal-katona", {"exhaustive_n": top, "random_count": random_count,
                                  "random_n": ctx.n_cap(random_n)},
               "|shadow(F, i)| >= C(y, i) - 1e-9 with C(y, k) = |F|")
    for n in range(1, top + 1):
        for k in range(1, n + 1):
            ksets = list(hg.colex_subsets(n, k))
            for pick in range(1, 2 ** len(ksets)):
                F = hg.Hypergraph.from_masks(n, [e for j, e in enumerate(ksets) if pick >> j & 1], k)
                _kk_instance(t, F, k)
    rn = ctx.n_cap(random_n)
    for _ in range(random_count if rn >= 2 else 0):
        if ctx.out_of_time():
            t.truncated = True
            break
        n = int(ctx.rng.integers(2, rn + 1))
        k = int(ctx.rng.integers(1, min(n, 6) + 1))
        total = math.comb(n, k)
        F = _rand_kgraph(ctx.rng, n, k, int(ctx.rng.integers(1, min(total, 400) + 1)))
        _kk_instance(t, F, k)
    return t.report()


def check_regularization(ctx, count=200, max_n=14):
    top = ctx.n_cap(max_n)
    t = _Tally("regularization", {"count": count, "max_n": top},
               "min degree >= |E'|/(2|V'| log n), |E'|/|V'| >= |E|/|V|, |E'| > |E|/2")
    for _ in range(count if top >= 2 else 0):
        n = int(ctx.rng.integers(2, top + 1))
        k = int(ctx.rng.integers(1, min(n, 4) + 1))
        F = _rand_kgraph(ctx.rng, n, k, int(ctx.rng.integers(1, min(math.comb(n, k), 60) + 1)))
        res = dc.regularize(F)
        g = res.guarantees(F)
        t.add(all(g.values()), format_edge_list(F), {"guarantees": g})
    return t.report()


def check_heavy_vertices(ctx, count=150, max_n=12):
    top = ctx.n_cap(max_n)
    t = _Tally("heavy-vertices", {"count": count, "max_n": top},
               "more than i vertices of degree >= |F|/2n whenever wp(F, i) <= |F|/2")
    applicable = 0
    for _ in range(count if top >= 3 else 0):
        n = int(ctx.rng.integers(3, top + 1))
        k = int(ctx.rng.integers(1, min(n - 1, 4) + 1))
        F = _rand_kgraph(ctx.rng, n, k)
        for i in range(1, n):
            w = hg.wp(F, i)
            if 2 * w > len(F):
                continue
            applicable += 1
            heavy = dc.heavy_vertices(F, i, wp_value=w)
            t.add(len(heavy) > i, format_edge_list(F), {"i": i, "wp": w, "heavy": len(heavy)})
    t.extra["applicable"] = applicable
    return t.report()


def check_heavy_tuples(ctx, count=60, max_n=14):
    top = ctx.n_cap(max_n)
    t = _Tally("heavy-tuples", {"count": count, "max_n": top, "k": 3, "max_s": 2},
               "at least i^s tuples, each with |F(U)| >= |F|/(2n)^s")
    applicable = 0
    for _ in range(count if top >= 4 else 0):
        n = int(ctx.rng.integers(4, top + 1))
        total = math.comb(n, 3)
        F = _rand_kgraph(ctx.rng, n, 3, int(ctx.rng.integers(max(1, total // 3), total + 1)))
        for s in (1, 2):
            for i in range(1, n):
                w = hg.wp(F, i)
                if w * 2 ** s * n ** (s - 1) > len(F):
                    continue
                applicable += 1
                fam = dc.heavy_tuples(F, s, i, wp_value=w)
                heavy_ok = all(hg.link_size(F, set(U)) >= fam.threshold for U in fam.tuples)
                t.add(len(fam.tuples) >= i ** s and heavy_ok, format_edge_list(F),
                      {"s": s, "i": i, "tuples": len(fam.tuples), "links_heavy": heavy_ok})
    t.extra["applicable"] = applicable
    return t.report()


def check_link_shadow(ctx, count=60, max_n=9):
    top = ctx.n_cap(max_n)
    t = _Tally("link-shadow", {"count": count, "max_n": top},
               "collect_link_shadow_lower(F, t, i) <= |shadow(F, i)|; t = 0 equals C(y, i)")
    for _ in range(count if top >= 2 else 0):
        n = int(ctx.rng.integers(2, top + 1))
        k = int(ctx.rng.integers(1, min(n, 4) + 1))
        F = _rand_kgraph(ctx.rng, n, k)
        y = bn.invert_binomial(len(F), k)
        for i in range(k + 1):
            size = hg.shadow_size(F, i)
            for tt in range(i + 1):
                b = dc.collect_link_shadow_lower(F, tt, i)
                ok = b <= size + 1e-9
                if tt == 0:
                    kk = bn.binom_real(y, i)
                    ok = ok and abs(b - kk) <= 1e-6 * max(1.0, abs(kk))
                t.add(ok, format_edge_list(F), {"t": tt, "i": i, "bound": b, "shadow": size})
    return t.report()


def check_sum_bound(ctx):
    t = _Tally("sum-binom-gamma", {"k": "1..10", "x": "k..30 step 0.5", "gamma": "0..1 step 0.1"},
               "sum_{i<=k} C(x,i) g^i >= (1/4) (sum_{i<=k} C(x,i))^log(1+g)")
    for k in range(1, 11):
        for x2 in range(2 * k, 61):
            for g10 in range(11):
                r = bn.sum_binom_gamma_lower(k, x2 / 2, g10 / 10)
                t.add(r.holds, None, {"k": k, "x": x2 / 2, "gamma": g10 / 10, "lhs": r.lhs, "rhs": r.rhs})
    return t.report()


def check_newton(ctx):
    t = _Tally("newton-partial-sum", {"x": "0.1..40 step 0.1"},
               "2^(x-1) < sum_{i<=floor x} C(x,i) <= 2^x")
    for j in range(1, 401):
        r = bn.newton_partial_sum_bounds(j / 10)
        t.add(r.holds, None, {"x": j / 10, **r._asdict()})
    return t.report()


def random_ratio_tuples(rng, count):
    """Random ``(x, y, k, i, delta)`` meeting the binomial-ratio hypothesis."""
    out = []
    while len(out) < count:
        k = int(rng.integers(1, 11))
        delta = int(rng.integers(0, k + 1))
        i = int(rng.integers(delta, k + 1))
        x = (k - delta) + float(rng.random()) * 30
        if k - delta == 0:
            continue
        y_max = bn.invert_binomial(bn.binom_real(x, k - delta), k)
        if y_max <= k:
            continue
        y = k + float(rng.random()) * (y_max - k)
        if bn.binom_exact(y, k) > bn.binom_exact(x, k - delta):
            continue
        out.append((x, y, k, i, delta))
    return out


def check_binom_ratio(ctx, count=2000):
    t = _Tally("binom-ratio", {"count": count},
               "C(y,i)/C(y,k) >= i^-delta C(x,i-delta)/C(x,k-delta)")
    for x, y, k, i, d in random_ratio_tuples(ctx.rng, count):
        r = bn.binom_ratio_lower(x, y, k, i, d)
        t.add(r.holds, None, {"x": x, "y": y, "k": k, "i": i, "delta": d, "lhs": r.lhs, "rhs": r.rhs})
    return t.report()


def check_exp_sandwich(ctx):
    t = _Tally("exp-sandwich", {"lower": "0..0.5 step 0.01", "upper": "-2..2 step 0.01"},
               "e^-2x <= 1 - x on [0, 1/2]; 1 - x <= e^-x everywhere")
    for j in range(51):
        t.add(bn.exp_sandwich(j / 100)[0] is True, None, {"x": j / 100, "side": "lower"})
    for j in range(-200, 201):
        t.add(bn.exp_sandwich(j / 100)[1], None, {"x": j / 100, "side": "upper"})
    return t.report()


def check_hypergeometric(ctx, max_n=400, max_x=20):
    t = _Tally("hypergeometric-domination", {"max_n": max_n, "max_x": max_x},
               "P[H = h] <= 2 P[B = h] for x <= sqrt(n)")
    worst = 0.0
    for n in range(1, max_n + 1):
        for x in range(1, min(max_x, math.isqrt(n)) + 1):
            viol, ratio = bn.hypergeom_domination_grid(n, x)
            worst = max(worst, ratio)
            t.add(not viol, None, {"n": n, "x": x, "violations": [list(v) for v in viol[:5]]})
    t.extra["max_ratio"] = worst
    return t.report()


def check_chernoff(ctx, trials=20000):
    t = _Tally("chernoff-tail", {"trials": trials}, "Pr(X >= 6x) <= exp(-x) + 3 sigma for x >= mean/3")
    cases = [(("bernoulli", 100, 0.5), 50.0), (("bernoulli", 100, 0.5), 50 / 3),
             (("bernoulli", 30, 0.1), 1.0), (("uniform", 20, 0.0), 10 / 3), (("constant", 10, 0.0), 0.0),
             (("constant", 12, 1.0), 4.0)]
    for j, (dist, x) in enumerate(cases):
        r = cs.chernoff_tail_check(trials, dist, x, seed=derive_seed(ctx.seed, j))
        t.add(r.holds, None, {"dist": list(dist), "x": x, **r._asdict()})
    return t.report()


def check_sparse_kk(ctx, count=40, max_n=14, alpha=0.5):
    top = ctx.n_cap(max_n)
    t = _Tally("sparse-kruskal-katona", {"count": count, "max_n": top, "alpha": alpha, "k": 3},
               "sparse_kk_bound <= |shadow(F, i)| and expected trace >= expected_trace_lower when certified")
    certified = 0
    for _ in range(count if top >= 6 else 0):
        if ctx.out_of_time():
            t.truncated = True
            break
        n = int(ctx.rng.integers(6, top + 1))
        F = _rand_kgraph(ctx.rng, n, 3, int(ctx.rng.integers(n, 3 * n + 1)))
        q = math.floor(alpha * n)
        w = max(1, hg.wp(F, q))
        try:
            p = dc.sparse_kk_params(n, alpha, 3, w, len(F))
        except ContractError:
            continue
        if not p.certified():
            continue
        certified += 1
        for i in range(p.t, 4):
            b = dc.sparse_kk_bound(p, i)
            size = hg.shadow_size(F, i)
            t.add(b.value <= size, format_edge_list(F), {"i": i, "bound": b.value, "shadow": size})
            if i >= p.r + 1:
                b2 = dc.sparse_kk_bound(p, i, variant="intro")
                t.add(b2.value <= size, format_edge_list(F), {"i": i, "intro": b2.value, "shadow": size})
        gamma = 0.7
        if 9 <= gamma * n:
            val = dc.expected_trace_lower(p, w / n, gamma).value
            g = math.floor(gamma * n)
            mean = np.mean([len(hg.trace_masks(F, hg.to_mask(c)))
                            for c in combinations(range(n), g)]) if math.comb(n, g) <= 5000 else None
            if mean is not None:
                t.add(val <= mean, format_edge_list(F), {"expected_trace_lower": val, "mean_trace": mean})
    t.extra["certified_instances"] = certified
    return t.report()


def check_trace_lower(ctx):
    t = _Tally("trace-tau-lower", {"instances": "tau(n, m, k) at n <= 4"},
               "trace_tau_lower(n, log m / log n, k / n) <= tau(n, m, k)")
    top = ctx.n_cap(4)
    for n, m, k in [(3, 3, 2), (3, 5, 2), (4, 4, 3), (4, 6, 2), (4, 10, 3), (4, 8, 4)]:
        if n > top:
            continue
        tau = tau_exact(n, m, k, ctx.budget)
        r = math.log(m) / math.log(n)
        lb = dc.trace_tau_lower(n, r, k / n)
        t.add(lb.value <= tau, None, {"n": n, "m": m, "k": k, "tau": tau, "lower": lb.value})
    return t.report()


def check_sparse_kk_construction(ctx, seeds=6):
    n, k, x = ctx.n_cap(20), 3, 5
    t = _Tally("sparse-kk-construction", {"n": n, "k": k, "x": x, "r": 1.0, "alpha": 0.5, "seeds": seeds},
               "under E1 |F| = l C(x,k), shadow <= l C(x,i), wp <= 6 C(x,k) n")
    if n < 10:
        return t.report()
    for j in range(seeds):
        spec = cs.ConstructionSpec(n, 1.0, 0.5, k=k, x=x, ell=3, relaxed=True,
                                   seed=derive_seed(ctx.seed, j))
        rep = cs.build_sparse_kk_extremal(spec)
        fam = format_edge_list(rep.family)
        t.add(rep.untrimmed_size == 3 * math.comb(x, k), fam, {"untrimmed": rep.untrimmed_size})
        for i in range(k + 1):
            c = cs.verify_shadow_upper(rep, spec, i)
            t.add(c.holds, fam, {"i": i, **c._asdict()})
        st = cs.verify_wp_upper(rep, spec, "exact")
        t.add(st.holds and st.max == hg.wp(rep.family, spec.window), fam, {"wp": st.max, "bound": st.bound})
    return t.report()


def check_trace_ub_construction(ctx, trials=2000):
    n, r, alpha = 512, 2.0, 0.5
    t = _Tally("trace-ub-construction", {"n": n, "r": r, "alpha": alpha, "trials": trials},
               "E1 |F| >= n^r; mean X <= 4 n^mu within 99% CI; max trace <= 8 n^mu")
    spec = cs.ConstructionSpec(n, r, alpha, seed=ctx.seed)
    rep = cs.build_trace_ub_family(spec)
    t.add(rep.e1_holds and rep.size >= n ** r, None, {"size": rep.size})
    est = cs.estimate_trace_ub(rep, spec, trials=trials)
    t.add(est["x_mean_within_ci"], None, {"X": est["X"]})
    t.add(est["trace_max_within_bound"], None, {"trace": est["trace"]})
    # the window counts must be true traces of the down-closed family
    F = rep.family
    masks = [hg.to_mask(ctx.rng.choice(n, size=spec.window, replace=False).tolist()) for _ in range(5)]
    member = np.array([[m >> v & 1 for v in range(n)] for m in masks], dtype=bool)
    fast = rep.union.window_counts(member)
    for mask, f in zip(masks, fast):
        slow = len(hg.trace_masks(F, mask))
        t.add(int(f) == slow, None, {"engine": int(f), "trace": slow})
    return t.report()


def check_tau(ctx):
    top = ctx.n_cap(4)
    t = _Tally("tau-exact", {"max_n": top},
               "tau(4,4,3) = 4, tau(4,10,3) = 7, tau(n,2^n,k) = 2^k, monotone in k and m")
    known = [(4, 4, 3, 4), (4, 10, 3, 7)]
    for n, m, k, want in known:
        if n <= top:
            got = tau_exact(n, m, k, ctx.budget)
            t.add(got == want, None, {"n": n, "m": m, "k": k, "tau": got, "expected": want})
    for n in range(1, min(top, 4) + 1):
        table = {}
        for m in range(0, 2 ** n + 1):
            for k in range(0, n + 1):
                table[m, k] = tau_exact(n, m, k, ctx.budget)
        for k in range(n + 1):
            t.add(table[2 ** n, k] == 2 ** k, None, {"n": n, "k": k, "tau_full": table[2 ** n, k]})
        for (m, k), v in table.items():
            if k < n:
                t.add(table[m, k + 1] >= v, None, {"n": n, "m": m, "k": k, "monotone": "k"})
            if m < 2 ** n:
                t.add(table[m + 1, k] >= v, None, {"n": n, "m": m, "k": k, "monotone": "m"})
    return t.report()


def check_differential(ctx, count=300, max_n=12):
    top = ctx.n_cap(max_n)
    t = _Tally("differential", {"count": count, "max_n": top},
               "core trace/shadow/wp/vc equal the naive oracle")
    for _ in range(count if top >= 1 else 0):
        if ctx.out_of_time():
            t.truncated = True
            break
        n = int(ctx.rng.integers(1, top + 1))
        m = int(ctx.rng.integers(0, min(2 ** n, 40) + 1))
        F = hg.random_hypergraph(n, m, int(ctx.rng.integers(0, 2 ** 63)))
        k = int(ctx.rng.integers(0, n + 1))
        i = int(ctx.rng.integers(0, n + 1))
        core = (hg.trace_value(F, k), hg.shadow_size(F, i), hg.wp(F, i), hg.vc_dimension(F))
        naive = (trace_exact(F, k), shadow_exact(F, i), wp_exact(F, i), vc_exact(F))
        t.add(core == naive, format_edge_list(F), {"k": k, "i": i, "core": list(core), "oracle": list(naive)})
    return t.report()


def check_separating(ctx, count=60, max_n=10):
    top = ctx.n_cap(max_n)
    t = _Tally("separating-subset", {"count": count, "max_n": top},
               "representatives have pairwise distinct projections, one per trace element")
    for j in range(count if top >= 1 else 0):
        n = int(ctx.rng.integers(1, top + 1))
        m = int(ctx.rng.integers(1, min(2 ** n, 30) + 1))
        F = hg.random_hypergraph(n, m, int(ctx.rng.integers(0, 2 ** 63)))
        size = int(ctx.rng.integers(0, n + 1))
        P, reps = hg.find_separating_subset(F, size, 8, derive_seed(ctx.seed, j))
        Pset = frozenset(P)
        edges = [frozenset(hg.bits(F.edges[r])) for r in reps]
        projections = {e & Pset for e in edges}
        ok = len(P) == size and len(projections) == len(reps) == len(trace_onto_exact(F, Pset))
        t.add(ok, format_edge_list(F), {"target": size, "representatives": len(reps)})
    return t.report()


SUITES = {
    "sauer": check_sauer,
    "kruskal-katona": check_kruskal_katona,
    "regularization": check_regularization,
    "heavy-vertices": check_heavy_vertices,
    "heavy-tuples": check_heavy_tuples,
    "link-shadow": check_link_shadow,
    "sum-bound": check_sum_bound,
    "newton": check_newton,
    "binom-ratio": check_binom_ratio,
    "exp-sandwich": check_exp_sandwich,
    "hypergeometric": check_hypergeometric,
    "chernoff": check_chernoff,
    "sparse-kk": check_sparse_kk,
    "trace-lower": check_trace_lower,
    "sparse-kk-construction": check_sparse_kk_construction,
    "trace-ub-construction": check_trace_ub_construction,
    "tau": check_tau,
    "differential": check_differential,
    "separating": check_separating,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_property_suite(suite, budget=None, seed=0x5EED):
    """Run one named suite (or ``all``) and return its reports."""
    if suite not in SUITE_NAMES:
        raise InvalidArgument(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    budget = budget or OracleBudget()
    if budget.empty:
        return []
    names = list(SUITES) if suite == "all" else [suite]
    reports = []
    for name in names:
        ctx = SuiteContext(budget, seed, list(SUITES).index(name))
        reports.append(SUITES[name](ctx))
    return reports
