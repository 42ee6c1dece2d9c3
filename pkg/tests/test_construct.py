import math

import numpy as np
import pytest

from trace_lab import construct as cs
from trace_lab.decompose import trace_tau_lower
from trace_lab.errors import CapacityError, ConstructionFailure, InvalidArgument
from trace_lab.hypergraph import shadow_size, wp
from trace_lab.rng import derive_seed


def tiny_spec(**kw):
    base = dict(n=12, r=1.0, alpha=0.5, k=3, x=4, ell=2, seed=5, relaxed=True)
    base.update(kw)
    return cs.ConstructionSpec(**base)


def test_draw_bases_reproducible_and_sized():
    a = cs.draw_bases(100, 6, 40, seed=7)
    b = cs.draw_bases(100, 6, 40, seed=7, threads=4)
    assert a == b
    assert all(len(s) == 6 and s == sorted(set(s)) for s in a)


def test_pairwise_intersections_histogram():
    bases = [[0, 1, 2], [1, 2, 3], [5, 6, 7], [0, 7, 8]]
    top, hist = cs.pairwise_intersections(10, bases)
    assert top == 2
    assert hist == {0: 3, 1: 2, 2: 1}
    assert sum(hist.values()) == math.comb(len(bases), 2)


def test_tiny_build_matches_exact_wp():
    spec = tiny_spec()
    rep = cs.build_sparse_kk_extremal(spec)
    F = rep.family
    assert F.uniformity == 3
    st = cs.verify_wp_upper(rep, spec, mode="exact")
    assert st.max == wp(F, spec.window)
    assert st.holds and st.bound == 6 * math.comb(4, 3) * 12
    for i in range(4):
        c = cs.verify_shadow_upper(rep, spec, i)
        assert c.holds and c.shadow_size == shadow_size(F, i)


def test_trimming_and_edge_count():
    spec = cs.ConstructionSpec(n=200, r=1.0, alpha=0.5, k=3, x=6, seed=1, relaxed=True)
    rep = cs.build_sparse_kk_extremal(spec)
    ell = rep.stats["ell"]
    assert ell == math.ceil(200 / 20)
    assert rep.untrimmed_size == ell * 20
    assert rep.size == 200
    assert rep.max_pairwise_intersection < 3
    edges = sorted(rep.family.edges)
    assert list(rep.family.edges) == edges


def test_retries_then_failure():
    # large bases on few vertices always intersect in >= 3r
    spec = cs.ConstructionSpec(n=10, r=0.5, alpha=0.5, k=2, x=8, ell=3, seed=1,
                               max_retries=2, relaxed=True)
    with pytest.raises(ConstructionFailure) as info:
        cs.build_sparse_kk_extremal(spec)
    assert info.value.attempts == 3
    assert sum(info.value.histogram.values()) == 3 * 3


def test_retry_uses_derived_seed():
    spec = cs.ConstructionSpec(n=40, r=1.0, alpha=0.5, k=3, x=6, ell=4, seed=11,
                               max_retries=50, relaxed=True)
    rep = cs.build_sparse_kk_extremal(spec)
    assert rep.attempt_seed == derive_seed(11, rep.retries_used)
    bases = cs.draw_bases(40, 6, 4, rep.attempt_seed)
    assert cs.pairwise_intersections(40, bases)[0] == rep.max_pairwise_intersection


def test_regime_checked_unless_relaxed():
    with pytest.raises(InvalidArgument):
        cs.build_sparse_kk_extremal(tiny_spec(relaxed=False))
    with pytest.raises(InvalidArgument):
        cs.build_sparse_kk_extremal(tiny_spec(k=None))
    with pytest.raises(InvalidArgument):
        cs.build_sparse_kk_extremal(tiny_spec(x=2))


def test_proven_regime_instance():
    # x <= n^(1/6) and 3r <= k force n >= 729 with k = x = 3, r = 1, alpha = 1
    spec = cs.ConstructionSpec(n=729, r=1.0, alpha=1.0, k=3, x=3, seed=2)
    rep = cs.build_sparse_kk_extremal(spec)
    assert rep.stats["ell"] == 729 and rep.size == 729


def test_desk_instance():
    spec = cs.ConstructionSpec(n=4096, r=1.2, alpha=0.5, k=4, x=8, seed=7, relaxed=True)
    rep = cs.build_sparse_kk_extremal(spec)
    assert rep.e1_holds and rep.size == spec.target_size()
    st = cs.verify_wp_upper(rep, spec, trials=512)
    assert st.kind == "sampled-lower-bound" and st.holds
    with pytest.raises(CapacityError):
        cs.verify_wp_upper(rep, spec, mode="exact")


def test_trace_ub_parameters():
    m, x, ell = cs.trace_ub_parameters(1024, 2, 0.5)
    assert x == 7
    assert ell == math.ceil(2 * 1024 ** 2 / 128)
    assert m == pytest.approx((3 - math.log2(1.5)) / (2 - math.log2(1.5)))


def test_trace_ub_small_family():
    spec = cs.ConstructionSpec(n=64, r=1.5, alpha=0.5, x=4, seed=3, relaxed=True)
    rep = cs.build_trace_ub_family(spec)
    F = rep.family
    assert len(F) >= 64 ** 1.5
    x, ell = rep.stats["x"], rep.stats["ell"]
    assert F.max_edge_size() <= x and rep.spec.ell == ell
    est = cs.estimate_trace_ub(rep, spec, trials=300)
    assert est["trace"]["trials"] == 300
    assert est["trace_max_within_bound"]
    assert est["lower_bound"] == trace_tau_lower(64, 1.5, 0.5).value


def test_trace_ub_sample_matches_direct_counts():
    spec = cs.ConstructionSpec(n=40, r=1.5, alpha=0.5, x=3, seed=2, relaxed=True)
    rep = cs.build_trace_ub_family(spec)
    member = np.zeros((1, 40), dtype=bool)
    member[0, :20] = True
    from trace_lab.hypergraph import trace_onto
    assert rep.union.window_counts(member)[0] == len(trace_onto(rep.family, range(20)))


def test_trace_ub_range_check():
    with pytest.raises(InvalidArgument):
        cs.build_trace_ub_family(cs.ConstructionSpec(n=64, r=3.0, alpha=0.5))


def test_chernoff_tail():
    assert cs.chernoff_tail_check(10000, ("bernoulli", 30, 0.1), 1.0).holds
    assert cs.chernoff_tail_check(10000, ("uniform", 12, 0), 2.0).holds
    t = cs.chernoff_tail_check(100, ("constant", 10, 0.6), 2.0)
    assert t.empirical == 0.0 and t.holds
    with pytest.raises(InvalidArgument):
        cs.chernoff_tail_check(100, ("bernoulli", 30, 0.9), 1.0)
    with pytest.raises(InvalidArgument):
        cs.chernoff_tail_check(100, ("normal", 3, 0.5), 1.0)


def test_report_serialises():
    rep = cs.build_sparse_kk_extremal(tiny_spec())
    d = rep.as_dict()
    assert d["mode"] == "sparse-kk" and d["size"] == rep.size
    assert d["spec"]["ell"] == 2
