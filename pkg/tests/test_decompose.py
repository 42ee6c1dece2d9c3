import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from trace_lab import binomials as bn
from trace_lab import decompose as dc
from trace_lab.errors import ContractError, InvalidArgument
from trace_lab.hypergraph import Hypergraph, complete, random_hypergraph, shadow_size, wp

from conftest import kgraphs


def star(n):
    return Hypergraph(n, [[0, v] for v in range(1, n)])


# regularisation


def test_regularize_keeps_star_and_clique():
    for F in (star(6), complete(4, 2)):
        res = dc.regularize(F)
        assert res.subgraph == F
        assert res.removed_order == ()


def test_regularize_drops_isolated_vertices():
    F = Hypergraph(8, [[0, 1], [1, 2], [0, 2]])
    res = dc.regularize(F)
    assert res.vertices == (0, 1, 2)
    assert all(res.guarantees(F).values())


@given(kgraphs(max_n=9, max_m=30))
def test_regularize_guarantees(Fk):
    F, k = Fk
    assume(F.n >= 2 and k >= 1)
    res = dc.regularize(F)
    assert all(res.guarantees(F).values())


def test_regularize_preconditions():
    with pytest.raises(InvalidArgument):
        dc.regularize(Hypergraph(3, []))
    with pytest.raises(InvalidArgument):
        dc.regularize(Hypergraph(1, [[0]]))


# heavy vertices and tuples


def test_heavy_vertices_clique():
    assert dc.heavy_vertices(complete(4, 2), 2) == [0, 1, 2, 3]


def test_heavy_vertices_contract():
    with pytest.raises(ContractError) as info:
        dc.heavy_vertices(Hypergraph(3, [[0, 1]]), 2)
    assert info.value.diagnostics["wp"] == 1


@given(kgraphs(max_n=8, max_m=30), st.data())
def test_heavy_vertex_count(Fk, data):
    F, _ = Fk
    assume(F.n >= 2)
    i = data.draw(st.integers(1, F.n - 1))
    w = wp(F, i)
    assume(2 * w <= len(F))
    assert len(dc.heavy_vertices(F, i, wp_value=w)) > i


def test_heavy_tuples_complete():
    fam = dc.heavy_tuples(complete(8, 3), 1, 2)
    assert fam.tuples == [(v,) for v in range(8)]
    assert dc.heavy_tuples(complete(8, 3), 0, 2).tuples == [()]


@given(kgraphs(max_n=8, max_m=40), st.data())
def test_heavy_tuple_count_and_threshold(Fk, data):
    F, _ = Fk
    assume(F.n >= 2)
    s = data.draw(st.integers(1, 2))
    i = data.draw(st.integers(1, F.n - 1))
    w = wp(F, i)
    assume(w * 2 ** s * F.n ** (s - 1) <= len(F))
    fam = dc.heavy_tuples(F, s, i, wp_value=w)
    assert len(fam.tuples) >= i ** s
    for U in fam.tuples:
        mask = 0
        for v in U:
            mask |= 1 << v
        size = sum(1 for e in F.edges if e & mask == mask)
        assert size * (2 * F.n) ** s >= len(F)


# link shadow collection


def test_link_shadow_t0_is_kruskal_katona():
    F = complete(6, 3)
    y = bn.invert_binomial(len(F), 3)
    assert dc.collect_link_shadow_lower(F, 0, 2) == pytest.approx(bn.binom_real(y, 2))


@given(kgraphs(max_n=7, max_m=25), st.data())
def test_link_shadow_lower_bound(Fk, data):
    F, k = Fk
    i = data.draw(st.integers(0, k))
    t = data.draw(st.integers(0, i))
    assert shadow_size(F, i) >= dc.collect_link_shadow_lower(F, t, i) * (1 - 1e-12)


def test_link_shadow_range():
    with pytest.raises(InvalidArgument):
        dc.collect_link_shadow_lower(complete(5, 3), 3, 2)


# Kruskal-Katona in the real-y form


@given(kgraphs(max_n=8, max_m=40), st.data())
def test_kruskal_katona(Fk, data):
    F, k = Fk
    i = data.draw(st.integers(0, k))
    y = bn.invert_binomial(len(F), k)
    assert shadow_size(F, i) >= bn.binom_exact(y, i)


# sparse KK constants


def test_sparse_kk_params_small_case():
    p = dc.sparse_kk_params(1024, 0.5, 3, wp_value=10, F_size=1024, r=1)
    assert p.c == (8 * 3) ** 2 / 0.5
    assert p.C_err == (8 * 3 / 0.5) ** 4 * 10
    assert (p.s, p.t) == (0, 1)


def test_sparse_kk_s_boundary_is_exact():
    # r = 1: c * wp = 1152 exactly, so |F| = 1152 would force s = 1 > ceil(r) - 1
    p = dc.sparse_kk_params(1024, 0.5, 3, wp_value=1, F_size=1151, r=1)
    assert p.s == 0
    with pytest.raises(ContractError):
        dc.sparse_kk_params(1024, 0.5, 3, wp_value=1, F_size=1152, r=1)
    # r = 2: c = 24^4 / 0.25 = 1327104
    assert dc.sparse_kk_params(1024, 0.5, 3, wp_value=1, F_size=1327103, r=2).s == 0
    p = dc.sparse_kk_params(1024, 0.5, 3, wp_value=1, F_size=1327104, r=2)
    assert p.s == 1 and p.t == 2


@given(st.integers(2, 4096), st.floats(0.05, 1), st.integers(1, 6),
       st.integers(1, 10 ** 6), st.integers(1, 10 ** 9), st.floats(1, 6))
def test_sparse_kk_s_is_minimal(n, alpha, k, wp_value, size, r):
    try:
        p = dc.sparse_kk_params(n, alpha, k, wp_value, size, r=r)
    except ContractError:
        return
    from fractions import Fraction
    sigma = Fraction(8 * k) ** dc._ceil(2 * r) / Fraction(alpha) ** dc._ceil(r) * wp_value
    assert size < sigma * (2 * n) ** p.s
    assert p.s == 0 or size >= sigma * (2 * n) ** (p.s - 1)


def test_sparse_kk_bound_variants():
    p = dc.sparse_kk_params(1024, 0.5, 3, wp_value=10, F_size=1024, r=1)
    b = dc.sparse_kk_bound(p, 2)
    assert b.vacuous and b.value < 1
    with pytest.raises(InvalidArgument):
        dc.sparse_kk_bound(p, 0)
    with pytest.raises(InvalidArgument):
        dc.sparse_kk_bound(p, 2, variant="other")
    assert dc.sparse_kk_bound(p, 2, variant="intro").vacuous


def test_sparse_kk_bound_holds_on_small_graphs():
    for seed in range(10):
        F = random_hypergraph(8, 20, seed=seed, k=3)
        p = dc.sparse_kk_params(F.n, 1.0, 3, wp(F, 4), len(F))
        for i in range(p.t, 4):
            assert shadow_size(F, i) >= dc.sparse_kk_bound(p, i).value


def test_expected_trace_lower_preconditions():
    p = dc.sparse_kk_params(1024, 0.5, 3, wp_value=10, F_size=1024, r=1)
    assert dc.expected_trace_lower(p, B=1, gamma=0.5).vacuous
    with pytest.raises(InvalidArgument):
        dc.expected_trace_lower(p, B=1, gamma=0)
    with pytest.raises(ContractError):
        dc.expected_trace_lower(p, B=0.001, gamma=0.5)


def test_trace_tau_lower_vacuous_at_desk_scale():
    lb = dc.trace_tau_lower(1024, 2, 0.5)
    assert lb.vacuous
    assert lb.mu == pytest.approx(bn.mu(2, 0.5))
    cpp = (8 * 2 * 10 / 0.25) ** 12
    assert lb.log2_value == pytest.approx(lb.mu * 10 - math.log2(cpp))
    assert lb.log_loss == pytest.approx(math.log2(cpp) / 10)
