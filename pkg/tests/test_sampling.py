import itertools
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from trace_lab.hypergraph import (
    Hypergraph, downward_closure, induced, power_set, random_hypergraph, to_mask, trace_onto,
)
from trace_lab.rng import numpy_rng
from trace_lab.sampling import (
    SubsetUnion,
    colex_argsort,
    induced_counts,
    maximal_edges_if_down_closed,
    random_windows,
    sample_windows,
    trace_counts,
)


def members(n, windows):
    m = np.zeros((len(windows), n), dtype=bool)
    for row, I in enumerate(windows):
        m[row, list(I)] = True
    return m


def brute_union(bases, sizes=None):
    out = set()
    for b in bases:
        for size in range(len(b) + 1):
            if sizes is not None and size not in sizes:
                continue
            for c in itertools.combinations(b, size):
                out.add(to_mask(c))
    return out


bases_strategy = st.integers(2, 10).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(0, n - 1), unique=True, max_size=6).map(sorted),
                 min_size=1, max_size=6),
    )
)


@given(bases_strategy, st.none() | st.sets(st.integers(0, 6), min_size=1))
def test_union_owns_each_set_once(nb, sizes):
    n, bases = nb
    U = SubsetUnion.build(n, bases, sizes=sizes)
    want = brute_union(bases, sizes)
    assert U.size == len(want)
    assert set(U.to_hypergraph().edges) == want


@given(bases_strategy, st.data())
def test_window_counts_match_brute_force(nb, data):
    n, bases = nb
    U = SubsetUnion.build(n, bases)
    F = U.to_hypergraph()
    windows = data.draw(st.lists(st.sets(st.integers(0, n - 1)), min_size=1, max_size=5))
    got = U.window_counts(members(n, windows))
    want = [len(induced(F, I)) for I in windows]
    assert got.tolist() == want
    # down-closed, so the trace equals the induced count
    assert want == [len(trace_onto(F, I)) for I in windows]
    inter = U.intersections(members(n, windows))
    assert inter.tolist() == [[len(set(b) & I) for b in bases] for I in windows]


@given(bases_strategy, st.integers(0, 40))
def test_trim_keeps_colex_first(nb, keep):
    n, bases = nb
    U = SubsetUnion.build(n, bases, sizes={2})
    T = U.trim(keep)
    full = sorted(U.to_hypergraph().edges)
    assert sorted(T.to_hypergraph().edges) == full[:keep]
    assert SubsetUnion.build(n, bases, sizes={2}, keep=keep).size == T.size


def test_rows_are_in_colex_order():
    U = SubsetUnion.build(6, [[0, 2, 5], [1, 2, 3]])
    masks = [to_mask([v for v in row if v >= 0]) for row in U.rows()]
    assert masks == sorted(masks)


def test_colex_argsort_matches_masks():
    rng = np.random.default_rng(1)
    rows = []
    for _ in range(50):
        k = int(rng.integers(0, 5))
        r = sorted(rng.choice(12, size=k, replace=False).tolist())
        rows.append(r + [-1] * (5 - k))
    vals = np.array(rows)
    order = colex_argsort(vals)
    masks = [to_mask([v for v in vals[i] if v >= 0]) for i in order]
    assert masks == sorted(masks)


def test_maximal_edges_detection():
    F = downward_closure(Hypergraph(5, [[0, 1, 2], [2, 3]]))
    assert sorted(maximal_edges_if_down_closed(F)) == sorted([to_mask([0, 1, 2]), to_mask([2, 3])])
    assert maximal_edges_if_down_closed(Hypergraph(3, [[0, 1]])) is None
    assert maximal_edges_if_down_closed(Hypergraph(3, [])) is None
    U = SubsetUnion.from_down_closed(power_set([1, 3], 4))
    assert U.size == 4


def test_generic_counts_match_brute_force():
    for seed in range(5):
        F = random_hypergraph(70, 40, seed=seed)
        rng = numpy_rng(seed)
        member = random_windows(70, 30, 6, rng)
        windows = [set(np.nonzero(row)[0].tolist()) for row in member]
        assert trace_counts(F, member).tolist() == [len(trace_onto(F, I)) for I in windows]
        assert induced_counts(F, member).tolist() == [len(induced(F, I)) for I in windows]


def test_random_windows_have_fixed_size():
    m = random_windows(20, 7, 100, numpy_rng(3))
    assert m.shape == (100, 20) and (m.sum(axis=1) == 7).all()


def test_sample_windows_independent_of_threads():
    stat = lambda member: member.argmax(axis=1)
    a = sample_windows(50, 10, 1000, 9, stat, tag=5, threads=1)
    b = sample_windows(50, 10, 1000, 9, stat, tag=5, threads=4)
    c = sample_windows(50, 10, 1000, 10, stat, tag=5, threads=1)
    assert len(a) == 1000
    assert (a == b).all() and not (a == c).all()
    assert len(sample_windows(50, 10, 0, 9, stat)) == 0


def test_windows_are_roughly_uniform():
    m = random_windows(10, 3, 30000, numpy_rng(0))
    freq = m.mean(axis=0)
    assert np.allclose(freq, 0.3, atol=0.02)
    assert math.isclose(m.sum() / 30000, 3)
