"""Immutable bit-mask hypergraphs and the exhaustive operations on them.

Vertices are the integers ``0..n-1``; an edge is stored as a Python ``int``
whose bit ``v`` is set when vertex ``v`` belongs to it.  Edges of a
:class:`Hypergraph` are kept in increasing mask order, which for edges of a
common size is exactly colex order.
"""
from collections import Counter
from itertools import combinations
from math import comb

import numpy as np

from .errors import CapacityError, InvalidArgument
from .rng import derive_seed, sample_subset

EXHAUSTIVE_MAX_N = 4096
CLOSURE_MAX_EDGE = 62


def bits(mask):
    """Set bit positions of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def colex_subsets(n, k):
    """All ``k``-subsets of ``range(n)`` as masks, in colex order (Gosper)."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def compress(mask, positions):
    """Re-index the bits of ``mask`` through ``positions`` (vertex -> new index)."""
    out = 0
    for v in bits(mask):
        out |= 1 << positions[v]
    return out


class VertexSet:
    """A set of vertices held as a bit mask with its cached size."""

    __slots__ = ("mask", "size")

    def __init__(self, mask=0):
        if mask < 0:
            raise InvalidArgument("vertex mask must be non-negative")
        self.mask = mask
        self.size = mask.bit_count()

    @classmethod
    def of(cls, vertices):
        vertices = list(vertices)
        if any(v < 0 for v in vertices):
            raise InvalidArgument("vertices must be non-negative")
        return cls(to_mask(vertices))

    def __iter__(self):
        return iter(bits(self.mask))

    def __len__(self):
        return self.size

    def __contains__(self, v):
        return v >= 0 and bool(self.mask >> v & 1)

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"VertexSet({{{', '.join(map(str, self))}}})"


def _as_mask(vertices):
    if isinstance(vertices, VertexSet):
        return vertices.mask
    if isinstance(vertices, int):
        raise InvalidArgument("pass a VertexSet or an iterable of vertices, not a bare int")
    vs = list(vertices)
    if any((not isinstance(v, int)) or v < 0 for v in vs):
        raise InvalidArgument(f"invalid vertex in {vs!r}")
    return to_mask(vs)


class Hypergraph:
    """``n`` labelled vertices and a set of distinct edges.

    ``edges`` may be given as iterables of vertex indices or as
    :class:`VertexSet` objects; use :meth:`from_masks` for raw masks.
    Duplicate edges collapse (set semantics).  When ``uniformity`` is
    given every edge must have exactly that many vertices.
    """

    __slots__ = ("_n", "_edges", "_uniformity")

    def __init__(self, n, edges=(), uniformity=None):
        masks = [_as_mask(e) for e in edges]
        self._init(n, masks, uniformity)

    @classmethod
    def from_masks(cls, n, masks, uniformity=None):
        self = cls.__new__(cls)
        self._init(n, list(masks), uniformity)
        return self

    def _init(self, n, masks, uniformity):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument(f"vertex count must be a non-negative int, got {n!r}")
        full = (1 << n) - 1
        for e in masks:
            if e < 0 or e & ~full:
                raise InvalidArgument(f"edge {bits(e)} is not a subset of range({n})")
        edges = tuple(sorted(set(masks)))
        sizes = {e.bit_count() for e in edges}
        if uniformity is not None:
            if sizes - {uniformity}:
                raise InvalidArgument(f"edges are not all of size {uniformity}")
        elif len(sizes) == 1:
            uniformity = sizes.pop()
        self._n = n
        self._edges = edges
        self._uniformity = uniformity

    n = property(lambda self: self._n)
    edges = property(lambda self: self._edges, doc="Edge masks in increasing (colex) order.")
    uniformity = property(lambda self: self._uniformity)

    def __len__(self):
        return len(self._edges)

    def __iter__(self):
        return (VertexSet(e) for e in self._edges)

    def __contains__(self, edge):
        return _as_mask(edge) in set(self._edges)

    def __eq__(self, other):
        if isinstance(other, Hypergraph):
            return self._n == other._n and self._edges == other._edges
        return NotImplemented

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Hypergraph(n={self._n}, m={len(self._edges)}, uniformity={self._uniformity})"

    def edge_lists(self):
        return [bits(e) for e in self._edges]

    def degrees(self):
        deg = [0] * self._n
        for e in self._edges:
            for v in bits(e):
                deg[v] += 1
        return deg

    def degree(self, v):
        return sum(1 for e in self._edges if e >> v & 1)

    def max_edge_size(self):
        return max((e.bit_count() for e in self._edges), default=0)

    def layer(self, k):
        return Hypergraph.from_masks(self._n, [e for e in self._edges if e.bit_count() == k], uniformity=k)


def _check_vertex_set(F, I):
    mask = _as_mask(I)
    if mask >> F.n:
        raise InvalidArgument(f"vertex set {bits(mask)} leaves range({F.n})")
    return mask


def _check_exhaustive(F, size):
    if F.n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"exhaustive search capped at n={EXHAUSTIVE_MAX_N}")
    if not isinstance(size, int) or not 0 <= size <= F.n:
        raise InvalidArgument(f"size {size!r} outside [0, {F.n}]")


def trace_masks(F, mask):
    return {e & mask for e in F.edges}


def trace_onto(F, I):
    """The distinct projections ``{e & I : e in F}``."""
    mask = _check_vertex_set(F, I)
    return {VertexSet(p) for p in trace_masks(F, mask)}


def _trace_scan(F, k):
    cap = min(len(F), 1 << k)
    best, best_mask = -1, None
    edges = F.edges
    for mask in colex_subsets(F.n, k):
        size = len({e & mask for e in edges})
        if size > best:
            best, best_mask = size, mask
            if best == cap:
                break
    return best, best_mask


def trace_value(F, k):
    """Shatter function: the largest trace over all ``k``-vertex windows."""
    _check_exhaustive(F, k)
    return max(_trace_scan(F, k)[0], 0)


def trace_witness(F, k):
    """Colex-first ``k``-set attaining :func:`trace_value`."""
    _check_exhaustive(F, k)
    return VertexSet(_trace_scan(F, k)[1])


def induced(F, I):
    """Sub-hypergraph on ``I`` relabelled to ``0..|I|-1`` in vertex order."""
    mask = _check_vertex_set(F, I)
    positions = {v: idx for idx, v in enumerate(bits(mask))}
    kept = [compress(e, positions) for e in F.edges if e & ~mask == 0]
    return Hypergraph.from_masks(mask.bit_count(), kept)


def induced_count(F, mask):
    return sum(1 for e in F.edges if e & ~mask == 0)


def wp(F, i):
    """Largest number of edges induced on ``i`` vertices (exhaustive)."""
    _check_exhaustive(F, i)
    edges = F.edges
    if i == F.n:
        return len(edges)
    best = 0
    for mask in colex_subsets(F.n, i):
        inv = ~mask
        count = 0
        for e in edges:
            if not e & inv:
                count += 1
        if count > best:
            best = count
            if best == len(edges):
                break
    return best


def containing(F, U):
    """``F^U``: edges containing every vertex of ``U``, same vertex set."""
    mask = _check_vertex_set(F, U)
    return Hypergraph.from_masks(F.n, [e for e in F.edges if e & mask == mask])


def link_size(F, U):
    mask = _check_vertex_set(F, U)
    return sum(1 for e in F.edges if e & mask == mask)


def link(F, U):
    """Link of the distinct vertices of tuple ``U``: ``{e - U : U <= e}``.

    The result lives on the remaining ``n - |U|`` vertices, relabelled in order.
    """
    mask = _check_vertex_set(F, U)
    rest = ((1 << F.n) - 1) & ~mask
    positions = {v: idx for idx, v in enumerate(bits(rest))}
    edges = [compress(e & ~mask, positions) for e in F.edges if e & mask == mask]
    return Hypergraph.from_masks(rest.bit_count(), edges)


def shadow_masks(F, i):
    if not isinstance(i, int) or i < 0:
        raise InvalidArgument(f"shadow level must be a non-negative int, got {i!r}")
    if i == 0:
        return {0} if len(F) else set()
    out = set()
    for e in F.edges:
        size = e.bit_count()
        if size < i:
            continue
        if size == i:
            out.add(e)
            continue
        singles = [1 << v for v in bits(e)]
        for combo in combinations(singles, i):
            out.add(sum(combo))
    return out


def shadow(F, i):
    """All ``i``-sets contained in at least one edge."""
    return {VertexSet(s) for s in shadow_masks(F, i)}


def shadow_size(F, i):
    return len(shadow_masks(F, i))


def downward_closure(F):
    """Smallest down-closed hypergraph containing ``F``."""
    closed = set()
    for e in sorted(F.edges, key=int.bit_count, reverse=True):
        if e.bit_count() > CLOSURE_MAX_EDGE:
            raise CapacityError(
                f"edge of size {e.bit_count()} exceeds closure capacity {CLOSURE_MAX_EDGE}; reduce k")
        if e in closed:
            continue
        sub = e
        while True:
            closed.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & e
    return Hypergraph.from_masks(F.n, closed)


def is_down_closed(F):
    edges = set(F.edges)
    for e in edges:
        for v in bits(e):
            if e ^ (1 << v) not in edges:
                return False
    return True


def popular_layer(H):
    """``(k, H_k)`` for the most populated edge size, smaller ``k`` on ties."""
    if not len(H):
        raise InvalidArgument("popular layer of an empty hypergraph")
    counts = Counter(e.bit_count() for e in H.edges)
    k = min(counts, key=lambda size: (-counts[size], size))
    return k, H.layer(k)


def vc_dimension(F):
    """Largest ``k`` with a fully shattered ``k``-set; ``-1`` for no edges."""
    if not len(F):
        return -1
    k = 0
    while k + 1 <= F.n and (1 << (k + 1)) <= len(F) and trace_value(F, k + 1) == 1 << (k + 1):
        k += 1
    return k


def find_separating_subset(F, target_size, trials, seed):
    """Random search for a ``target_size`` window with a large trace.

    Returns the best window found and, for each distinct projection onto
    it, the index (into ``F.edges``) of the first edge with that
    projection.  Those representatives are pairwise separated by the window.
    """
    if trials <= 0:
        raise InvalidArgument("trials must be positive")
    if not 0 <= target_size <= F.n:
        raise InvalidArgument(f"target_size {target_size} outside [0, {F.n}]")
    edges = F.edges
    best, best_mask = -1, 0
    for t in range(trials):
        mask = to_mask(sample_subset(F.n, target_size, derive_seed(seed, t)))
        size = len({e & mask for e in edges})
        if size > best:
            best, best_mask = size, mask
    reps = {}
    for idx, e in enumerate(edges):
        reps.setdefault(e & best_mask, idx)
    return VertexSet(best_mask), sorted(reps.values())


def complete(n, k):
    """Complete ``k``-graph on ``n`` vertices."""
    return Hypergraph.from_masks(n, colex_subsets(n, k), uniformity=k)


def power_set(vertices, n):
    base = to_mask(vertices)
    return downward_closure(Hypergraph.from_masks(n, [base]))


def random_hypergraph(n, m, seed, k=None):
    """``m`` distinct random edges; ``k``-uniform when ``k`` is given."""
    rng = np.random.default_rng(seed)
    universe = comb(n, k) if k is not None else 1 << n
    if m > universe:
        raise InvalidArgument(f"cannot pick {m} distinct edges out of {universe}")
    chosen = set()
    while len(chosen) < m:
        if k is None:
            chosen.add(int(rng.integers(0, 1 << n)) if n < 63 else to_mask(
                v for v in range(n) if rng.random() < 0.5))
        else:
            chosen.add(to_mask(int(v) for v in rng.choice(n, size=k, replace=False)))
    return Hypergraph.from_masks(n, chosen, uniformity=k)
