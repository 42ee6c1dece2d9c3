"""Fast exact statistics on random windows for unions of power sets.

A family ``F`` contained in ``2^{S_1} | ... | 2^{S_l}`` is stored as the
bases ``S_j`` plus, for each base, the local masks (subsets of positions
of ``S_j``) whose set is *owned* by ``j``, i.e. ``j`` is the first base
containing it.  For a window ``I``, every member of ``F`` inside ``I`` is
counted exactly once at its owner, so

    |F[I]| = sum_j owned_j(positions of S_j & I)

where ``owned_j(b)`` counts owned local masks below ``b``.  That table is
precomputed with a subset-sum transform, making each window O(l * |S_j|).
For down-closed ``F`` the trace on ``I`` equals ``|F[I]|``.
"""
import numpy as np
from scipy import sparse

from .errors import CapacityError
from .hypergraph import Hypergraph, bits
from .rng import map_ordered, numpy_rng

MAX_LOCAL_BITS = 16
BATCH = 256


def _pack_keys(vals, n):
    """Pack rows of vertex ids (``-1`` = empty slot) into uint64 columns."""
    width = int(n).bit_length() + 1
    per_word = 63 // width
    rows, cols = vals.shape
    words = max(1, -(-cols // per_word))
    out = np.zeros((rows, words), dtype=np.uint64)
    shifted = (vals + 1).astype(np.uint64)
    for c in range(cols):
        w, slot = divmod(c, per_word)
        out[:, w] |= shifted[:, c] << np.uint64(slot * width)
    return out


def _zeta(table, w):
    """In-place subset sums over ``w`` bits along the last axis."""
    size = 1 << w
    for p in range(w):
        step = 1 << p
        view = table.reshape(table.shape[0], size // (2 * step), 2, step)
        view[:, :, 1, :] += view[:, :, 0, :]
    return table


def _local_positions(w):
    """For every local mask of ``w`` bits, its set positions padded with ``w``."""
    size = 1 << w
    pos = np.full((size, w), w, dtype=np.int64)
    for m in range(size):
        b = bits(m)
        pos[m, : len(b)] = b
    return pos


def _desc_rows(vals):
    """Rows sorted in decreasing vertex order, ``-1`` padding last."""
    return -np.sort(-vals, axis=1)


def colex_argsort(vals):
    """Order of padded vertex rows in colex (increasing mask) order."""
    if vals.shape[1] == 0:
        return np.arange(vals.shape[0])
    desc = _desc_rows(vals)
    return np.lexsort(desc.T[::-1])


class SubsetUnion:
    """A subfamily of a union of power sets with O(l w) window counting."""

    def __init__(self, n, bases, owned):
        self.n = int(n)
        self.bases = bases
        self.owned = owned
        self.w = bases.shape[1]
        self._table = None
        self._weighted = None
        self._plain = None

    @classmethod
    def build(cls, n, bases, sizes=None, keep=None, chunk=4096):
        """Own every distinct subset of the bases whose size is in ``sizes``.

        ``bases`` is a list of sorted vertex lists.  ``keep``, when given,
        retains only the first ``keep`` owned sets in colex order.
        """
        w = max((len(b) for b in bases), default=0)
        if w > MAX_LOCAL_BITS:
            raise CapacityError(f"base of size {w} exceeds local table capacity {MAX_LOCAL_BITS}")
        l = len(bases)
        arr = np.full((l, w + 1), -1, dtype=np.int64)
        lens = np.zeros(l, dtype=np.int64)
        for j, b in enumerate(bases):
            arr[j, : len(b)] = b
            lens[j] = len(b)
        size = 1 << w
        popc = np.array([m.bit_count() for m in range(size)])
        top = np.array([m.bit_length() for m in range(size)])
        allowed = np.ones(size, dtype=bool) if sizes is None else np.isin(popc, list(sizes))
        pos = _local_positions(w)
        keys, flat_ids, rows_out = [], [], []
        for start in range(0, l, chunk):
            stop = min(l, start + chunk)
            valid = allowed[None, :] & (top[None, :] <= lens[start:stop, None])
            jj, mm = np.nonzero(valid)
            vals = arr[start:stop][jj[:, None], pos[mm]]
            keys.append(_pack_keys(vals, n))
            flat_ids.append((jj + start) * size + mm)
            rows_out.append(vals)
        owned = np.zeros((l, size), dtype=bool)
        if not keys:
            return cls(n, arr[:, :w], owned)
        keys = np.concatenate(keys)
        flat = np.concatenate(flat_ids)
        order = np.lexsort(keys.T[::-1])
        sk = keys[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = np.any(sk[1:] != sk[:-1], axis=1)
        winners = order[first]
        if keep is not None and keep < len(winners):
            vals = np.concatenate(rows_out)[winners]
            winners = winners[colex_argsort(vals)[:keep]]
        owned.reshape(-1)[flat[winners]] = True
        return cls(n, arr[:, :w], owned)

    @classmethod
    def from_down_closed(cls, F):
        """Bases are the maximal edges of a down-closed family."""
        maximal = maximal_edges_if_down_closed(F)
        if maximal is None:
            raise ValueError("family must be non-empty and down-closed")
        return cls.build(F.n, [bits(e) for e in maximal])

    def trim(self, keep):
        """Copy owning only the first ``keep`` sets in colex order."""
        jj, mm = np.nonzero(self.owned)
        owned = np.zeros_like(self.owned)
        if len(jj):
            pos = _local_positions(self.w)
            arr = np.concatenate([self.bases, np.full((self.bases.shape[0], 1), -1)], axis=1)
            order = colex_argsort(arr[jj[:, None], pos[mm]])[:keep]
            owned[jj[order], mm[order]] = True
        return SubsetUnion(self.n, self.bases, owned)

    @property
    def size(self):
        return int(self.owned.sum())

    @property
    def table(self):
        if self._table is None:
            self._table = _zeta(self.owned.astype(np.int64), self.w)
        return self._table

    def _incidence(self, weighted):
        l, w = self.bases.shape
        jj, pp = np.nonzero(self.bases >= 0)
        vals = (1 << pp).astype(np.float64) if weighted else np.ones(len(jj))
        return sparse.csr_matrix((vals, (jj, self.bases[jj, pp])), shape=(l, self.n))

    def window_counts(self, member):
        """``|F[I]|`` for each row of the boolean window matrix ``member``."""
        if self._weighted is None:
            self._weighted = self._incidence(True)
        local = np.rint(self._weighted @ member.T.astype(np.float64)).astype(np.intp)
        return np.take_along_axis(self.table, local, axis=1).sum(axis=0)

    def intersections(self, member):
        """``|S_j & I|`` for each window and base, shape ``(B, l)``."""
        if self._plain is None:
            self._plain = self._incidence(False)
        return np.rint(self._plain @ member.T.astype(np.float64)).astype(np.int64).T

    def rows(self):
        """Owned sets as padded vertex rows (``-1`` padding), colex order."""
        jj, mm = np.nonzero(self.owned)
        if not len(jj):
            return np.zeros((0, self.w), dtype=np.int64)
        pos = _local_positions(self.w)
        arr = np.concatenate([self.bases, np.full((self.bases.shape[0], 1), -1)], axis=1)
        vals = arr[jj[:, None], pos[mm]]
        return vals[colex_argsort(vals)]

    def iter_vertex_lists(self):
        for row in self.rows():
            yield [int(v) for v in row if v >= 0]

    def to_hypergraph(self):
        masks = []
        for row in self.rows():
            m = 0
            for v in row:
                if v >= 0:
                    m |= 1 << int(v)
            masks.append(m)
        return Hypergraph.from_masks(self.n, masks)


def maximal_edges_if_down_closed(F):
    """Maximal edges of ``F`` when ``F`` is non-empty and down-closed, else ``None``.

    One pass over the immediate subsets ``e - {v}`` settles both questions.
    """
    if not len(F):
        return None
    edges = set(F.edges)
    covered = set()
    for e in F.edges:
        rest = e
        while rest:
            low = rest & -rest
            sub = e ^ low
            if sub not in edges:
                return None
            covered.add(sub)
            rest ^= low
    return [e for e in F.edges if e not in covered]


def random_windows(n, q, count, rng):
    """``count`` uniform ``q``-subsets of ``range(n)`` as a boolean matrix."""
    base = np.zeros(n, dtype=bool)
    base[:q] = True
    return rng.permuted(np.broadcast_to(base, (count, n)), axis=1)


def sample_windows(n, q, trials, seed, stat, tag=0, threads=None, batch=BATCH):
    """Apply ``stat(member_matrix)`` to ``trials`` random ``q``-windows.

    Batch ``b`` draws from its own stream ``(seed, tag, b)``, so the
    concatenated result does not depend on the thread count.
    """
    nb = -(-trials // batch) if trials else 0

    def run(b):
        count = min(batch, trials - b * batch)
        rng = numpy_rng(seed, tag, b)
        return stat(random_windows(n, q, count, rng))

    parts = map_ordered(run, range(nb), threads)
    if not parts:
        return np.zeros(0)
    return np.concatenate(parts)


def incidence_matrix(F):
    """Sparse edge-by-vertex 0/1 matrix of ``F``."""
    rows, cols = [], []
    for idx, e in enumerate(F.edges):
        b = bits(e)
        rows.extend([idx] * len(b))
        cols.extend(b)
    return sparse.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(len(F), F.n)
    )


def induced_counts(F, member, inc=None, sizes=None):
    """Exact ``|F[I]|`` per window for an arbitrary family."""
    if inc is None:
        inc = incidence_matrix(F)
    if sizes is None:
        sizes = np.array([e.bit_count() for e in F.edges])
    hit = np.rint(inc @ member.T.astype(np.float64))
    return (hit == sizes[:, None]).sum(axis=0)


def trace_counts(F, member):
    """Exact ``|F_I|`` per window for an arbitrary family."""
    words = -(-max(F.n, 1) // 64)
    E = np.zeros((len(F), words), dtype=np.uint64)
    for idx, e in enumerate(F.edges):
        for w in range(words):
            E[idx, w] = (e >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    out = np.zeros(member.shape[0], dtype=np.int64)
    weights = np.uint64(1) << np.arange(64, dtype=np.uint64)
    for t, row in enumerate(member):
        padded = np.zeros(words * 64, dtype=bool)
        padded[: F.n] = row
        I = (padded.reshape(words, 64) * weights).sum(axis=1, dtype=np.uint64)
        proj = E & I[None, :]
        out[t] = len(np.unique(proj, axis=0)) if len(F) else 0
    return out
