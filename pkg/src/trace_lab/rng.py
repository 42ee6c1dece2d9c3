"""Seeded, splittable randomness.

Every random object in the package is drawn from a stream identified by a
64-bit seed plus a path of integer labels, so results never depend on the
order in which work is scheduled or on how many threads run it.
"""
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
DEFAULT_SEED = 0x5EED
THREADS_ENV = "TRACE_LAB_THREADS"


def splitmix64(state):
    """Return ``(next_state, output)`` of the SplitMix64 generator."""
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def mix64(value):
    return splitmix64(value & MASK64)[1]


def derive_seed(seed, *path):
    """Child seed for ``path``; ``derive_seed(s, j)`` mixes ``s ^ (j+1)*GOLDEN``."""
    s = seed & MASK64
    for label in path:
        s = mix64(s ^ (((label + 1) * GOLDEN) & MASK64))
    return s


class SplitMix:
    """Minimal integer stream used for subset sampling."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & MASK64

    def next64(self):
        self.state, out = splitmix64(self.state)
        return out

    def below(self, bound):
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next64()
            if v < limit:
                return v % bound


def sample_subset(n, size, seed):
    """Uniform ``size``-subset of ``range(n)`` by partial Fisher-Yates.

    Only touched positions are materialised, so the cost is O(size) even
    for large ``n``.  Returned sorted.
    """
    if not 0 <= size <= n:
        raise ValueError(f"cannot draw {size} of {n}")
    gen = SplitMix(seed)
    swapped = {}
    out = []
    for pos in range(size):
        pick = pos + gen.below(n - pos)
        val = swapped.get(pick, pick)
        swapped[pick] = swapped.get(pos, pos)
        out.append(val)
    out.sort()
    return out


def numpy_rng(seed, *path):
    return np.random.default_rng(np.random.SeedSequence([seed & MASK64, *path]))


def thread_count(threads=None):
    """Worker count: explicit argument, else ``TRACE_LAB_THREADS``, else 1."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "")
        try:
            threads = int(raw) if raw else 1
        except ValueError:
            threads = 1
    return max(1, int(threads))


def map_ordered(func, items, threads=None):
    """``list(map(func, items))`` on a thread pool; output order is fixed."""
    items = list(items)
    workers = min(thread_count(threads), len(items)) if items else 1
    if workers <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
