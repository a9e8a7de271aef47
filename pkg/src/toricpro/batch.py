"""Vectorised evaluation of operators over every labeling at once.

Labelings are indexed by the lexicographic (Lehmer) rank of their forward
word, so an operator on Lambda_G becomes an integer array ``perm`` with
``perm[r]`` the rank of the image of labeling ``r``. Orbits are the cycles
of that array.

Words here are 0-based (label l is stored as l - 1).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import check_cap
from .graph import Graph

_DTYPE = np.int8


@lru_cache(maxsize=12)
def all_words(n: int) -> np.ndarray:
    """All n! forward words (0-based labels) in lexicographic order, read-only."""
    check_cap("labelings", n)
    if n == 1:
        words = np.zeros((1, 1), dtype=_DTYPE)
    else:
        # build lexicographic order recursively: first column major
        sub = all_words(n - 1).astype(_DTYPE)
        blocks = []
        for first in range(n):
            rest = sub + (sub >= first)
            blocks.append(np.hstack([np.full((len(sub), 1), first, dtype=_DTYPE), rest.astype(_DTYPE)]))
        words = np.vstack(blocks)
    words.flags.writeable = False
    return words


@lru_cache(maxsize=12)
def _factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64)


def rank_words(words: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row (a permutation of 0..n-1)."""
    n = words.shape[1]
    fac = _factorials(n)
    ranks = np.zeros(len(words), dtype=np.int64)
    for i in range(n - 1):
        smaller = (words[:, i + 1:] < words[:, i:i + 1]).sum(axis=1)
        ranks += smaller * fac[i]
    return ranks


def invert_words(words: np.ndarray) -> np.ndarray:
    inv = np.empty_like(words)
    rows = np.arange(len(words))[:, None]
    inv[rows, words] = np.arange(words.shape[1], dtype=words.dtype)[None, :]
    return inv


def apply_steps_inverse(adj: np.ndarray, steps, inv: np.ndarray) -> np.ndarray:
    """Apply primitive steps to a batch of inverse words (in place on a copy).

    ``inv[r, l]`` is the vertex carrying 0-based label l.
    """
    inv = inv.copy()
    n = inv.shape[1]
    for step in steps:
        kind = step[0]
        if kind == "toggle":
            a, b = step[1] - 1, step[2] - 1
            u, v = inv[:, a], inv[:, b]
            free = ~adj[u, v]
            tmp = u[free].copy()
            inv[free, a] = v[free]
            inv[free, b] = tmp
        elif kind == "shift":
            k = step[1] % n
            if k:
                # new label l + k carries the vertex that had label l
                inv = np.roll(inv, k, axis=1)
        elif kind == "swapv":
            u, v = step[1], step[2]
            mu, mv = inv == u, inv == v
            inv[mu] = v
            inv[mv] = u
        else:
            raise ValueError(f"unknown step {step!r}")
    return inv


def operator_permutation(g: Graph, steps, threads: int = 1) -> np.ndarray:
    """Rank array of an operator given by primitive steps, over all n! labelings.

    The work is split into contiguous chunks when ``threads > 1``; the
    result does not depend on the number of threads.
    """
    words = all_words(g.n)
    adj = g.adjacency
    total = len(words)

    def work(lo, hi):
        inv = invert_words(words[lo:hi])
        out = apply_steps_inverse(adj, steps, inv)
        return rank_words(invert_words(out))

    threads = max(1, int(threads))
    if threads == 1 or total < 4096:
        return work(0, total)
    bounds = np.linspace(0, total, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda k: work(bounds[k], bounds[k + 1]), range(threads)))
    return np.concatenate(parts)


def compose(first: np.ndarray, then: np.ndarray) -> np.ndarray:
    """Permutation array for applying ``first`` and then ``then``."""
    return then[first]


def power(perm: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(len(perm))
    base = perm
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return result


def cycle_labels(perm: np.ndarray) -> tuple[int, np.ndarray]:
    """Label each index by the cycle of ``perm`` that contains it.

    Labels are canonical: cycles are numbered in order of their smallest
    element.
    """
    return edge_components(len(perm), np.arange(len(perm)), perm)


def edge_components(size: int, src: np.ndarray, dst: np.ndarray) -> tuple[int, np.ndarray]:
    """Connected components of an undirected graph on 0..size-1, canonically numbered."""
    mat = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    count, labels = connected_components(mat, directed=False)
    # renumber by smallest member so the labelling is schedule independent
    first = np.full(count, size, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(size))
    order = np.argsort(first, kind="stable")
    renum = np.empty(count, dtype=np.int64)
    renum[order] = np.arange(count)
    return count, renum[labels]


def orbit_sizes_per_element(perm: np.ndarray) -> np.ndarray:
    _, labels = cycle_labels(perm)
    sizes = np.bincount(labels)
    return sizes[labels]


def cycle_type(perm: np.ndarray) -> dict[int, int]:
    """Map orbit size -> number of orbits of that size."""
    _, labels = cycle_labels(perm)
    sizes = np.bincount(labels)
    vals, counts = np.unique(sizes, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}
