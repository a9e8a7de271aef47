"""Simple undirected graphs on vertices 0..n-1.

Edges are kept as sorted pairs in lexicographic order. Everything that
encodes an orientation as a bit vector relies on that order being stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import check_cap


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {(u, v)} is not a canonical pair on {self.n} vertices")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {(u, v)}")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise GraphError("edges must be in canonical order")

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Boolean n x n adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        a.flags.writeable = False
        return a

    @cached_property
    def edge_index(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    def adjacent(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def __str__(self):
        if self.name:
            return self.name
        return f"edges:{self.n};" + ",".join(f"{u}-{v}" for u, v in self.edges)


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[frozenset, ...]

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_of(self, v: int) -> frozenset:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)


def from_edge_list(n: int, pairs: Iterable[Sequence[int]], name: str | None = None) -> Graph:
    if n < 1:
        raise GraphError("n must be positive")
    edges = set()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in edge {(u, v)} for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        edges.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(edges)), name)


def make_generator(family: str, n: int) -> Graph:
    if n < 1:
        raise GraphError("n must be positive")
    name = f"{family}:{n}"
    if family == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif family == "cycle":
        # n == 2 collapses to one edge, n == 1 to no edges
        pairs = [(i, (i + 1) % n) for i in range(n) if n > 1]
    elif family == "star":
        pairs = [(0, i) for i in range(1, n)]
    elif family == "complete":
        pairs = list(itertools.combinations(range(n), 2))
    elif family == "empty":
        pairs = []
    else:
        raise GraphError(f"unknown graph family {family!r}")
    return from_edge_list(n, pairs, name)


def from_prufer(seq: Sequence[int], n: int | None = None) -> Graph:
    """Decode a Prüfer sequence into a labeled tree on ``len(seq) + 2`` vertices."""
    seq = [int(x) for x in seq]
    m = len(seq) + 2
    if n is not None and n != m:
        raise GraphError(f"Prüfer sequence of length {len(seq)} encodes a tree on {m} vertices, not {n}")
    for x in seq:
        if not 0 <= x < m:
            raise GraphError(f"Prüfer entry {x} out of range 0..{m - 1}")
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    edges = []
    # linear-time decoding: pointer to the smallest leaf
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, m - 1))
    return from_edge_list(m, edges, "prufer:" + ",".join(map(str, seq)) if seq else None)


def complement(g: Graph) -> Graph:
    pairs = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.adjacent(u, v)]
    return from_edge_list(g.n, pairs)


def connected_components(g: Graph) -> VertexPartition:
    seen = [False] * g.n
    blocks = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, block = [s], {s}
        while stack:
            u = stack.pop()
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    block.add(w)
                    stack.append(w)
        blocks.append(frozenset(block))
    return VertexPartition(tuple(blocks))


def component_gcd(g: Graph) -> int:
    return gcd(*connected_components(g).sizes())


def is_connected(g: Graph) -> bool:
    return len(connected_components(g).blocks) == 1


def is_forest(g: Graph) -> bool:
    return len(g.edges) == g.n - len(connected_components(g).blocks)


def tree_path(g: Graph, u: int, v: int) -> tuple[int, ...]:
    """The unique path from u to v in the forest g, endpoints included."""
    if not is_forest(g):
        raise GraphError("tree_path needs a forest")
    parent = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for w in g.neighbors[x]:
            if w not in parent:
                parent[w] = x
                stack.append(w)
    if v not in parent:
        raise GraphError(f"vertices {u} and {v} lie in different components")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """All n**(n-2) labeled trees, in lexicographic Prüfer order."""
    if n < 2:
        raise GraphError("trees are enumerated for n >= 2")
    check_cap("trees", n)
    for seq in itertools.product(range(n), repeat=n - 2):
        yield from_prufer(seq)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every simple graph on vertices 0..n-1 (all edge subsets of K_n)."""
    all_pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(all_pairs)):
        yield Graph(n, tuple(p for k, p in enumerate(all_pairs) if mask >> k & 1))


def _acyclic_pairs(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def enumerate_forests(n: int) -> Iterator[Graph]:
    check_cap("forests", n)
    if n < 1:
        raise GraphError("n must be positive")
    all_pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(all_pairs)):
        pairs = tuple(p for k, p in enumerate(all_pairs) if mask >> k & 1)
        if _acyclic_pairs(n, pairs):
            yield Graph(n, pairs)


def parse_edge_file(text: str) -> Graph:
    """Parse the edge-list file format.

    Line 1 holds n; each further non-empty line holds ``u v``. Lines
    starting with ``#`` are comments.
    """
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 1:
                raise GraphError(f"line {lineno}: first line must be a positive vertex count")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        u, v = nums
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range 0..{n - 1}")
        pairs.append((u, v))
    if n is None:
        raise GraphError("empty edge-list file")
    return from_edge_list(n, pairs)
