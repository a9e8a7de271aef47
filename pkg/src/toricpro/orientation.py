"""Acyclic orientations, flips and double flips.

An orientation is stored as an integer bit vector over the canonical edge
order of its graph: bit k is 0 when edge k = (a, b), a < b, points a -> b
and 1 when it points b -> a.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable

import numpy as np

from .config import check_cap
from .graph import Graph, connected_components
from .labeling import Labeling


class OrientationError(ValueError):
    pass


class NotSource(OrientationError):
    pass


class NotSink(OrientationError):
    pass


class SameVertex(OrientationError):
    pass


class AdjacentVertices(OrientationError):
    pass


class _Masks:
    """Per-vertex edge masks used for O(1) source/sink tests."""

    def __init__(self, g: Graph):
        self.low = [0] * g.n  # edges where v is the smaller endpoint
        self.high = [0] * g.n
        for k, (a, b) in enumerate(g.edges):
            self.low[a] |= 1 << k
            self.high[b] |= 1 << k
        self.inc = [lo | hi for lo, hi in zip(self.low, self.high)]

    def indeg_zero(self, bits: int, v: int) -> bool:
        # incoming: v low and reversed, or v high and forward
        return not ((self.low[v] & bits) | (self.high[v] & ~bits))

    def outdeg_zero(self, bits: int, v: int) -> bool:
        return not ((self.low[v] & ~bits) | (self.high[v] & bits))


@lru_cache(maxsize=4096)
def _masks(g: Graph) -> _Masks:
    return _Masks(g)


def is_acyclic_bits(g: Graph, bits: int) -> bool:
    m = _masks(g)
    alive = set(range(g.n))
    remaining = (1 << len(g.edges)) - 1
    while alive:
        # peel sources of the remaining subgraph
        peeled = [v for v in alive if not ((m.low[v] & bits & remaining) | (m.high[v] & ~bits & remaining))]
        if not peeled:
            return False
        for v in peeled:
            alive.discard(v)
            remaining &= ~m.inc[v]
    return True


@dataclass(frozen=True)
class AcyclicOrientation:
    graph: Graph
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < 1 << len(self.graph.edges):
            raise OrientationError("orientation bits out of range")
        if not is_acyclic_bits(self.graph, self.bits):
            raise OrientationError("orientation has a directed cycle")

    @classmethod
    def from_arcs(cls, g: Graph, arcs: Iterable[tuple[int, int]]) -> "AcyclicOrientation":
        bits = 0
        seen = set()
        for u, v in arcs:
            e = (min(u, v), max(u, v))
            if e not in g.edge_index:
                raise OrientationError(f"{(u, v)} is not an edge")
            seen.add(e)
            if u > v:
                bits |= 1 << g.edge_index[e]
        if len(seen) != len(g.edges):
            raise OrientationError("every edge needs a direction")
        return cls(g, bits)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        out = []
        for k, (a, b) in enumerate(self.graph.edges):
            out.append((b, a) if self.bits >> k & 1 else (a, b))
        return tuple(out)

    def is_source(self, v: int) -> bool:
        return _masks(self.graph).indeg_zero(self.bits, v)

    def is_sink(self, v: int) -> bool:
        return _masks(self.graph).outdeg_zero(self.bits, v)

    def render(self) -> str:
        return " ".join(f"{u}->{v}" for u, v in self.arcs) or "(no edges)"

    def __str__(self):
        return self.render()


def induced_orientation(g: Graph, sigma: Labeling) -> AcyclicOrientation:
    bits = 0
    for k, (a, b) in enumerate(g.edges):
        if sigma[a] > sigma[b]:
            bits |= 1 << k
    return AcyclicOrientation(g, bits)


def induced_bits_batch(g: Graph, words: np.ndarray) -> np.ndarray:
    """Orientation bits induced by each row of a batch of forward words."""
    bits = np.zeros(len(words), dtype=np.int64)
    for k, (a, b) in enumerate(g.edges):
        bits |= (words[:, a] > words[:, b]).astype(np.int64) << k
    return bits


def sources_and_sinks(alpha: AcyclicOrientation) -> tuple[frozenset, frozenset]:
    g = alpha.graph
    return (frozenset(v for v in range(g.n) if alpha.is_source(v)),
            frozenset(v for v in range(g.n) if alpha.is_sink(v)))


def flip(alpha: AcyclicOrientation, v: int) -> AcyclicOrientation:
    if not (alpha.is_source(v) or alpha.is_sink(v)):
        raise OrientationError(f"vertex {v} is neither a source nor a sink")
    return AcyclicOrientation(alpha.graph, alpha.bits ^ _masks(alpha.graph).inc[v])


def double_flip(alpha: AcyclicOrientation, u: int, v: int) -> AcyclicOrientation:
    """Turn source u into a sink and sink v into a source at the same time."""
    g = alpha.graph
    if u == v:
        raise SameVertex(f"double flip needs distinct vertices, got {u} twice")
    if not alpha.is_source(u):
        raise NotSource(f"vertex {u} is not a source")
    if not alpha.is_sink(v):
        raise NotSink(f"vertex {v} is not a sink")
    if g.adjacent(u, v):
        raise AdjacentVertices(f"vertices {u} and {v} are adjacent")
    m = _masks(g)
    return AcyclicOrientation(g, alpha.bits ^ m.inc[u] ^ m.inc[v])


def acyclic_bits(g: Graph) -> list[int]:
    check_cap("edges", len(g.edges))
    return [b for b in range(1 << len(g.edges)) if is_acyclic_bits(g, b)]


def enumerate_acyclic_orientations(g: Graph) -> frozenset:
    return frozenset(AcyclicOrientation(g, b) for b in acyclic_bits(g))


def _flip_moves(g: Graph, bits: int):
    m = _masks(g)
    for v in range(g.n):
        if m.indeg_zero(bits, v) or m.outdeg_zero(bits, v):
            yield bits ^ m.inc[v]


def _double_flip_moves(g: Graph, bits: int):
    m = _masks(g)
    sources = [v for v in range(g.n) if m.indeg_zero(bits, v)]
    sinks = [v for v in range(g.n) if m.outdeg_zero(bits, v)]
    for u in sources:
        for v in sinks:
            if u != v and not g.adjacent(u, v):
                yield bits ^ m.inc[u] ^ m.inc[v]


def _closure_classes(g: Graph, moves) -> list[list[int]]:
    """Breadth-first closure of Acyc(g) under ``moves``; classes sorted by bits."""
    universe = acyclic_bits(g)
    seen = set()
    classes = []
    for start in universe:
        if start in seen:
            continue
        seen.add(start)
        block = [start]
        queue = deque([start])
        while queue:
            b = queue.popleft()
            for c in moves(g, b):
                if c not in seen:
                    seen.add(c)
                    block.append(c)
                    queue.append(c)
        classes.append(sorted(block))
    return classes


@dataclass(frozen=True)
class OrientationPartition:
    graph: Graph
    kind: str  # "flip" or "double-flip"
    classes: tuple[tuple[int, ...], ...]  # bit vectors, each class sorted

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {b: k for k, block in enumerate(self.classes) for b in block}

    def orientations(self, k: int) -> frozenset:
        return frozenset(AcyclicOrientation(self.graph, b) for b in self.classes[k])

    def __len__(self):
        return len(self.classes)


def flip_classes(g: Graph) -> OrientationPartition:
    return OrientationPartition(g, "flip", tuple(tuple(c) for c in _closure_classes(g, _flip_moves)))


def double_flip_classes(g: Graph) -> OrientationPartition:
    return OrientationPartition(g, "double-flip", tuple(tuple(c) for c in _closure_classes(g, _double_flip_moves)))


def nu(g: Graph) -> int:
    return gcd(*connected_components(g).sizes())


def linear_extensions(g: Graph, orientations: Iterable[AcyclicOrientation]) -> frozenset:
    from . import batch

    wanted = {a.bits for a in orientations}
    if not wanted:
        return frozenset()
    words = batch.all_words(g.n)
    bits = induced_bits_batch(g, words)
    hits = np.nonzero(np.isin(bits, list(wanted)))[0]
    return frozenset(Labeling(tuple(int(x) + 1 for x in words[r])) for r in hits)


def refinement_counts(flip: OrientationPartition, dflip: OrientationPartition) -> list[int] | None:
    """Number of double-flip classes inside each flip class, or None when
    some double-flip class straddles two flip classes."""
    counts = [0] * len(flip)
    for block in dflip.classes:
        owners = {flip.class_of[b] for b in block}
        if len(owners) != 1:
            return None
        counts[owners.pop()] += 1
    return counts
