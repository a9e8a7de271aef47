"""Friends-and-strangers graphs FS(X, Y).

Bijections V(X) -> V(Y) are encoded as labelings: vertex y of Y is label
y + 1. With Y = Cycle_n this is exactly a labeling of G = complement(X),
and the FS moves are the cyclic toggles on G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import batch
from .config import check_cap
from .graph import Graph, GraphError, complement, make_generator
from .labeling import Labeling, cyclic_partner, format_word
from .orientation import double_flip_classes, flip_classes, induced_bits_batch, nu


def _check_sizes(x: Graph, y: Graph):
    if x.n != y.n:
        raise GraphError(f"FS(X, Y) needs equal vertex counts, got {x.n} and {y.n}")


def fs_adjacent(x: Graph, y: Graph, s: Labeling, t: Labeling) -> bool:
    """Direct pairwise test of the friends-and-strangers adjacency rule."""
    _check_sizes(x, y)
    if s.n != x.n or t.n != x.n:
        raise GraphError("bijection size does not match the graphs")
    diff = [z for z in range(x.n) if s[z] != t[z]]
    if len(diff) != 2:
        return False
    u, v = diff
    return (x.adjacent(u, v) and y.adjacent(s[u] - 1, s[v] - 1)
            and s[u] == t[v] and s[v] == t[u])


def fs_edges(x: Graph, y: Graph) -> tuple[np.ndarray, np.ndarray]:
    """All FS(X, Y) edges as rank pairs (each edge listed once per X-edge that realises it)."""
    _check_sizes(x, y)
    check_cap("fs", x.n)
    words = batch.all_words(x.n)
    ranks = np.arange(len(words))
    src, dst = [], []
    yadj = y.adjacency
    for u, v in x.edges:
        ok = yadj[words[:, u], words[:, v]]
        swapped = words[ok].copy()
        swapped[:, [u, v]] = swapped[:, [v, u]]
        src.append(ranks[ok])
        dst.append(batch.rank_words(swapped))
    if not src:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(src), np.concatenate(dst)


def _edge_keys(src: np.ndarray, dst: np.ndarray, size: int) -> np.ndarray:
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    keep = lo != hi
    return np.unique(lo[keep] * size + hi[keep])


def fs_component_labels(x: Graph, y: Graph) -> tuple[int, np.ndarray]:
    src, dst = fs_edges(x, y)
    return batch.edge_components(math.factorial(x.n), src, dst)


def fs_components(x: Graph, y: Graph) -> list[list[Labeling]]:
    """Connected components, each sorted by rank; components ordered by smallest member."""
    count, labels = fs_component_labels(x, y)
    blocks = [[] for _ in range(count)]
    for r, lab in enumerate(labels.tolist()):
        blocks[lab].append(r)
    return [[Labeling.unrank(r, x.n) for r in b] for b in blocks]


def toggle_edges(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Edges of FS(complement(g), Cycle_n) generated by the cyclic toggles on g."""
    n = g.n
    check_cap("fs", n)
    src, dst = [], []
    ranks = np.arange(math.factorial(n))
    pairs = {tuple(sorted((i, cyclic_partner(i, n)))) for i in range(1, n + 1)} if n > 1 else set()
    for i, j in sorted(pairs):
        perm = batch.operator_permutation(g, [("toggle", i, j)])
        moved = perm != ranks
        src.append(ranks[moved])
        dst.append(perm[moved])
    if not src:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(src), np.concatenate(dst)


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "counterexample": self.counterexample,
                "checked": self.checked, **({"details": self.details} if self.details else {})}


def _partition_signature(labels: np.ndarray) -> np.ndarray:
    """Canonical relabelling: blocks numbered by first appearance."""
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    renum = np.empty(len(first), dtype=np.int64)
    renum[order] = np.arange(len(first))
    _, inv = np.unique(labels, return_inverse=True)
    return renum[inv]


def _double_flip_labels(g: Graph, dflip=None) -> np.ndarray:
    dflip = dflip if dflip is not None else double_flip_classes(g)
    bits = induced_bits_batch(g, batch.all_words(g.n))
    class_of = dflip.class_of
    return np.fromiter((class_of[b] for b in bits.tolist()), dtype=np.int64, count=len(bits))


def verify_component_correspondence(g: Graph, dflip=None) -> CheckReport:
    """FS(complement(g), Cycle_n) components versus double-flip linear extensions."""
    n = g.n
    x, y = complement(g), make_generator("cycle", n)
    count, fs_labels = fs_component_labels(x, y)
    df_labels = _double_flip_labels(g, dflip)
    a, b = _partition_signature(fs_labels), _partition_signature(df_labels)
    bad = np.nonzero(a != b)[0]
    report = CheckReport("fs_components_match_double_flip_classes", bad.size == 0, checked=len(a),
                         details={"components": int(count), "double_flip_classes": int(df_labels.max() + 1)})
    if bad.size:
        report.counterexample = f"{g}: labeling {Labeling.unrank(int(bad[0]), n)}"
    return report


def verify_component_cycle(g: Graph, flip=None, dflip=None) -> CheckReport:
    """Order the double-flip classes in each flip class so that the cyclic
    shift carries each component isomorphically onto the next."""
    n = g.n
    words = batch.all_words(n)
    size = len(words)
    flip = flip if flip is not None else flip_classes(g)
    dflip = dflip if dflip is not None else double_flip_classes(g)
    nu_g = nu(g)
    labels = _double_flip_labels(g, dflip)
    c = batch.operator_permutation(g, [("shift", 1)])
    report = CheckReport("cyclic_shift_permutes_components", True, checked=size)

    def fail(msg):
        report.passed = False
        if report.counterexample is None:
            report.counterexample = f"{g}: {msg}"
        return report

    # c sends each class into a single class of the same size
    succ = {}
    sizes = np.bincount(labels, minlength=len(dflip))
    for d in range(len(dflip)):
        members = np.nonzero(labels == d)[0]
        targets = np.unique(labels[c[members]])
        if targets.size != 1:
            return fail(f"shift splits double-flip class {d} over {targets.tolist()}")
        succ[d] = int(targets[0])
        if sizes[succ[d]] != sizes[d]:
            return fail(f"shift maps class {d} onto a class of different size")

    orderings = []
    for fc, block in enumerate(flip.classes):
        inside = sorted({dflip.class_of[b] for b in block})
        if len(inside) != nu_g:
            return fail(f"flip class {fc} holds {len(inside)} double-flip classes, expected {nu_g}")
        cycle = [inside[0]]
        while len(cycle) < len(inside):
            nxt = succ[cycle[-1]]
            if nxt in cycle or nxt not in inside:
                return fail(f"shift orbit of class {inside[0]} is {cycle + [nxt]} inside flip class {fc}")
            cycle.append(nxt)
        if succ[cycle[-1]] != cycle[0]:
            return fail(f"shift does not close the cycle {cycle}")
        orderings.append(cycle)

    # adjacency preserved both ways: c(E) == E as edge sets
    src, dst = toggle_edges(g)
    edges = _edge_keys(src, dst, size)
    mapped = _edge_keys(c[src], c[dst], size)
    if not np.array_equal(edges, mapped):
        return fail("cyclic shift does not preserve FS adjacency")
    report.details = {"nu": nu_g, "orderings": orderings}
    return report


def inversion_isomorphism_check(x: Graph, y: Graph) -> CheckReport:
    """sigma -> sigma^{-1} should carry FS(X, Y) onto FS(Y, X)."""
    _check_sizes(x, y)
    n = x.n
    words = batch.all_words(n)
    size = len(words)
    inv_perm = batch.rank_words(batch.invert_words(words))
    src, dst = fs_edges(x, y)
    src2, dst2 = fs_edges(y, x)
    e1 = _edge_keys(inv_perm[src], inv_perm[dst], size)
    e2 = _edge_keys(src2, dst2, size)
    ok = np.array_equal(e1, e2)
    report = CheckReport("inversion_is_isomorphism", ok, checked=size,
                         details={"edges": int(len(e2))})
    if not ok:
        extra = np.setxor1d(e1, e2)
        a, b = divmod(int(extra[0]), size)
        report.counterexample = f"{Labeling.unrank(a, n)} ~ {Labeling.unrank(b, n)}"
    return report


def render_components(blocks) -> list[list[str]]:
    return [sorted(format_word(s.forward) for s in b) for b in blocks]
