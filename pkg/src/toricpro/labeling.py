"""Labelings of a graph and the toggle operators acting on them.

A labeling is a bijection from the vertices 0..n-1 to the labels 1..n.
All operators are pure: they return new :class:`Labeling` objects.

Composite operators are written as toggle words. ``toggle(G, s, i, j)``
swaps labels i and j when the vertices carrying them are not adjacent in
G, and ``tau(G, s, i)`` is the cyclic toggle that pairs i with i+1 and n
with 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Graph, GraphError, is_forest, tree_path


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    forward: tuple[int, ...]

    def __post_init__(self):
        n = len(self.forward)
        if sorted(self.forward) != list(range(1, n + 1)):
            raise LabelingError(f"{self.forward} is not a permutation of 1..{n}")

    @classmethod
    def _trusted(cls, forward: tuple) -> "Labeling":
        # skips the permutation check; callers guarantee a valid word
        obj = object.__new__(cls)
        object.__setattr__(obj, "forward", forward)
        return obj

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "Labeling":
        return cls(tuple(int(x) for x in word))

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_inverse(cls, inverse: Sequence[int]) -> "Labeling":
        fwd = [0] * len(inverse)
        for lab, v in enumerate(inverse, start=1):
            fwd[v] = lab
        return cls(tuple(fwd))

    @classmethod
    def unrank(cls, rank: int, n: int) -> "Labeling":
        """Inverse of :meth:`rank`."""
        if not 0 <= rank < math.factorial(n):
            raise LabelingError(f"rank {rank} out of range for n={n}")
        pool = list(range(1, n + 1))
        word = []
        for i in range(n - 1, -1, -1):
            q, rank = divmod(rank, math.factorial(i))
            word.append(pool.pop(q))
        return cls(tuple(word))

    @property
    def n(self) -> int:
        return len(self.forward)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """inverse[l - 1] is the vertex carrying label l."""
        inv = [0] * self.n
        for v, lab in enumerate(self.forward):
            inv[lab - 1] = v
        return tuple(inv)

    def __getitem__(self, v: int) -> int:
        return self.forward[v]

    def vertex_of(self, label: int) -> int:
        return self.inverse[label - 1]

    def rank(self) -> int:
        """Lexicographic rank of the forward word (Lehmer code), in 0..n!-1."""
        n = self.n
        r = 0
        w = self.forward
        for i in range(n):
            smaller = sum(1 for j in range(i + 1, n) if w[j] < w[i])
            r += smaller * math.factorial(n - 1 - i)
        return r

    def word(self) -> str:
        return format_word(self.forward)

    def __str__(self):
        return self.word()

    def with_swapped_labels(self, i: int, j: int) -> "Labeling":
        w = list(self.forward)
        u, v = self.vertex_of(i), self.vertex_of(j)
        w[u], w[v] = j, i
        return Labeling._trusted(tuple(w))

    def with_swapped_vertices(self, u: int, v: int) -> "Labeling":
        w = list(self.forward)
        w[u], w[v] = w[v], w[u]
        return Labeling._trusted(tuple(w))


def format_word(word: Sequence[int]) -> str:
    if len(word) <= 9:
        return "".join(str(x) for x in word)
    return ",".join(str(x) for x in word)


def parse_labeling(text: str, n: int) -> Labeling:
    text = text.strip()
    if "," in text:
        try:
            word = [int(p) for p in text.split(",")]
        except ValueError:
            raise LabelingError(f"bad labeling {text!r}") from None
    else:
        if n > 9:
            raise LabelingError("labelings with n > 9 must be comma separated")
        if not text.isdigit():
            raise LabelingError(f"bad labeling {text!r}")
        word = [int(c) for c in text]
    if len(word) != n:
        raise LabelingError(f"labeling {text!r} has length {len(word)}, expected {n}")
    if len(set(word)) != n:
        raise LabelingError(f"labeling {text!r} repeats a label")
    if any(not 1 <= x <= n for x in word):
        raise LabelingError(f"labeling {text!r} has a label outside 1..{n}")
    return Labeling(tuple(word))


def _check_n(g: Graph, sigma: Labeling):
    if g.n != sigma.n:
        raise LabelingError(f"labeling has {sigma.n} labels but graph has {g.n} vertices")


def toggle(g: Graph, sigma: Labeling, i: int, j: int) -> Labeling:
    _check_n(g, sigma)
    n = g.n
    if i == j:
        raise LabelingError("toggle needs two distinct labels")
    if not (1 <= i <= n and 1 <= j <= n):
        raise LabelingError(f"toggle labels {(i, j)} out of range 1..{n}")
    if g.adjacent(sigma.vertex_of(i), sigma.vertex_of(j)):
        return sigma
    return sigma.with_swapped_labels(i, j)


def cyclic_partner(i: int, n: int) -> int:
    """Partner label of the cyclic toggle with index i (taken mod n)."""
    i = (i - 1) % n + 1
    return i % n + 1


def tau(g: Graph, sigma: Labeling, i: int) -> Labeling:
    i = (i - 1) % g.n + 1
    return toggle(g, sigma, i, cyclic_partner(i, g.n))


def _run_toggles(g: Graph, sigma: Labeling, pairs) -> Labeling:
    """Apply already-validated label pairs in order; the inner loop of promotion."""
    fwd = list(sigma.forward)
    inv = list(sigma.inverse)
    nbrs = g.neighbors
    for i, j in pairs:
        u, v = inv[i - 1], inv[j - 1]
        if v not in nbrs[u]:
            fwd[u], fwd[v] = j, i
            inv[i - 1], inv[j - 1] = v, u
    return Labeling._trusted(tuple(fwd))


def promotion(g: Graph, sigma: Labeling) -> Labeling:
    _check_n(g, sigma)
    return _run_toggles(g, sigma, [(i, i + 1) for i in range(1, g.n)])


def toric_promotion(g: Graph, sigma: Labeling) -> Labeling:
    _check_n(g, sigma)
    n = g.n
    if n < 2:
        raise LabelingError("toric promotion needs at least two vertices")
    return _run_toggles(g, sigma, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def check_permutation(pi: Sequence[int], n: int) -> tuple[int, ...]:
    pi = tuple(int(x) for x in pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise LabelingError(f"{pi} is not a permutation of 1..{n}")
    return pi


def toric_promotion_pi(g: Graph, pi: Sequence[int], sigma: Labeling) -> Labeling:
    n = g.n
    if n < 2:
        raise LabelingError("toric promotion needs at least two vertices")
    _check_n(g, sigma)
    return _run_toggles(g, sigma, [(i, cyclic_partner(i, n)) for i in check_permutation(pi, n)])


def zeta_permutation(n: int, h: int) -> tuple[int, ...]:
    if not 1 <= h <= n // 2:
        raise LabelingError(f"h={h} out of range 1..{n // 2}")
    return tuple(range(1, n - h + 1)) + tuple(range(n, n - h, -1))


def cyclic_shift(sigma: Labeling, k: int = 1) -> Labeling:
    n = sigma.n
    return Labeling._trusted(tuple((lab - 1 + k) % n + 1 for lab in sigma.forward))


def cpro(g: Graph, sigma: Labeling) -> Labeling:
    return cyclic_shift(promotion(g, sigma), 1)


def _check_path(g: Graph, path: Sequence[int]):
    if not path:
        raise GraphError("empty path")
    if len(set(path)) != len(path):
        raise GraphError(f"path {tuple(path)} repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not g.adjacent(a, b):
            raise GraphError(f"path {tuple(path)} uses non-edge {(a, b)}")


def jdt_slide(g: Graph, sigma: Labeling, path: Sequence[int]) -> Labeling:
    """Slide the label at path[0] to path[-1], swapping along each edge."""
    _check_n(g, sigma)
    _check_path(g, path)
    w = list(sigma.forward)
    for a, b in zip(path, path[1:]):
        w[a], w[b] = w[b], w[a]
    return Labeling._trusted(tuple(w))


def cpro_path(g: Graph, sigma: Labeling) -> tuple[int, ...]:
    """The sliding path P with jdt_slide(g, sigma, P) == cpro(g, sigma).

    Starts at the vertex labelled 1 and repeatedly steps to the neighbour
    carrying the smallest label above the current one.
    """
    _check_n(g, sigma)
    v = sigma.vertex_of(1)
    path = [v]
    while True:
        cur = sigma[v]
        larger = [sigma[w] for w in g.neighbors[v] if sigma[w] > cur]
        if not larger:
            return tuple(path)
        v = sigma.vertex_of(min(larger))
        path.append(v)


def forest_power_path(g: Graph, sigma: Labeling, ell: int) -> tuple[int, ...]:
    if ell < 0:
        raise LabelingError("ell must be nonnegative")
    if not is_forest(g):
        raise GraphError("forest_power_path needs a forest")
    start = sigma.vertex_of(1)
    path = (start,)
    cur = sigma
    for _ in range(ell):
        step = cpro_path(g, cur)
        path = tree_path(g, start, step[-1])
        cur = cpro(g, cur)
    return path


def factored_tpro_power(g: Graph, sigma: Labeling, s: int, k: int) -> Labeling:
    """Evaluate tau_n tau_{n-1} ... tau_{n-k+1} c^{-k} (cPro)^{ns+k} at sigma.

    This equals toric promotion iterated (n-1)s+k times.
    """
    n = g.n
    if n < 2:
        raise LabelingError("needs n >= 2")
    if s < 0 or not 0 <= k <= n - 2:
        raise LabelingError(f"need s >= 0 and 0 <= k <= {n - 2}, got s={s}, k={k}")
    for _ in range(n * s + k):
        sigma = cpro(g, sigma)
    sigma = cyclic_shift(sigma, -k)
    for i in range(n - k + 1, n + 1):
        sigma = tau(g, sigma, i)
    return sigma


def iterate(op, sigma: Labeling, times: int) -> Labeling:
    for _ in range(times):
        sigma = op(sigma)
    return sigma


# --- operator specs -------------------------------------------------------

# Primitive steps, in application order:
#   ("toggle", i, j)  conditional swap of labels i and j
#   ("shift", k)      add k to every label mod n
#   ("swapv", u, v)   unconditional swap of the labels on vertices u and v


@dataclass(frozen=True)
class OperatorSpec:
    """A composable operator on labelings.

    ``kind`` is one of toggle, promotion, toric_promotion,
    toric_promotion_pi, cyclic_shift, composition. For a composition the
    parts are applied left to right (first part first).
    """

    kind: str
    params: tuple = ()
    parts: tuple["OperatorSpec", ...] = ()
    text: str | None = None

    KINDS = ("toggle", "promotion", "toric_promotion", "toric_promotion_pi", "cyclic_shift", "composition")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise LabelingError(f"unknown operator kind {self.kind!r}")
        if self.kind == "toggle":
            i, j = self.params
            if i == j:
                raise LabelingError("toggle needs two distinct labels")

    @classmethod
    def toggle(cls, i: int, j: int) -> "OperatorSpec":
        return cls("toggle", (int(i), int(j)))

    @classmethod
    def promotion(cls) -> "OperatorSpec":
        return cls("promotion", text="pro")

    @classmethod
    def toric_promotion(cls) -> "OperatorSpec":
        return cls("toric_promotion", text="tpro")

    @classmethod
    def toric_promotion_pi(cls, pi: Sequence[int]) -> "OperatorSpec":
        pi = tuple(int(x) for x in pi)
        return cls("toric_promotion_pi", pi, text="tpro-pi:" + format_word(pi))

    @classmethod
    def cyclic_shift(cls, k: int = 1) -> "OperatorSpec":
        return cls("cyclic_shift", (int(k),), text=f"c:{k}")

    @classmethod
    def compose(cls, parts: Iterable["OperatorSpec"], text: str | None = None) -> "OperatorSpec":
        return cls("composition", (), tuple(parts), text)

    @classmethod
    def cpro(cls) -> "OperatorSpec":
        return cls.compose([cls.promotion(), cls.cyclic_shift(1)], text="cpro")

    @classmethod
    def zeta(cls, n: int, h: int) -> "OperatorSpec":
        return cls("toric_promotion_pi", zeta_permutation(n, h), text=f"zeta:{h}")

    def __str__(self):
        if self.text:
            return self.text
        if self.kind == "toggle":
            return "toggles:%d-%d" % self.params
        if self.kind == "composition":
            return "compose(" + ", ".join(str(p) for p in self.parts) + ")"
        return self.kind

    def steps(self, n: int) -> list[tuple]:
        """Flatten to primitive steps in application order, validated for n."""
        k = self.kind
        if k == "toggle":
            i, j = self.params
            if not (1 <= i <= n and 1 <= j <= n):
                raise LabelingError(f"toggle labels {(i, j)} out of range 1..{n}")
            return [("toggle", i, j)]
        if k == "promotion":
            return [("toggle", i, i + 1) for i in range(1, n)]
        if k == "toric_promotion":
            if n < 2:
                raise LabelingError("toric promotion needs at least two vertices")
            return [("toggle", i, i + 1) for i in range(1, n)] + [("toggle", n, 1)]
        if k == "toric_promotion_pi":
            if n < 2:
                raise LabelingError("toric promotion needs at least two vertices")
            pi = check_permutation(self.params, n)
            return [("toggle", i, cyclic_partner(i, n)) for i in pi]
        if k == "cyclic_shift":
            return [("shift", self.params[0] % n)]
        out = []
        for p in self.parts:
            out.extend(p.steps(n))
        return out

    def apply(self, g: Graph, sigma: Labeling) -> Labeling:
        return apply_steps(g, self.steps(g.n), sigma)


def apply_steps(g: Graph, steps: Sequence[tuple], sigma: Labeling) -> Labeling:
    _check_n(g, sigma)
    for step in steps:
        if step[0] == "toggle":
            sigma = toggle(g, sigma, step[1], step[2])
        elif step[0] == "shift":
            sigma = cyclic_shift(sigma, step[1])
        elif step[0] == "swapv":
            sigma = sigma.with_swapped_vertices(step[1], step[2])
        else:
            raise LabelingError(f"unknown step {step!r}")
    return sigma


def parse_operator(text: str, n: int) -> OperatorSpec:
    """Parse ``pro | tpro | cpro | c:k | tpro-pi:PERM | zeta:h | toggles:i-j,...``."""
    raw = text.strip()
    head, _, arg = raw.partition(":")
    head = head.strip().lower()
    try:
        if head == "pro" and not arg:
            return OperatorSpec.promotion()
        if head == "tpro" and not arg:
            return OperatorSpec.toric_promotion()
        if head == "cpro" and not arg:
            return OperatorSpec.cpro()
        if head == "c":
            return OperatorSpec.cyclic_shift(int(arg))
        if head == "tpro-pi":
            pi = parse_labeling(arg, n).forward
            return OperatorSpec.toric_promotion_pi(pi)
        if head == "zeta":
            return OperatorSpec.zeta(n, int(arg))
        if head == "toggles":
            parts = []
            for item in arg.split(","):
                i, sep, j = item.strip().partition("-")
                if not sep:
                    raise LabelingError(f"bad toggle {item!r}, expected i-j")
                parts.append(OperatorSpec.toggle(int(i), int(j)))
            if not parts:
                raise LabelingError("empty toggle word")
            op = OperatorSpec.compose(parts, text=raw)
            op.steps(n)
            return op
    except ValueError as exc:
        if isinstance(exc, LabelingError):
            raise
        raise LabelingError(f"bad operator spec {raw!r}: {exc}") from None
    raise LabelingError(f"unknown operator spec {raw!r}")
