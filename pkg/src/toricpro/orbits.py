"""Orbits, censuses and the verification sweeps.

Full censuses run on the batch engine (every labeling at once). Sampled
checks and single orbits use the scalar operators in :mod:`labeling`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import batch
from .config import check_cap
from .fs import CheckReport, inversion_isomorphism_check, verify_component_correspondence, verify_component_cycle
from .graph import (Graph, GraphError, complement, connected_components, enumerate_forests,
                    enumerate_graphs, enumerate_trees, from_prufer, is_connected, is_forest,
                    make_generator)
from .labeling import (Labeling, OperatorSpec, cpro, cpro_path, cyclic_shift,
                       factored_tpro_power, forest_power_path, iterate, jdt_slide, tau,
                       toric_promotion, zeta_permutation)
from .orientation import double_flip_classes, flip_classes, nu, refinement_counts

DEFAULT_SEED = 2023


def orbit(g: Graph, op: OperatorSpec, sigma: Labeling, limit: int | None = None) -> list[Labeling]:
    steps = op.steps(g.n)
    limit = limit if limit is not None else math.factorial(g.n)
    out = [sigma]
    cur = op.apply(g, sigma) if steps else sigma
    while cur != sigma:
        out.append(cur)
        if len(out) > limit:
            raise RuntimeError("orbit did not close; operator is not a bijection")
        cur = op.apply(g, cur)
    return out


@dataclass
class CensusReport:
    graph: str
    n: int
    operator: str
    orbit_sizes: dict[int, int]
    labelings: int
    verdicts: list[CheckReport] = field(default_factory=list)
    seed: int = DEFAULT_SEED

    @property
    def order(self) -> int:
        return math.lcm(*self.orbit_sizes) if self.orbit_sizes else 1

    def as_dict(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "operator": self.operator,
            "orbit_sizes": {str(k): v for k, v in sorted(self.orbit_sizes.items())},
            "order": str(self.order),
            "labelings": self.labelings,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "seed": self.seed,
        }


def operator_permutation(g: Graph, op: OperatorSpec, threads: int = 1) -> np.ndarray:
    check_cap("labelings", g.n)
    return batch.operator_permutation(g, op.steps(g.n), threads=threads)


def census(g: Graph, op: OperatorSpec, threads: int = 1, seed: int = DEFAULT_SEED) -> CensusReport:
    perm = operator_permutation(g, op, threads)
    sizes = batch.cycle_type(perm)
    total = len(perm)
    rep = CensusReport(str(g), g.n, str(op), sizes, total, seed=seed)
    conserved = sum(s * c for s, c in sizes.items()) == total == math.factorial(g.n)
    rep.verdicts.append(CheckReport("census_conservation", conserved, checked=total))
    if op.kind == "toric_promotion" and g.n >= 2 and is_forest(g):
        rep.verdicts.append(_forest_formula_check(g, perm))
    return rep


def operator_order(g: Graph, op: OperatorSpec, threads: int = 1) -> int:
    return census(g, op, threads).order


def predicted_orbit_size(g: Graph, sigma: Labeling) -> int:
    if g.n < 2:
        raise GraphError("needs at least two vertices")
    if not is_forest(g):
        raise GraphError("the orbit formula is for forests")
    t = len(connected_components(g).block_of(sigma.vertex_of(1)))
    return (g.n - 1) * t // math.gcd(t, g.n)


def predicted_sizes_batch(g: Graph) -> np.ndarray:
    """Predicted toric promotion orbit size for every labeling, by rank."""
    n = g.n
    comp_size = np.zeros(n, dtype=np.int64)
    for block in connected_components(g).blocks:
        for v in block:
            comp_size[v] = len(block)
    t = comp_size[batch.invert_words(batch.all_words(n))[:, 0]]
    return (n - 1) * t // np.gcd(t, n)


def _first_bad(g: Graph, bad: np.ndarray, note: str = "") -> str | None:
    if not bad.size:
        return None
    return f"{g}: {Labeling.unrank(int(bad[0]), g.n)}{note}"


def _forest_formula_check(g: Graph, perm: np.ndarray) -> CheckReport:
    measured = batch.orbit_sizes_per_element(perm)
    predicted = predicted_sizes_batch(g)
    bad = np.nonzero(measured != predicted)[0]
    return CheckReport("forest_orbit_formula", bad.size == 0, len(perm), _first_bad(g, bad))


# --- verification scopes --------------------------------------------------


@dataclass(frozen=True)
class VerificationScope:
    family: str = "trees"  # trees | forests | graphs | connected
    n_min: int = 2
    n_max: int = 6
    exhaustive_max_n: int = 6  # above this, graphs are sampled
    sampled_graphs: int = 200
    labelings_per_graph: int | None = None  # None = full census per graph
    seed: int = DEFAULT_SEED
    graphs: tuple[Graph, ...] = ()  # explicit graphs, used instead of the family when given

    def as_dict(self) -> dict:
        return {
            "family": self.family if not self.graphs else "explicit",
            "n_min": self.n_min,
            "n_max": self.n_max,
            "exhaustive_max_n": self.exhaustive_max_n,
            "sampled_graphs": self.sampled_graphs,
            "labelings_per_graph": self.labelings_per_graph,
            "seed": self.seed,
        }


def random_tree(n: int, rng: random.Random) -> Graph:
    if n == 2:
        return from_prufer([])
    return from_prufer([rng.randrange(n) for _ in range(n - 2)])


def random_forest(n: int, rng: random.Random) -> Graph:
    # random tree, then drop each edge with probability 1/3
    t = random_tree(n, rng)
    kept = [e for e in t.edges if rng.random() >= 1 / 3]
    return Graph(n, tuple(kept))


def scope_graphs(scope: VerificationScope) -> Iterator[tuple[Graph, bool]]:
    """Yield (graph, exhaustive?) pairs covered by ``scope``."""
    if scope.graphs:
        for g in scope.graphs:
            yield g, True
        return
    for n in range(scope.n_min, scope.n_max + 1):
        if n <= scope.exhaustive_max_n:
            if scope.family == "trees":
                it = enumerate_trees(n)
            elif scope.family == "forests":
                it = enumerate_forests(n)
            elif scope.family == "graphs":
                it = enumerate_graphs(n)
            elif scope.family == "connected":
                it = (g for g in enumerate_graphs(n) if is_connected(g))
            else:
                raise ValueError(f"unknown family {scope.family!r}")
            for g in it:
                yield g, True
        else:
            rng = random.Random(f"{scope.seed}:{scope.family}:{n}")
            for _ in range(scope.sampled_graphs):
                if scope.family == "trees":
                    yield random_tree(n, rng), False
                elif scope.family == "forests":
                    yield random_forest(n, rng), False
                else:
                    raise ValueError(f"family {scope.family!r} has no sampler")


@dataclass
class VerificationReport:
    suite: str
    scope: dict
    checks: list[CheckReport]
    rows: list[dict] = field(default_factory=list)
    # findings are reported outcomes that do not count as failures
    findings_only: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        d = {"suite": self.suite, "scope": self.scope,
             "checks": [c.as_dict() for c in self.checks], "pass": self.passed}
        if self.rows:
            d["rows"] = self.rows
        return d


class _Tally:
    def __init__(self, name):
        self.report = CheckReport(name, True)

    def add(self, count: int, counterexample: str | None):
        self.report.checked += count
        if counterexample is not None and self.report.passed:
            self.report.passed = False
            self.report.counterexample = counterexample


def _sampled_labelings(g: Graph, k: int, rng: random.Random) -> list[Labeling]:
    out = []
    for _ in range(k):
        w = list(range(1, g.n + 1))
        rng.shuffle(w)
        out.append(Labeling(tuple(w)))
    return out


def verify_forest_theorem(scope: VerificationScope, threads: int = 1) -> VerificationReport:
    """Measured toric promotion orbit sizes against (n-1) t / gcd(t, n).

    On trees also checks that TPro^(n-1) is the identity. Every orbit size
    is checked for divisibility by n-1.
    """
    formula = _Tally("forest_orbit_formula")
    divisible = _Tally("orbit_size_divisible_by_n_minus_1")
    power_id = _Tally("tree_tpro_power_n_minus_1_is_identity")
    graphs = 0
    rng = random.Random(f"{scope.seed}:labelings")
    for g, _ in scope_graphs(scope):
        if not is_forest(g) or g.n < 2:
            raise GraphError(f"{g} is not a forest with at least two vertices")
        graphs += 1
        n = g.n
        tree = len(g.edges) == n - 1
        if scope.labelings_per_graph is None:
            perm = operator_permutation(g, OperatorSpec.toric_promotion(), threads)
            measured = batch.orbit_sizes_per_element(perm)
            predicted = predicted_sizes_batch(g)
            formula.add(len(perm), _first_bad(g, np.nonzero(measured != predicted)[0]))
            divisible.add(len(perm), _first_bad(g, np.nonzero(measured % (n - 1))[0]))
            if tree:
                p = batch.power(perm, n - 1)
                power_id.add(len(perm), _first_bad(g, np.nonzero(p != np.arange(len(perm)))[0]))
        else:
            op = lambda s: toric_promotion(g, s)
            for s in _sampled_labelings(g, scope.labelings_per_graph, rng):
                size = len(orbit(g, OperatorSpec.toric_promotion(), s))
                formula.add(1, None if size == predicted_orbit_size(g, s) else f"{g}: {s}")
                divisible.add(1, None if size % (n - 1) == 0 else f"{g}: {s}")
                if tree:
                    power_id.add(1, None if iterate(op, s, n - 1) == s else f"{g}: {s}")
    checks = [formula.report, divisible.report]
    if power_id.report.checked:
        checks.append(power_id.report)
    rep = VerificationReport("forest_theorem", scope.as_dict(), checks)
    rep.scope["graphs_checked"] = graphs
    return rep


def verify_cpro_order(scope: VerificationScope, threads: int = 1) -> VerificationReport:
    """Every orbit of cPro on a tree with n vertices has size n."""
    tally = _Tally("tree_cpro_orbits_have_size_n")
    graphs = 0
    for g, _ in scope_graphs(scope):
        if not (is_forest(g) and len(g.edges) == g.n - 1):
            raise GraphError(f"{g} is not a tree")
        graphs += 1
        perm = operator_permutation(g, OperatorSpec.cpro(), threads)
        sizes = batch.orbit_sizes_per_element(perm)
        tally.add(len(perm), _first_bad(g, np.nonzero(sizes != g.n)[0]))
    rep = VerificationReport("cpro_order", scope.as_dict(), [tally.report])
    rep.scope["graphs_checked"] = graphs
    return rep


def verify_zeta_conjecture(n: int, h: int, threads: int = 1) -> dict:
    g = make_generator("path", n)
    op = OperatorSpec.zeta(n, h)
    order = operator_order(g, op, threads)
    expected = h * (n - h)
    return {"n": n, "h": h, "permutation": "".join(map(str, zeta_permutation(n, h))) if n <= 9
            else ",".join(map(str, zeta_permutation(n, h))),
            "order": str(order), "expected": str(expected), "match": order == expected}


def zeta_table(n_min: int = 4, n_max: int = 8, threads: int = 1) -> VerificationReport:
    rows = [verify_zeta_conjecture(n, h, threads) for n in range(n_min, n_max + 1) for h in range(1, n // 2 + 1)]
    h1 = [r for r in rows if r["h"] == 1]
    check = CheckReport("h1_rows_have_order_n_minus_1", all(r["match"] for r in h1), checked=len(h1))
    bad = [r for r in h1 if not r["match"]]
    if bad:
        check.counterexample = f"path:{bad[0]['n']} order {bad[0]['order']}"
    mismatches = sum(1 for r in rows if not r["match"])
    rep = VerificationReport("zeta_conjecture", {"graphs": "paths", "n_min": n_min, "n_max": n_max},
                             [check], rows=rows, findings_only=True)
    rep.scope["rows"] = len(rows)
    rep.scope["conjecture_mismatches"] = mismatches
    return rep


def match_conjugacy_class(g: Graph, pi: Sequence[int], threads: int = 1) -> set[int]:
    """h values whose zeta operator has the same cycle type as TPro_pi.

    Equal cycle type is necessary (and sufficient) for two permutations of
    Lambda_G to be conjugate.
    """
    target = census(g, OperatorSpec.toric_promotion_pi(pi), threads).orbit_sizes
    return {h for h in range(1, g.n // 2 + 1)
            if census(g, OperatorSpec.zeta(g.n, h), threads).orbit_sizes == target}


# --- identities -------------------------------------------------------------


def _all_labelings(n: int) -> Iterator[Labeling]:
    for w in batch.all_words(n).tolist():
        yield Labeling(tuple(x + 1 for x in w))


def lemma_checks(g: Graph, labelings: Iterable[Labeling], s_max: int = 3) -> list[CheckReport]:
    """Run the toggle/shift identities on ``g`` for each labeling given."""
    n = g.n
    names = ["shift_conjugates_toggles", "tpro_power_factoring", "cpro_is_jdt_slide",
             "forest_power_single_path", "shifted_toggle_map_commutes_with_tpro",
             "toggle_involution"]
    tallies = {k: _Tally(k) for k in names}
    forest = is_forest(g)
    tp = lambda s: toric_promotion(g, s)
    for s in labelings:
        where = f"{g}: {s}"
        # c tau_i = tau_{i+1} c
        ok = all(cyclic_shift(tau(g, s, i), 1) == tau(g, cyclic_shift(s, 1), i + 1) for i in range(1, n + 1))
        tallies["shift_conjugates_toggles"].add(1, None if ok else where)
        ok = all(tau(g, tau(g, s, i), i) == s for i in range(1, n + 1))
        tallies["toggle_involution"].add(1, None if ok else where)
        # factoring of TPro powers
        powers = [s]
        for _ in range((n - 1) * s_max + n - 2):
            powers.append(tp(powers[-1]))
        ok = all(factored_tpro_power(g, s, a, k) == powers[(n - 1) * a + k]
                 for a in range(s_max + 1) for k in range(n - 1))
        tallies["tpro_power_factoring"].add(1, None if ok else where)
        ok = jdt_slide(g, s, cpro_path(g, s)) == cpro(g, s)
        tallies["cpro_is_jdt_slide"].add(1, None if ok else where)
        if forest:
            cur, ok = s, True
            for ell in range(2 * n + 1):
                path = forest_power_path(g, s, ell)
                if path[0] != s.vertex_of(1) or jdt_slide(g, s, path) != cur:
                    ok = False
                    break
                cur = cpro(g, cur)
            tallies["forest_power_single_path"].add(1, None if ok else f"{where} (ell={ell})")
        ok = True
        for m in range(2 * n + 1):
            phi = cyclic_shift(s, m)
            for i in range(m, 0, -1):
                phi = tau(g, phi, i)
            lhs = phi  # phi_m(s), then TPro
            lhs = tp(lhs)
            rhs = cyclic_shift(tp(s), m)
            for i in range(m, 0, -1):
                rhs = tau(g, rhs, i)
            if lhs != rhs:
                ok = False
                break
        tallies["shifted_toggle_map_commutes_with_tpro"].add(1, None if ok else f"{where} (m={m})")
    out = [t.report for t in tallies.values()]
    if not forest:
        out = [r for r in out if r.name != "forest_power_single_path"]
    return out


def verify_lemmas(n_exhaustive: int = 5, sampled_n: Sequence[int] = (6, 7), random_trees: int = 20,
                  sampled_labelings: int = 1000, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Identity suite on paths, stars and seeded random trees."""
    merged: dict[str, _Tally] = {}
    rng = random.Random(f"{seed}:lemmas")

    def merge(reports):
        for r in reports:
            t = merged.setdefault(r.name, _Tally(r.name))
            t.add(r.checked, r.counterexample)

    graphs_checked = 0
    for n in list(range(2, n_exhaustive + 1)) + list(sampled_n):
        graphs = [make_generator("path", n), make_generator("star", n)]
        graphs += [random_tree(n, rng) for _ in range(random_trees)]
        graphs_checked += len(graphs)
        if n <= n_exhaustive:
            for g in graphs:
                merge(lemma_checks(g, _all_labelings(n)))
        else:
            # exactly sampled_labelings labelings per n, dealt round robin over the graphs
            share = [sampled_labelings // len(graphs) + (k < sampled_labelings % len(graphs))
                     for k in range(len(graphs))]
            for g, k in zip(graphs, share):
                merge(lemma_checks(g, _sampled_labelings(g, k, rng)))
    scope = {"families": ["path", "star", "random trees"], "n_exhaustive_max": n_exhaustive,
             "sampled_n": list(sampled_n), "random_trees_per_n": random_trees,
             "sampled_labelings_per_n": sampled_labelings, "seed": seed,
             "graphs_checked": graphs_checked}
    return VerificationReport("lemmas", scope, [t.report for t in merged.values()])


def fs_graph_checks(g: Graph) -> list[CheckReport]:
    fl, df = flip_classes(g), double_flip_classes(g)
    counts = refinement_counts(fl, df)
    nu_g = nu(g)
    ok = counts is not None and all(c == nu_g for c in counts)
    refine = CheckReport("flip_class_splits_into_nu_double_flip_classes", ok, checked=len(fl),
                         counterexample=None if ok else f"{g}: counts {counts}, nu {nu_g}")
    inv = inversion_isomorphism_check(complement(g), make_generator("cycle", g.n))
    inv.counterexample = inv.counterexample and f"{g}: {inv.counterexample}"
    return [refine, verify_component_correspondence(g, df), verify_component_cycle(g, fl, df), inv]


def verify_fs(n_max: int = 5, n_min: int = 2, graphs: Sequence[Graph] | None = None) -> VerificationReport:
    """Flip/double-flip counting, FS component correspondence and the shift cycle.

    Default scope: every connected graph and every forest on n_min..n_max vertices.
    """
    if graphs is None:
        graphs = []
        for n in range(n_min, n_max + 1):
            graphs += [g for g in enumerate_graphs(n) if is_connected(g) or is_forest(g)]
    merged: dict[str, _Tally] = {}
    for g in graphs:
        for r in fs_graph_checks(g):
            t = merged.setdefault(r.name, _Tally(r.name))
            t.add(r.checked, r.counterexample)
    scope = {"families": ["connected graphs", "forests"], "n_min": n_min, "n_max": n_max,
             "graphs_checked": len(graphs)}
    return VerificationReport("friends_and_strangers", scope, [t.report for t in merged.values()])
