import itertools

import numpy as np
import pytest

from toricpro.fs import (_edge_keys, fs_adjacent, fs_components, fs_edges, inversion_isomorphism_check,
                         render_components, toggle_edges, verify_component_correspondence,
                         verify_component_cycle)
from toricpro.graph import Graph, complement, enumerate_trees, from_edge_list, make_generator
from toricpro.labeling import Labeling, tau

W = Labeling.from_word
P3 = make_generator("path", 3)
C3 = make_generator("cycle", 3)


def brute_edge_keys(x, y):
    labs = [W(p) for p in itertools.permutations(range(1, x.n + 1))]
    size = len(labs)
    keys = set()
    for a, b in itertools.combinations(labs, 2):
        if fs_adjacent(x, y, a, b):
            ra, rb = sorted((a.rank(), b.rank()))
            keys.add(ra * size + rb)
    return np.array(sorted(keys), dtype=np.int64)


def test_fs_adjacent_examples():
    x = complement(P3)
    assert not fs_adjacent(x, C3, W([1, 2, 3]), W([1, 2, 3]))
    assert fs_adjacent(x, C3, W([1, 2, 3]), W([3, 2, 1]))
    assert not fs_adjacent(x, C3, W([1, 2, 3]), W([2, 3, 1]))
    with pytest.raises(ValueError):
        fs_adjacent(x, make_generator("cycle", 4), W([1, 2, 3]), W([3, 2, 1]))


def test_fs_adjacent_symmetric_irreflexive():
    x = from_edge_list(4, [(0, 1), (1, 3), (0, 2)])
    y = make_generator("cycle", 4)
    labs = [W(p) for p in itertools.permutations(range(1, 5))]
    for a in labs:
        assert not fs_adjacent(x, y, a, a)
        for b in labs:
            assert fs_adjacent(x, y, a, b) == fs_adjacent(x, y, b, a)


PAIRS = [(complement(P3), C3), (make_generator("path", 4), make_generator("star", 4)),
         (from_edge_list(4, [(0, 2), (1, 3)]), make_generator("cycle", 4)),
         (make_generator("complete", 4), make_generator("path", 4)),
         (Graph(3, ()), C3)]


@pytest.mark.parametrize("x,y", PAIRS, ids=lambda g: str(g))
def test_fs_edges_match_pairwise_rule(x, y):
    src, dst = fs_edges(x, y)
    size = len(list(itertools.permutations(range(x.n))))
    assert np.array_equal(_edge_keys(src, dst, size), brute_edge_keys(x, y))


@pytest.mark.parametrize("x,y", PAIRS, ids=lambda g: str(g))
def test_inversion_isomorphism(x, y):
    assert inversion_isomorphism_check(x, y).passed


def test_inversion_edgeless():
    rep = inversion_isomorphism_check(Graph(4, ()), make_generator("cycle", 4))
    assert rep.passed and rep.details["edges"] == 0


def test_fs_components_path3():
    comps = render_components(fs_components(complement(P3), C3))
    assert sorted(comps) == [["123", "321"], ["132", "231"], ["213", "312"]]


def test_fs_components_edgeless_x():
    comps = fs_components(Graph(3, ()), C3)
    assert len(comps) == 6 and all(len(c) == 1 for c in comps)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_tree_complement_has_n_components(n):
    for g in enumerate_trees(n):
        assert len(fs_components(complement(g), make_generator("cycle", n))) == n


@pytest.mark.parametrize("g", [make_generator("path", 4), make_generator("cycle", 5),
                               from_edge_list(5, [(0, 1), (2, 3)]), make_generator("star", 5)], ids=str)
def test_toggle_moves_are_fs_moves(g):
    size = len(list(itertools.permutations(range(g.n))))
    a = _edge_keys(*toggle_edges(g), size)
    b = _edge_keys(*fs_edges(complement(g), make_generator("cycle", g.n)), size)
    assert np.array_equal(a, b)


def test_components_closed_under_toggles():
    g = from_edge_list(5, [(0, 1), (1, 2), (3, 4)])
    comps = fs_components(complement(g), make_generator("cycle", 5))
    where = {s: k for k, c in enumerate(comps) for s in c}
    for s, k in where.items():
        for i in range(1, 6):
            assert where[tau(g, s, i)] == k


def test_component_correspondence_examples():
    for g in [P3, make_generator("path", 2), make_generator("cycle", 4), from_edge_list(4, [(0, 1)])]:
        assert verify_component_correspondence(g).passed


def test_component_cycle_examples():
    rep = verify_component_cycle(P3)
    assert rep.passed and rep.details["nu"] == 3 and len(rep.details["orderings"][0]) == 3
    rep = verify_component_cycle(make_generator("path", 2))
    assert rep.passed and rep.details["orderings"] == [[0, 1]]
    for g in enumerate_trees(5):
        rep = verify_component_cycle(g)
        assert rep.passed and rep.details["nu"] == 5
