import itertools

import pytest
from hypothesis import given, strategies as st

from toricpro.config import CapExceeded
from toricpro.graph import (Graph, GraphError, complement, connected_components, enumerate_forests,
                            enumerate_graphs, enumerate_trees, from_edge_list, from_prufer, is_forest,
                            make_generator, parse_edge_file, tree_path)


def naive_prufer_decode(seq, n):
    """Textbook decoding: repeatedly join the smallest leaf to the next entry."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = set()
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.add((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.add((u, v))
    return sorted(edges)


def has_cycle_dfs(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        stack = [(s, -1)]
        while stack:
            v, parent = stack.pop()
            if v in seen:
                return True
            seen.add(v)
            for w in adj[v]:
                if w != parent:
                    stack.append((w, v))
    return False


def test_generators():
    assert make_generator("path", 5).edges == ((0, 1), (1, 2), (2, 3), (3, 4))
    assert make_generator("cycle", 3).edges == ((0, 1), (0, 2), (1, 2))
    assert make_generator("cycle", 2).edges == ((0, 1),)
    assert make_generator("star", 4).edges == ((0, 1), (0, 2), (0, 3))
    assert len(make_generator("complete", 5).edges) == 10
    with pytest.raises(GraphError):
        make_generator("path", 0)


def test_from_edge_list():
    g = from_edge_list(3, [(0, 1)])
    assert g.edges == ((0, 1),) and g.n == 3
    assert from_edge_list(2, [(0, 1), (1, 0)]).edges == ((0, 1),)
    with pytest.raises(GraphError):
        from_edge_list(3, [(0, 0)])
    with pytest.raises(GraphError):
        from_edge_list(3, [(0, 3)])


def test_from_prufer_examples():
    assert from_prufer([]).edges == ((0, 1),)
    assert from_prufer([0, 0]).edges == make_generator("star", 4).edges
    assert from_prufer([1, 2]).edges == make_generator("path", 4).edges
    with pytest.raises(GraphError):
        from_prufer([4, 0])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_from_prufer_matches_naive_decoder(n):
    for seq in itertools.product(range(n), repeat=n - 2):
        assert list(from_prufer(seq).edges) == naive_prufer_decode(seq, n)


def test_complement():
    assert complement(make_generator("complete", 4)).edges == ()
    assert complement(make_generator("path", 3)).edges == ((0, 2),)
    assert complement(Graph(3, ())).edges == make_generator("complete", 3).edges


@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(list(itertools.combinations(range(n), 2)) or [None])))))
def test_complement_involution(data):
    n, pairs = data
    g = from_edge_list(n, [p for p in pairs if p is not None])
    assert complement(complement(g)) == g


def test_components():
    assert connected_components(make_generator("path", 4)).sizes() == [4]
    blocks = connected_components(from_edge_list(3, [(0, 1)])).blocks
    assert set(blocks) == {frozenset({0, 1}), frozenset({2})}
    assert sorted(connected_components(Graph(3, ())).sizes()) == [1, 1, 1]


def test_is_forest():
    assert is_forest(make_generator("path", 5))
    assert not is_forest(make_generator("cycle", 4))
    assert is_forest(make_generator("star", 6))


def test_tree_path():
    assert tree_path(make_generator("path", 4), 0, 3) == (0, 1, 2, 3)
    assert tree_path(make_generator("star", 5), 1, 3) == (1, 0, 3)
    assert tree_path(make_generator("star", 5), 2, 2) == (2,)
    with pytest.raises(GraphError):
        tree_path(from_edge_list(3, [(0, 1)]), 0, 2)
    with pytest.raises(GraphError):
        tree_path(make_generator("cycle", 4), 0, 2)


def test_tree_path_properties():
    for g in enumerate_trees(5):
        for u in range(5):
            for v in range(5):
                p = tree_path(g, u, v)
                assert p[0] == u and p[-1] == v
                assert len(set(p)) == len(p)
                assert all(g.adjacent(a, b) for a, b in zip(p, p[1:]))


@pytest.mark.parametrize("n,count", [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)])
def test_enumerate_trees_counts(n, count):
    trees = list(enumerate_trees(n))
    assert len(trees) == count == n ** (n - 2)
    assert len(set(trees)) == count
    for t in trees:
        assert len(t.edges) == n - 1 and len(connected_components(t).blocks) == 1


def test_enumerate_trees_cap(monkeypatch):
    monkeypatch.setenv("TORICPRO_CAPS", "trees=5")
    with pytest.raises(CapExceeded):
        next(enumerate_trees(6))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumerate_forests_against_dfs_oracle(n):
    all_pairs = list(itertools.combinations(range(n), 2))
    expected = sum(1 for mask in range(1 << len(all_pairs))
                   if not has_cycle_dfs(n, [p for k, p in enumerate(all_pairs) if mask >> k & 1]))
    forests = list(enumerate_forests(n))
    assert len(forests) == expected
    assert all(is_forest(f) for f in forests)


def test_forest_small_counts():
    assert len(list(enumerate_forests(2))) == 2
    assert len(list(enumerate_forests(3))) == 7


def test_enumerate_graphs():
    assert len(list(enumerate_graphs(4))) == 64


def test_edge_file():
    g = parse_edge_file("# comment\n4\n0 1\n\n1 2\n# another\n2 3\n")
    assert g == make_generator("path", 4)
    with pytest.raises(GraphError, match="line 3"):
        parse_edge_file("3\n0 1\n1 1\n")
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_file("3\n0 5\n")
