import itertools

import pytest
from hypothesis import given, strategies as st

from toricpro.graph import Graph, from_edge_list, make_generator
from toricpro.labeling import (Labeling, LabelingError, OperatorSpec, cpro, cpro_path, cyclic_shift,
                               factored_tpro_power, forest_power_path, iterate, jdt_slide, parse_labeling,
                               parse_operator, promotion, tau, toggle, toric_promotion, toric_promotion_pi,
                               zeta_permutation)

W = Labeling.from_word
P5 = make_generator("path", 5)


def test_labeling_inverse_and_rank():
    s = W([4, 5, 1, 2, 3])
    assert s.inverse == (2, 3, 4, 0, 1)
    assert s.vertex_of(1) == 2
    perms = list(itertools.permutations(range(1, 6)))
    for r, p in enumerate(perms):
        assert W(p).rank() == r
        assert Labeling.unrank(r, 5) == W(p)
    with pytest.raises(LabelingError):
        W([1, 1, 2])


def test_word_rendering():
    assert W([4, 5, 1, 2, 3]).word() == "45123"
    assert W(list(range(10, 0, -1))).word() == "10,9,8,7,6,5,4,3,2,1"


def test_example_toggle_chain():
    s = W([4, 5, 1, 2, 3])
    chain = [s]
    for i in range(1, 5):
        chain.append(toggle(P5, chain[-1], i, i + 1))
    assert [c.word() for c in chain] == ["45123", "45123", "45123", "35124", "34125"]
    assert toggle(P5, s, 3, 4).word() == "35124"
    assert toggle(P5, s, 1, 2) == s


def test_promotion_examples():
    assert promotion(P5, W([4, 5, 1, 2, 3])).word() == "34125"
    assert promotion(Graph(1, ()), W([1])) == W([1])
    k4 = make_generator("complete", 4)
    for p in itertools.permutations(range(1, 5)):
        assert promotion(k4, W(p)) == W(p)


def test_toric_promotion_examples():
    assert toric_promotion(P5, W([4, 5, 1, 2, 3])).word() == "34521"
    p3 = make_generator("path", 3)
    assert toric_promotion(p3, W([1, 2, 3])).word() == "321"
    assert toric_promotion(p3, W([3, 2, 1])).word() == "123"
    with pytest.raises(LabelingError):
        toric_promotion(Graph(1, ()), W([1]))


def test_toggle_errors():
    with pytest.raises(LabelingError):
        toggle(P5, W([1, 2, 3, 4, 5]), 2, 2)
    with pytest.raises(LabelingError):
        toggle(P5, W([1, 2, 3, 4, 5]), 0, 2)
    with pytest.raises(LabelingError):
        toggle(P5, W([1, 2, 3]), 1, 2)


def test_toric_promotion_pi():
    assert toric_promotion_pi(P5, zeta_permutation(5, 1), W([4, 5, 1, 2, 3])).word() == "34521"
    for p in itertools.permutations(range(1, 6)):
        s = W(p)
        assert toric_promotion_pi(P5, (1, 2, 3, 4, 5), s) == toric_promotion(P5, s)
    p4 = make_generator("path", 4)
    for p in itertools.permutations(range(1, 5)):
        s = W(p)
        expected = tau(p4, tau(p4, tau(p4, tau(p4, s, 1), 2), 4), 3)
        assert toric_promotion_pi(p4, (1, 2, 4, 3), s) == expected
    with pytest.raises(LabelingError):
        toric_promotion_pi(P5, (1, 2, 3, 4, 4), W([1, 2, 3, 4, 5]))


def test_zeta():
    assert zeta_permutation(5, 1) == (1, 2, 3, 4, 5)
    assert zeta_permutation(6, 2) == (1, 2, 3, 4, 6, 5)
    assert zeta_permutation(7, 3) == (1, 2, 3, 4, 7, 6, 5)
    with pytest.raises(LabelingError):
        zeta_permutation(5, 3)
    with pytest.raises(LabelingError):
        zeta_permutation(5, 0)


def test_cyclic_shift():
    assert cyclic_shift(W([4, 5, 1, 2, 3]), 1).word() == "51234"
    assert cyclic_shift(W([4, 5, 1, 2, 3]), 5) == W([4, 5, 1, 2, 3])
    assert cyclic_shift(W([2, 1, 3]), -1).word() == "132"
    assert cyclic_shift(W([2, 1, 3]), 0) == W([2, 1, 3])


def test_jdt_slide():
    p3 = make_generator("path", 3)
    assert jdt_slide(p3, W([1, 2, 3]), (0, 1, 2)).word() == "231"
    assert jdt_slide(p3, W([3, 1, 2]), (1,)) == W([3, 1, 2])
    k2 = make_generator("path", 2)
    assert jdt_slide(k2, W([1, 2]), (0, 1)).word() == "21"
    with pytest.raises(ValueError):
        jdt_slide(p3, W([1, 2, 3]), (0, 2))
    with pytest.raises(ValueError):
        jdt_slide(p3, W([1, 2, 3]), (0, 1, 0))


def test_cpro_path_examples():
    p3 = make_generator("path", 3)
    assert cpro_path(p3, W([1, 2, 3])) == (0, 1, 2)
    k4 = make_generator("complete", 4)
    s = W([3, 1, 4, 2])
    path = cpro_path(k4, s)
    assert [s[v] for v in path] == [1, 2, 3, 4]
    lonely = from_edge_list(3, [(1, 2)])
    assert cpro_path(lonely, W([1, 2, 3])) == (0,)


def _graphs_small():
    return [make_generator("path", 4), make_generator("star", 5), make_generator("cycle", 4),
            make_generator("complete", 4), from_edge_list(5, [(0, 1), (1, 2), (0, 2), (3, 4)]),
            from_edge_list(4, [(0, 1)])]


@pytest.mark.parametrize("g", _graphs_small(), ids=str)
def test_cpro_is_jdt_on_every_labeling(g):
    for p in itertools.permutations(range(1, g.n + 1)):
        s = W(p)
        assert jdt_slide(g, s, cpro_path(g, s)) == cyclic_shift(promotion(g, s), 1)


def test_forest_power_path():
    p3 = make_generator("path", 3)
    s = W([1, 2, 3])
    assert forest_power_path(p3, s, 0) == (0,)
    assert forest_power_path(p3, s, 1) == cpro_path(p3, s)
    path2 = forest_power_path(p3, s, 2)
    assert jdt_slide(p3, s, path2) == cpro(p3, cpro(p3, s))
    with pytest.raises(ValueError):
        forest_power_path(make_generator("cycle", 3), s, 1)


def test_factored_tpro_power_examples():
    s = W([4, 5, 1, 2, 3])
    assert factored_tpro_power(P5, s, 0, 0) == s
    assert factored_tpro_power(P5, s, 1, 0) == iterate(lambda x: cpro(P5, x), s, 5)
    assert factored_tpro_power(P5, s, 1, 0) == iterate(lambda x: toric_promotion(P5, x), s, 4)
    assert factored_tpro_power(P5, s, 0, 2) == toric_promotion(P5, toric_promotion(P5, s))
    with pytest.raises(LabelingError):
        factored_tpro_power(P5, s, 0, 4)


# --- property tests -------------------------------------------------------

@st.composite
def graph_and_labeling(draw, n_min=2, n_max=7):
    n = draw(st.integers(n_min, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    word = draw(st.permutations(range(1, n + 1)))
    return from_edge_list(n, chosen), W(word)


@given(graph_and_labeling(), st.data())
def test_toggle_is_involution(gs, data):
    g, s = gs
    i = data.draw(st.integers(1, g.n))
    j = data.draw(st.integers(1, g.n).filter(lambda x: x != i))
    assert toggle(g, toggle(g, s, i, j), i, j) == s


@given(graph_and_labeling())
def test_shift_conjugates_toggles(gs):
    g, s = gs
    for i in range(1, g.n + 1):
        assert cyclic_shift(tau(g, s, i), 1) == tau(g, cyclic_shift(s, 1), i + 1)


@given(graph_and_labeling(n_max=6), st.integers(0, 3), st.data())
def test_factoring_identity(gs, s_pow, data):
    g, s = gs
    k = data.draw(st.integers(0, g.n - 2))
    expected = iterate(lambda x: toric_promotion(g, x), s, (g.n - 1) * s_pow + k)
    assert factored_tpro_power(g, s, s_pow, k) == expected


@given(graph_and_labeling(), st.integers(-20, 20))
def test_shift_inverse(gs, k):
    _, s = gs
    assert cyclic_shift(cyclic_shift(s, k), -k) == s


def test_operator_spec_steps():
    assert OperatorSpec.promotion().steps(4) == [("toggle", 1, 2), ("toggle", 2, 3), ("toggle", 3, 4)]
    assert OperatorSpec.toric_promotion().steps(3)[-1] == ("toggle", 3, 1)
    assert OperatorSpec.zeta(4, 2).steps(4) == [("toggle", 1, 2), ("toggle", 2, 3), ("toggle", 4, 1),
                                                ("toggle", 3, 4)]
    assert OperatorSpec.cyclic_shift(-1).steps(5) == [("shift", 4)]
    assert OperatorSpec.cpro().apply(P5, W([4, 5, 1, 2, 3])) == cpro(P5, W([4, 5, 1, 2, 3]))
    with pytest.raises(LabelingError):
        OperatorSpec.toggle(2, 2)
    with pytest.raises(LabelingError):
        OperatorSpec.toggle(1, 9).steps(5)


def test_parse_operator():
    assert parse_operator("tpro", 5).apply(P5, W([4, 5, 1, 2, 3])).word() == "34521"
    assert parse_operator("pro", 5).apply(P5, W([4, 5, 1, 2, 3])).word() == "34125"
    assert parse_operator("c:2", 5).apply(P5, W([1, 2, 3, 4, 5])).word() == "34512"
    assert parse_operator("zeta:2", 5).params == (1, 2, 3, 5, 4)
    assert parse_operator("tpro-pi:21345", 5).params == (2, 1, 3, 4, 5)
    op = parse_operator("toggles:1-3,5-1", 5)
    assert op.steps(5) == [("toggle", 1, 3), ("toggle", 5, 1)]
    for bad in ["bogus", "c:x", "toggles:1", "toggles:1-1", "zeta:3", "tpro-pi:1234"]:
        with pytest.raises(LabelingError):
            parse_operator(bad, 5)


def test_parse_labeling():
    s = parse_labeling("45123", 5)
    assert s.forward == (4, 5, 1, 2, 3)
    assert parse_labeling("10,1,2,3,4,5,6,7,8,9", 10)[0] == 10
    with pytest.raises(LabelingError, match="length"):
        parse_labeling("4512", 5)
    with pytest.raises(LabelingError, match="repeats"):
        parse_labeling("44123", 5)
    with pytest.raises(LabelingError):
        parse_labeling("45126", 5)
    with pytest.raises(LabelingError):
        parse_labeling("1234567891", 10)
