"""Brute-force enumeration oracles and their budgets."""

import random
from fractions import Fraction

import pytest

from covertwist.certificates import unoriented_values
from covertwist.errors import BudgetExceededError, TooLargeError
from covertwist.graphs import build_graph
from covertwist.matrix import Matrix, det
from covertwist.operators import symbolic_weights
from covertwist.oracles import (
    det_leibniz,
    enum_forests,
    enum_perfect_matchings,
    enum_spanning_trees,
    matching_sum,
    rooted_forest_sum,
    rooted_forest_sum_by_components,
    tree_sum,
)
from covertwist.poly import MultiPoly
from covertwist.randinst import random_int_matrix


def c3():
    return build_graph(3, [(0, 1), (1, 2), (2, 0)])


def k4():
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_c3_tree_count_and_sum():
    g = c3()
    trees = enum_spanning_trees(g)
    assert len(trees) == 3
    x = symbolic_weights(g)
    reg = x.domain.reg
    s = tree_sum(g, x.domain, unoriented_values(g, x))
    v = {n: MultiPoly.variable(reg, n) for n in ("x_0", "x_1", "x_2")}
    assert s == v["x_0"] * v["x_1"] + v["x_0"] * v["x_2"] + v["x_1"] * v["x_2"]


def test_k4_tree_count():
    assert len(enum_spanning_trees(k4())) == 16


def test_multiedge_trees():
    # doubling one edge of a path doubles the tree count
    g = build_graph(3, [(0, 1), (0, 1), (1, 2)])
    assert len(enum_spanning_trees(g)) == 2


def test_loop_never_in_tree():
    g = build_graph(2, [(0, 1), (0, 0)])
    trees = enum_spanning_trees(g)
    assert trees == [frozenset({0})]


def test_forests_include_empty_set():
    g = c3()
    forests = enum_forests(g)
    sizes = sorted(len(f) for f, _, _ in forests)
    assert sizes[0] == 0
    assert len(forests) == 7  # empty, three 1-edge, three 2-edge


def test_c3_rooted_forest_value():
    g = c3()
    from covertwist.domains import QQ
    ones = tuple(Fraction(1) for _ in range(3))
    assert rooted_forest_sum(g, QQ, ones) == 16


def test_c6_frozen_forest_values():
    g = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    from covertwist.domains import QQ
    ones = tuple(Fraction(1) for _ in range(6))
    assert tree_sum(g, QQ, ones) == 6
    assert rooted_forest_sum(g, QQ, ones) == 320


def test_forest_sum_by_components():
    g = c3()
    from covertwist.domains import QQ
    ones = tuple(Fraction(1) for _ in range(3))
    by_k = rooted_forest_sum_by_components(g, QQ, ones)
    # k components of a 3-vertex graph: spanning trees contribute at k=1
    assert by_k[1] == 3 * 3  # each tree rooted 3 ways
    assert sum(by_k.values()) == 16


def test_matchings_q4():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    ms = enum_perfect_matchings(g)
    assert len(ms) == 2
    from covertwist.domains import QQ
    ones = tuple(Fraction(1) for _ in range(4))
    assert matching_sum(g, QQ, ones) == 2


def test_matchings_odd_graph_empty():
    assert enum_perfect_matchings(c3()) == []


def test_matching_ignores_loops():
    g = build_graph(2, [(0, 1), (0, 0)])
    assert len(enum_perfect_matchings(g)) == 1


def test_tree_budget():
    g = build_graph(2, [(0, 1)] * 25)
    with pytest.raises(BudgetExceededError):
        enum_spanning_trees(g)


def test_forest_budget():
    g = build_graph(2, [(0, 1)] * 21)
    with pytest.raises(BudgetExceededError):
        enum_forests(g)


def test_matching_budget():
    g = build_graph(22, [(i, i + 1) for i in range(21)])
    with pytest.raises(BudgetExceededError):
        enum_perfect_matchings(g)


def test_leibniz_budget():
    from covertwist.domains import QQ
    m = Matrix.identity(QQ, 8)
    with pytest.raises(TooLargeError):
        det_leibniz(m)


def test_leibniz_matches_bareiss():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randrange(1, 6)
        m = random_int_matrix(rng, n, bound=4)
        assert det_leibniz(m) == det(m)
