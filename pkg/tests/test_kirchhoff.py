import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtrees.counting import g_value, s_recurrence
from mtrees.graph import build
from mtrees.kirchhoff import (
    DisconnectedGraphError,
    count_separating_2forests,
    count_trees,
    count_trees_mod,
    det_exact,
    det_mod,
    identify,
    laplacian,
    laplacian_from_edges,
    minor,
)
from oracles import enumerate_separating_forests, enumerate_spanning_trees, leibniz_det

small_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


def test_laplacian_small():
    assert laplacian(build(0)) == [[1, -1], [-1, 1]]
    L = laplacian(build(1))
    assert [L[i][i] for i in range(4)] == [2, 2, 2, 2]


@pytest.mark.parametrize("t", range(0, 7))
def test_laplacian_invariants(t):
    L = laplacian(build(t))
    g = build(t)
    for i, row in enumerate(L):
        assert sum(row) == 0
        assert row[i] == len(g.adjacency[i])
        assert all(x in (0, -1) for j, x in enumerate(row) if j != i)
        assert all(L[j][i] == row[j] for j in range(len(row)))


def test_det_trivial():
    assert det_exact([[1, -1], [-1, 1]]) == 0
    assert det_exact([[7]]) == 7
    assert det_exact([]) == 1
    assert det_exact(minor(laplacian(build(1)), 0)) == 4


def test_det_needs_row_swap():
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([[0, 2, 1], [3, 0, 0], [0, 0, 5]]) == -30


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_exact([[1, 2], [3]])


@given(small_matrices)
def test_det_matches_leibniz(m):
    assert det_exact(m) == leibniz_det(m)


@given(small_matrices, st.sampled_from([2, 3, 7, 101, 1_000_000_007]))
def test_det_mod_matches_exact(m, p):
    assert det_mod(m, p) == det_exact(m) % p


def test_known_graphs():
    k4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    assert det_exact(minor(laplacian_from_edges(4, k4), 0)) == 16
    k6 = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    assert det_exact(minor(laplacian_from_edges(6, k6), 3)) == 6**4
    c4 = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert det_exact(minor(laplacian_from_edges(4, c4), 2)) == 4


def test_count_trees_values():
    assert count_trees(build(1)) == 4
    assert count_trees(build(2)) == 56


@pytest.mark.parametrize("t", range(0, 4))
def test_count_trees_matches_enumeration(t):
    g = build(t)
    assert count_trees(g) == enumerate_spanning_trees(g.n, g.edges())


@pytest.mark.parametrize("t", range(0, 7))
def test_count_trees_matches_recurrence(t):
    assert count_trees(build(t)) == s_recurrence(t)


@pytest.mark.slow
def test_count_trees_matches_recurrence_t7():
    assert count_trees(build(7)) == s_recurrence(7)


@pytest.mark.parametrize("t", range(1, 6))
def test_cofactor_independent_of_root(t):
    g = build(t)
    rng = random.Random(t)
    roots = [0, g.n - 1] + rng.sample(range(g.n), 3)
    assert {count_trees(g, root=r) for r in roots} == {s_recurrence(t)}


def test_disconnected_rejected():
    g = build(2).without_edge((0, 4)).without_edge((2, 6))
    with pytest.raises(DisconnectedGraphError):
        count_trees(g)


@pytest.mark.parametrize("t", [1, 2])
def test_deletion_contraction(t):
    g = build(t)
    base = count_trees(g)
    for u, v in g.edges():
        deleted = g.edges()
        deleted.remove((u, v))
        n, contracted = identify(g.n, deleted, u, v)
        s_del = det_exact(minor(laplacian_from_edges(g.n, deleted), 0))
        s_con = det_exact(minor(laplacian_from_edges(n, contracted), 0))
        assert base == s_del + s_con


def test_identify_keeps_parallel_edges():
    n, edges = identify(4, [(0, 1), (1, 3), (0, 2), (2, 3)], 0, 3)
    assert n == 3
    assert sorted(tuple(sorted(e)) for e in edges) == [(0, 1), (0, 1), (0, 2), (0, 2)]
    L = laplacian_from_edges(n, edges)
    assert L[0][1] == -2 and L[0][0] == 4


def test_separating_forests_values():
    assert count_separating_2forests(build(0), 0, 1) == 1
    assert count_separating_2forests(build(1), 0, 1) == 3
    assert count_separating_2forests(build(1), *build(1).hub_pair) == 3


@pytest.mark.parametrize("t", range(0, 7))
def test_separating_forests_match_g(t):
    g = build(t)
    assert count_separating_2forests(g, *g.hub_pair) == g_value(t)


@pytest.mark.parametrize("t", [1, 2])
def test_separating_forests_match_enumeration_any_pair(t):
    g = build(t)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert count_separating_2forests(g, u, v) == enumerate_separating_forests(g.n, g.edges(), u, v)


def test_separating_forests_errors():
    with pytest.raises(ValueError):
        count_separating_2forests(build(1), 2, 2)
    with pytest.raises(ValueError):
        count_separating_2forests(build(1), 0, 9)


def test_count_trees_mod_examples():
    assert count_trees_mod(build(1), 101) == 4
    assert count_trees_mod(build(2), 7) == 0
    p = 1_000_000_007
    assert count_trees_mod(build(9), p) == s_recurrence(9) % p


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=7), st.sampled_from([3, 5, 13, 999_999_937, 1_000_000_009]))
def test_count_trees_mod_property(t, p):
    assert count_trees_mod(build(t), p) == count_trees(build(t)) % p
