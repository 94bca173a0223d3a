import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stegnet.graph import NoPathError, WeightedGraph
from stegnet.pathfind import (
    GraphTooLargeError,
    all_pairs_distances,
    bfs_shortest_path,
    dijkstra,
    enumerate_simple_paths,
    min_vertex_shortest_path,
    path_risk,
)

from oracles import min_risk_min_hops
from strategies import graphs

TRIANGLE = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
PATH3 = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])


def test_path_risk():
    assert path_risk(TRIANGLE, [2]) == 0
    assert path_risk(TRIANGLE, [0, 1, 2]) == 2
    assert path_risk(TRIANGLE, [0, 2]) == 3
    with pytest.raises(ValueError, match="not adjacent"):
        path_risk(PATH3, [0, 2])


def test_bfs_examples():
    r = bfs_shortest_path(PATH3, 0, 2)
    assert r.vertices == (0, 1, 2) and r.hops == 2
    assert bfs_shortest_path(PATH3, 1, 1).vertices == (1,)
    r = bfs_shortest_path(TRIANGLE, 0, 2)
    assert r.vertices == (0, 2) and r.hops == 1
    # oracle: fewest edges over all simple paths
    assert r.hops == min(p.hops for p in enumerate_simple_paths(TRIANGLE, 0, 2))


def test_bfs_tie_prefers_lower_ids():
    # two 2-hop routes 0-1-3 and 0-2-3
    g = WeightedGraph(4, [(0, 2, 1), (2, 3, 1), (0, 1, 1), (1, 3, 1)])
    assert bfs_shortest_path(g, 0, 3).vertices == (0, 1, 3)


def test_dijkstra_examples():
    r = dijkstra(TRIANGLE, 0, 2)
    assert r.vertices == (0, 1, 2) and r.risk == 2
    assert r.risk == min(p.risk for p in enumerate_simple_paths(TRIANGLE, 0, 2))
    r = dijkstra(TRIANGLE, 1, 1)
    assert r.vertices == (1,) and r.risk == 0
    with pytest.raises(NoPathError):
        dijkstra(WeightedGraph(3, [(0, 1, 1)]), 0, 2)
    with pytest.raises(NoPathError):
        bfs_shortest_path(WeightedGraph(3, [(0, 1, 1)]), 0, 2)


def test_min_vertex_examples():
    g = WeightedGraph(4, [(0, 1, 1), (1, 3, 1), (0, 3, 2)])
    r = min_vertex_shortest_path(g, 0, 3)
    assert r.vertices == (0, 3) and r.risk == 2 and r.hops == 1
    assert min_risk_min_hops(g, 0, 3) == (2, 1)
    assert min_vertex_shortest_path(TRIANGLE, 0, 2) == dijkstra(TRIANGLE, 0, 2)
    r = min_vertex_shortest_path(TRIANGLE, 2, 2)
    assert (r.vertices, r.risk, r.hops) == ((2,), 0, 0)


def test_min_vertex_with_real_valued_tie():
    # 0.1 + 0.2 != 0.3 in floating point; tolerant equality still sees the tie
    g = WeightedGraph(3, [(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.3)])
    assert min_vertex_shortest_path(g, 0, 2).vertices == (0, 2)


def test_min_vertex_zero_weights():
    g = WeightedGraph(4, [(0, 1, 0.0), (1, 2, 0.0), (2, 3, 0.0), (0, 3, 0.0)])
    assert min_vertex_shortest_path(g, 0, 3).vertices == (0, 3)


def test_all_pairs_examples():
    d = all_pairs_distances(PATH3)
    assert d[0, 2] == 2 and d[0, 1] == 1
    assert all_pairs_distances(TRIANGLE)[0, 2] == dijkstra(TRIANGLE, 0, 2).risk
    assert math.isinf(all_pairs_distances(WeightedGraph(3, [(0, 1, 1)]))[0, 2])


def test_enumerate_examples():
    paths = sorted(enumerate_simple_paths(TRIANGLE, 0, 2), key=lambda p: p.hops)
    assert [(p.vertices, p.risk) for p in paths] == [((0, 2), 3), ((0, 1, 2), 2)]
    assert len(enumerate_simple_paths(PATH3, 0, 2)) == 1
    assert enumerate_simple_paths(WeightedGraph(3, [(0, 1, 1)]), 0, 2) == []
    with pytest.raises(GraphTooLargeError):
        enumerate_simple_paths(WeightedGraph(13, []), 0, 1)


def _pairs(g):
    return st.tuples(st.integers(0, g.n - 1), st.integers(0, g.n - 1))


@given(st.data())
def test_dijkstra_matches_enumeration(data):
    g = data.draw(graphs(max_n=8))
    s, t = data.draw(_pairs(g))
    r = dijkstra(g, s, t)
    assert r.risk == min(p.risk for p in enumerate_simple_paths(g, s, t))
    assert path_risk(g, r.vertices) == r.risk
    assert len(set(r.vertices)) == len(r.vertices)
    assert r.vertices[0] == s and r.vertices[-1] == t


@given(st.data())
def test_dijkstra_real_weights(data):
    g = data.draw(graphs(max_n=8, weights=st.floats(0.01, 100.0)))
    s, t = data.draw(_pairs(g))
    best = min(p.risk for p in enumerate_simple_paths(g, s, t))
    assert math.isclose(dijkstra(g, s, t).risk, best, rel_tol=1e-9, abs_tol=1e-12)


@given(st.data())
def test_bfs_agrees_with_dijkstra_on_unit_weights(data):
    g = data.draw(graphs(max_n=9, weights=st.just(1)))
    s, t = data.draw(_pairs(g))
    assert dijkstra(g, s, t).hops == bfs_shortest_path(g, s, t).hops


@given(st.data())
def test_min_vertex_property(data):
    g = data.draw(graphs(max_n=8, weights=st.integers(1, 3)))
    s, t = data.draw(_pairs(g))
    r = min_vertex_shortest_path(g, s, t)
    assert r.risk == dijkstra(g, s, t).risk
    assert (r.risk, r.hops) == min_risk_min_hops(g, s, t)


@given(st.data())
def test_symmetry(data):
    g = data.draw(graphs(max_n=8, weights=st.floats(0.01, 10.0)))
    s, t = data.draw(_pairs(g))
    assert math.isclose(dijkstra(g, s, t).risk, dijkstra(g, t, s).risk, rel_tol=1e-9)


@given(graphs(max_n=12, weights=st.floats(0.01, 50.0), max_extra=30))
def test_distance_matrix_consistency(g):
    d = all_pairs_distances(g)
    assert np.all(np.diag(d) == 0)
    assert np.array_equal(d, d.T)
    for i in range(g.n):
        for j in range(g.n):
            assert math.isclose(d[i, j], dijkstra(g, i, j).risk, rel_tol=1e-9)
    # triangle inequality
    assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :] + 1e-9)


def test_distance_matrix_matches_dijkstra_on_50_vertices():
    from oracles import random_connected

    rng = np.random.default_rng(11)
    g = random_connected(rng, 50, 120, weights="real")
    d = all_pairs_distances(g)
    for i in range(g.n):
        for j in range(g.n):
            assert math.isclose(d[i, j], dijkstra(g, i, j).risk, rel_tol=1e-9)


def test_prob_graph_rejected():
    g = WeightedGraph(2, [(0, 1, 0.5)], "prob")
    with pytest.raises(ValueError):
        dijkstra(g, 0, 1)
