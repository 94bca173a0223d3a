"""Point-to-point planning: minimum-risk and minimum-hop paths between two vertices."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Mode, NoPathError, WeightedGraph

REL_TOL = 1e-9
ABS_TOL = 1e-12


def risk_equal(a: float, b: float) -> bool:
    """Risk equality used for tie detection (relative 1e-9, absolute 1e-12)."""
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


@dataclass(frozen=True)
class PathResult:
    vertices: tuple[int, ...]
    risk: float

    @property
    def hops(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])]


class GraphTooLargeError(ValueError):
    pass


def path_risk(g: WeightedGraph, vertices) -> float:
    """Sum of edge values along ``vertices``; 0 for a single vertex."""
    vs = list(vertices)
    if not vs:
        raise ValueError("empty vertex sequence")
    g.check_vertex(*vs)
    total = []
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"vertices {a} and {b} are not adjacent")
        total.append(g.value(a, b))
    return math.fsum(total)


def _result(g: WeightedGraph, vertices: list[int]) -> PathResult:
    return PathResult(tuple(vertices), path_risk(g, vertices))


def _walk_back(pred: list[int], s: int, t: int) -> list[int]:
    path = [t]
    while path[-1] != s:
        path.append(pred[path[-1]])
    path.reverse()
    return path


def bfs_tree(g: WeightedGraph, s: int) -> list[int]:
    """BFS predecessor array from ``s`` (-1 = unreached, ``pred[s] = s``).

    Neighbors are expanded in ascending id order and a vertex keeps the
    predecessor that first discovered it.
    """
    pred = [-1] * g.n
    pred[s] = s
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y, _ in g.neighbors(x):
            if pred[y] < 0:
                pred[y] = x
                queue.append(y)
    return pred


def bfs_shortest_path(g: WeightedGraph, s: int, t: int) -> PathResult:
    """Fewest-edge path from ``s`` to ``t``, ignoring edge values."""
    g.check_vertex(s, t)
    pred = bfs_tree(g, s)
    if pred[t] < 0:
        raise NoPathError(f"no path between {s} and {t}")
    return _result(g, _walk_back(pred, s, t))


def shortest_path_tree(g: WeightedGraph, s: int) -> tuple[list[float], list[int]]:
    """Dijkstra from ``s``: ``(dist, pred)``; unreachable vertices get ``inf`` / -1.

    Labels are ordered lexicographically by (risk, hops), and among equal
    labels the heap pops the lower vertex id first, so results are
    deterministic.
    """
    if g.mode is not Mode.RISK:
        raise ValueError("shortest paths need a RISK-mode graph")
    dist = [math.inf] * g.n
    hops = [0] * g.n
    pred = [-1] * g.n
    dist[s] = 0.0
    pred[s] = s
    done = [False] * g.n
    heap = [(0.0, 0, s)]
    while heap:
        d, h, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for y, w in g.neighbors(x):
            if done[y]:
                continue
            nd, nh = d + w, h + 1
            if nd < dist[y] or (nd == dist[y] and nh < hops[y]):
                dist[y], hops[y], pred[y] = nd, nh, x
                heapq.heappush(heap, (nd, nh, y))
    return dist, pred


def dijkstra(g: WeightedGraph, s: int, t: int) -> PathResult:
    g.check_vertex(s, t)
    dist, pred = shortest_path_tree(g, s)
    if pred[t] < 0:
        raise NoPathError(f"no path between {s} and {t}")
    return _result(g, _walk_back(pred, s, t))


def min_vertex_shortest_path(g: WeightedGraph, s: int, t: int) -> PathResult:
    """Among minimum-risk ``s``-``t`` paths, one with the fewest vertices.

    Runs Dijkstra, keeps the edges that are tight under tolerant risk
    equality (``dist[x] + w == dist[y]``), then runs BFS over those edges.
    Any path of tight edges has minimum risk, so BFS returns the minimum
    vertex count among minimum-risk paths.
    """
    g.check_vertex(s, t)
    dist, pred = shortest_path_tree(g, s)
    if pred[t] < 0:
        raise NoPathError(f"no path between {s} and {t}")
    back = [-1] * g.n
    back[s] = s
    queue = deque([s])
    while queue and back[t] < 0:
        x = queue.popleft()
        for y, w in g.neighbors(x):
            if back[y] < 0 and risk_equal(dist[x] + w, dist[y]):
                back[y] = x
                queue.append(y)
    return _result(g, _walk_back(back, s, t))


def all_pairs_distances(g: WeightedGraph) -> np.ndarray:
    """n x n minimum-risk matrix via Floyd-Warshall (``inf`` where unreachable).

    Floyd-Warshall itself tolerates negative weights without negative
    cycles; graphs here never carry negative values.
    """
    if g.mode is not Mode.RISK:
        raise ValueError("distances need a RISK-mode graph")
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for e in g.edges:
        d[e.u, e.v] = d[e.v, e.u] = e.value
    for k in range(g.n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def enumerate_simple_paths(g: WeightedGraph, s: int, t: int, max_n: int = 12) -> list[PathResult]:
    """Every simple ``s``-``t`` path, by exhaustive DFS. Only for small graphs."""
    if g.n > max_n:
        raise GraphTooLargeError(f"graph has {g.n} vertices, enumeration limit is {max_n}")
    g.check_vertex(s, t)
    if s == t:
        return [PathResult((s,), 0.0)]
    out: list[PathResult] = []
    path = [s]
    on_path = [False] * g.n
    on_path[s] = True

    def extend(x: int) -> None:
        for y, _ in g.neighbors(x):
            if on_path[y]:
                continue
            path.append(y)
            if y == t:
                out.append(PathResult(tuple(path), path_risk(g, path)))
            else:
                on_path[y] = True
                extend(y)
                on_path[y] = False
            path.pop()

    extend(s)
    return out
