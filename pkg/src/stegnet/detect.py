"""Structural attack: path-support rates, attack-set selection and path-hit-rate simulation."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Edge, NoPathError, WeightedGraph, connected_components, generate_random_graph
from .pathfind import ABS_TOL, REL_TOL, all_pairs_distances, bfs_tree


@dataclass(frozen=True)
class PsrTable:
    edges: tuple[Edge, ...]
    delta: tuple[int, ...]
    psr: tuple[float, ...] = ()

    def rows(self) -> list[tuple[Edge, int, float]]:
        """Rows sorted by psr descending, then ``(u, v)``."""
        rows = list(zip(self.edges, self.delta, self.psr or [0.0] * len(self.edges)))
        rows.sort(key=lambda r: (-r[2], r[0].u, r[0].v))
        return rows

    def to_csv(self) -> str:
        out = ["u,v,delta,psr"]
        out += [f"{e.u},{e.v},{d},{r:.6f}" for e, d, r in self.rows()]
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class AttackSet:
    edges: frozenset[tuple[int, int]]
    esr: float


@dataclass(frozen=True)
class PhrCurve:
    points: tuple[tuple[float, float], ...]
    n: int
    m: int
    trials: int
    seed: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        for name in ("n", "m", "trials", "seed"):
            buf.write(f"# {name}={getattr(self, name)}\n")
        buf.write("esr,phr\n")
        for esr, phr in self.points:
            buf.write(f"{esr:.6f},{phr:.6f}\n")
        return buf.getvalue()


def edge_support_counts(g: WeightedGraph) -> PsrTable:
    """delta(e): number of pairs ``i < j`` with ``e`` on at least one shortest i-j path.

    Edge ``(u, v)`` lies on a shortest i-j path iff
    ``d(i,u) + w + d(v,j) == d(i,j)`` in either orientation.
    """
    if g.n >= 2 and connected_components(g).count != 1:
        raise NoPathError("edge support needs a connected graph")
    d = all_pairs_distances(g)
    upper = np.triu(np.ones((g.n, g.n), dtype=bool), k=1)
    tol = np.maximum(REL_TOL * np.abs(d), ABS_TOL)
    deltas = []
    for e in g.edges:
        fwd = d[:, e.u, None] + e.value + d[None, e.v, :]
        bwd = d[:, e.v, None] + e.value + d[None, e.u, :]
        on = (np.abs(fwd - d) <= tol) | (np.abs(bwd - d) <= tol)
        deltas.append(int(np.count_nonzero(on & upper)))
    return PsrTable(g.edges, tuple(deltas))


def path_support_rates(counts: PsrTable) -> PsrTable:
    total = sum(counts.delta)
    if total == 0:
        return replace(counts, psr=tuple(0.0 for _ in counts.delta))
    return replace(counts, psr=tuple(d / total for d in counts.delta))


def psr_table(g: WeightedGraph) -> PsrTable:
    return path_support_rates(edge_support_counts(g))


def attack_size(esr: float, m: int) -> int:
    """``round(esr * m)`` with halves rounded up."""
    return min(m, math.floor(esr * m + 0.5))


def select_attack_set(psr: PsrTable, esr: float) -> AttackSet:
    """Monitor the highest-PSR edges; ties go to the lower ``(u, v)``."""
    if not 0.0 <= esr <= 1.0:
        raise ValueError(f"esr must be in [0, 1], got {esr}")
    m = len(psr.edges)
    k = attack_size(esr, m)
    ranked = psr.rows()[:k]
    return AttackSet(frozenset(e.key for e, _, _ in ranked), k / m if m else 0.0)


def sample_pairs(n: int, trials: int, seed: int) -> list[tuple[int, int]]:
    """Uniform unordered pairs of distinct vertices, as ``(lo, hi)``."""
    if n < 2:
        raise ValueError("need at least two vertices to sample pairs")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.integers(n, size=trials)
    b = rng.integers(n - 1, size=trials)
    b = b + (b >= a)
    return [(int(min(x, y)), int(max(x, y))) for x, y in zip(a, b)]


def bfs_path_edges(g: WeightedGraph, pairs: Iterable[tuple[int, int]]) -> list[frozenset[tuple[int, int]]]:
    """Edge sets of the BFS shortest path from ``lo`` to ``hi`` for each pair."""
    trees: dict[int, list[int]] = {}
    out = []
    for s, t in pairs:
        pred = trees.get(s)
        if pred is None:
            pred = trees[s] = bfs_tree(g, s)
        if pred[t] < 0:
            raise NoPathError(f"no path between {s} and {t}")
        keys = []
        x = t
        while x != s:
            p = pred[x]
            keys.append((min(p, x), max(p, x)))
            x = p
        out.append(frozenset(keys))
    return out


def hit_rate(paths: Sequence[frozenset[tuple[int, int]]], attack: AttackSet) -> float:
    hits = sum(1 for p in paths if not p.isdisjoint(attack.edges))
    return hits / len(paths)


def phr_over_pairs(g: WeightedGraph, attack: AttackSet, pairs: Sequence[tuple[int, int]]) -> float:
    return hit_rate(bfs_path_edges(g, pairs), attack)


def exact_phr(g: WeightedGraph, attack: AttackSet) -> float:
    """PHR over every unordered vertex pair exactly once."""
    return phr_over_pairs(g, attack, list(combinations(range(g.n), 2)))


def simulate_phr(g: WeightedGraph, attack: AttackSet, trials: int, seed: int) -> float:
    """Fraction of random pairs whose BFS path crosses a monitored edge."""
    return phr_over_pairs(g, attack, sample_pairs(g.n, trials, seed))


def _child_seeds(seed: int) -> tuple[int, int]:
    graph_seed, pair_seed = np.random.SeedSequence(seed).generate_state(2, dtype=np.uint64)
    return int(graph_seed), int(pair_seed)


def phr_curve_experiment(
    n: int, m: int, trials: int, esr_grid: Sequence[float], seed: int
) -> PhrCurve:
    """PHR at each grid ESR on one random graph, reusing a single pair sample.

    Every grid point scores the same sampled pairs against nested attack
    sets, so the curve is monotone in ESR.
    """
    for esr in esr_grid:
        if not 0.0 <= esr <= 1.0:
            raise ValueError(f"grid value {esr} outside [0, 1]")
    graph_seed, pair_seed = _child_seeds(seed)
    g = generate_random_graph(n, m, graph_seed)
    table = psr_table(g)
    paths = bfs_path_edges(g, sample_pairs(n, trials, pair_seed))
    points = tuple((float(esr), hit_rate(paths, select_attack_set(table, esr))) for esr in esr_grid)
    return PhrCurve(points, n, m, trials, seed)
