"""Undirected weighted / probabilistic graphs, edge-list I/O and random generation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    """Invalid graph data (bad file, self-loop, duplicate edge, out-of-range value)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoPathError(LookupError):
    """Two vertices that had to be connected lie in different components."""


class Mode(str, enum.Enum):
    RISK = "risk"
    PROB = "prob"


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int
    value: float = field(compare=False, default=1.0)

    def __post_init__(self):
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _check_value(mode: Mode, value: float, line: int | None = None) -> None:
    if not math.isfinite(value):
        raise GraphError(f"non-finite edge value {value!r}", line)
    if mode is Mode.PROB and not 0.0 < value <= 1.0:
        raise GraphError(f"probability {value!r} outside (0, 1]", line)
    if mode is Mode.RISK and value < 0.0:
        raise GraphError(f"negative weight {value!r}", line)


class WeightedGraph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    In RISK mode edge values are non-negative risks; in PROB mode they are
    success probabilities in (0, 1]. Edges are stored with ``u < v`` and kept
    sorted by ``(u, v)``; neighbor lists are sorted by vertex id.
    """

    __slots__ = ("n", "mode", "edges", "_adj", "_index")

    def __init__(self, n: int, edges: Iterable[Edge | tuple], mode: Mode | str = Mode.RISK):
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        mode = Mode(mode)
        index: dict[tuple[int, int], Edge] = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(int(item[0]), int(item[1]), float(item[2]))
            if e.u == e.v:
                raise GraphError(f"self-loop on vertex {e.u}")
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise GraphError(f"edge ({e.u}, {e.v}) has a vertex outside [0, {n})")
            if e.key in index:
                raise GraphError(f"duplicate edge ({e.u}, {e.v})")
            _check_value(mode, e.value)
            index[e.key] = Edge(e.u, e.v, float(e.value))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for e in index.values():
            adj[e.u].append((e.v, e.value))
            adj[e.v].append((e.u, e.value))
        for row in adj:
            row.sort()
        self.n = n
        self.mode = mode
        self.edges: tuple[Edge, ...] = tuple(sorted(index.values()))
        self._adj = tuple(tuple(row) for row in adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> tuple[tuple[int, float], ...]:
        """``(neighbor, value)`` pairs in ascending neighbor order."""
        return self._adj[u]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._index

    def value(self, u: int, v: int) -> float:
        try:
            return self._index[edge_key(u, v)].value
        except KeyError:
            raise KeyError(f"no edge ({u}, {v})") from None

    def edge(self, u: int, v: int) -> Edge:
        return self._index[edge_key(u, v)]

    def check_vertex(self, *vs: int) -> None:
        for x in vs:
            if not 0 <= x < self.n:
                raise ValueError(f"vertex {x} outside [0, {self.n})")

    def with_values(self, values: Iterable[float], mode: Mode | str) -> WeightedGraph:
        """Same topology, new per-edge values (in ``self.edges`` order)."""
        return WeightedGraph(
            self.n, [Edge(e.u, e.v, w) for e, w in zip(self.edges, values, strict=True)], mode
        )

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.mode == other.mode
            and [(e.u, e.v, e.value) for e in self.edges] == [(e.u, e.v, e.value) for e in other.edges]
        )

    def __hash__(self):
        return hash((self.n, self.mode, tuple((e.u, e.v, e.value) for e in self.edges)))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, mode={self.mode.value})"


# ---------------------------------------------------------------- text format


def load_graph(text: str | bytes) -> WeightedGraph:
    """Parse the edge-list format: ``<mode> <n>`` header, then ``<u> <v> <value>`` lines.

    Blank lines and lines starting with ``#`` are skipped. RISK weights must be
    strictly positive in files.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2 or parts[0].lower() not in ("risk", "prob"):
                raise GraphError(f"expected header '<risk|prob> <n>', got {line!r}", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 1:
                raise GraphError(f"vertex count must be >= 1, got {n}", lineno)
            header = (Mode(parts[0].lower()), n)
            continue
        mode, n = header
        if len(parts) != 3:
            raise GraphError(f"expected '<u> <v> <value>', got {line!r}", lineno)
        try:
            u, v, value = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphError(f"cannot parse {line!r}", lineno) from None
        if u == v:
            raise GraphError(f"self-loop on vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range [0, {n}) in {line!r}", lineno)
        if edge_key(u, v) in seen:
            raise GraphError(f"duplicate edge ({u}, {v})", lineno)
        _check_value(mode, value, lineno)
        if mode is Mode.RISK and value <= 0.0:
            raise GraphError(f"risk weight must be > 0, got {value!r}", lineno)
        seen.add(edge_key(u, v))
        edges.append(Edge(u, v, value))
    if header is None:
        raise GraphError("empty graph file", 1)
    return WeightedGraph(header[1], edges, header[0])


def dump_graph(g: WeightedGraph, comments: Iterable[str] = ()) -> str:
    """Inverse of :func:`load_graph`; values use ``repr`` so floats round-trip exactly."""
    lines = [f"{g.mode.value} {g.n}"]
    lines += [f"# {c}" for c in comments]
    lines += [f"{e.u} {e.v} {e.value!r}" for e in g.edges]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- connectivity


@dataclass(frozen=True)
class ComponentLabeling:
    labels: tuple[int, ...]
    count: int

    def same(self, u: int, v: int) -> bool:
        return self.labels[u] == self.labels[v]

    def members(self, label: int) -> list[int]:
        return [x for x, lab in enumerate(self.labels) if lab == label]


def connected_components(g: WeightedGraph) -> ComponentLabeling:
    labels = [-1] * g.n
    count = 0
    for start in range(g.n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            x = stack.pop()
            for y, _ in g.neighbors(x):
                if labels[y] < 0:
                    labels[y] = count
                    stack.append(y)
        count += 1
    return ComponentLabeling(tuple(labels), count)


def is_connected(g: WeightedGraph) -> bool:
    return connected_components(g).count == 1


# --------------------------------------------------------------- generation


def generate_random_graph(n: int, m: int, seed: int) -> WeightedGraph:
    """Connected uniform random graph with ``n`` vertices, ``m`` edges, unit weights.

    A random spanning tree is laid first (random vertex order, each vertex
    attached to a uniformly chosen earlier one), then ``m - (n - 1)`` further
    edges are drawn uniformly without replacement from the remaining pairs.
    Randomness comes from numpy's PCG64 seeded with ``seed``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    max_m = n * (n - 1) // 2
    if not n - 1 <= m <= max_m:
        raise ValueError(f"m must lie in [{n - 1}, {max_m}] for n={n}, got {m}")
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(n)
    chosen: set[tuple[int, int]] = set()
    for i in range(1, n):
        parent = order[int(rng.integers(i))]
        chosen.add(edge_key(int(order[i]), int(parent)))
    extra = m - (n - 1)
    if extra:
        rest = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in chosen]
        picks = rng.choice(len(rest), size=extra, replace=False)
        chosen.update(rest[int(k)] for k in picks)
    return WeightedGraph(n, [Edge(u, v, 1.0) for u, v in chosen], Mode.RISK)
