"""Multi-point planning: task grouping, MST, Steiner-tree approximation and exact oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Edge, GraphError, Mode, NoPathError, WeightedGraph, connected_components
from .pathfind import GraphTooLargeError, risk_equal, shortest_path_tree


class UnreachableTerminalError(NoPathError):
    def __init__(self, group: int, u: int, v: int):
        self.group, self.u, self.v = group, u, v
        super().__init__(f"group {group}: terminals {u} and {v} are not connected")


class DisjointSet:
    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {x: x for x in items}

    def find(self, x: int) -> int:
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller root id wins so component representatives are deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


# ----------------------------------------------------------------- tasks


@dataclass(frozen=True)
class CommTask:
    """Encoders ``s_i`` with their decoder sets ``T_i``."""

    encoders: tuple[int, ...]
    decoder_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "encoders", tuple(int(s) for s in self.encoders))
        object.__setattr__(
            self, "decoder_sets", tuple(frozenset(int(t) for t in ts) for ts in self.decoder_sets)
        )
        if len(self.encoders) != len(self.decoder_sets):
            raise ValueError("one decoder set is needed per encoder")
        for s, ts in zip(self.encoders, self.decoder_sets):
            if not ts:
                raise ValueError(f"encoder {s} has an empty decoder set")
            if s in ts:
                raise ValueError(f"encoder {s} lists itself as a decoder")

    @classmethod
    def p2p(cls, s: int, t: int) -> CommTask:
        return cls((s,), (frozenset({t}),))

    @property
    def unions(self) -> list[frozenset[int]]:
        """``U_i = {s_i} | T_i`` for each encoder."""
        return [ts | {s} for s, ts in zip(self.encoders, self.decoder_sets)]

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset().union(*self.unions)

    def check(self, g: WeightedGraph) -> None:
        g.check_vertex(*sorted(self.terminals))


def load_task(text: str | bytes) -> CommTask:
    """Parse ``tasks <k>`` then ``k`` lines of ``<s> : <t1> <t2> ...``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    k = None
    encoders, decoders = [], []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if k is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "tasks" or not parts[1].isdigit():
                raise GraphError(f"expected header 'tasks <k>', got {line!r}", lineno)
            k = int(parts[1])
            continue
        head, sep, tail = line.partition(":")
        try:
            if not sep:
                raise ValueError
            s = int(head)
            ts = [int(t) for t in tail.split()]
        except ValueError:
            raise GraphError(f"expected '<s> : <t1> <t2> ...', got {line!r}", lineno) from None
        encoders.append(s)
        decoders.append(ts)
    if k is None:
        raise GraphError("empty task file", 1)
    if len(encoders) != k:
        raise GraphError(f"header announces {k} tasks, found {len(encoders)}")
    try:
        return CommTask(tuple(encoders), tuple(frozenset(ts) for ts in decoders))
    except ValueError as exc:
        raise GraphError(str(exc)) from None


def dump_task(task: CommTask) -> str:
    lines = [f"tasks {len(task.encoders)}"]
    for s, ts in zip(task.encoders, task.decoder_sets):
        lines.append(f"{s} : " + " ".join(str(t) for t in sorted(ts)))
    return "\n".join(lines) + "\n"


def partition_tasks(task: CommTask) -> list[CommTask]:
    """Merge encoder tasks whose ``U_i`` sets overlap, transitively.

    Groups are ordered by their smallest vertex; encoders keep input order.
    """
    unions = task.unions
    dsu = DisjointSet()
    for u in unions:
        first = min(u)
        for x in u:
            dsu.union(first, x)
    groups: dict[int, list[int]] = {}
    for i, u in enumerate(unions):
        groups.setdefault(dsu.find(min(u)), []).append(i)
    out = []
    for root in sorted(groups):
        idx = groups[root]
        out.append(CommTask(tuple(task.encoders[i] for i in idx), tuple(task.decoder_sets[i] for i in idx)))
    return out


# -------------------------------------------------------------- solutions


@dataclass(frozen=True)
class GroupPlan:
    terminals: frozenset[int]
    edges: tuple[Edge, ...]
    risk: float


@dataclass(frozen=True)
class PlanSolution:
    """Selected edges (a forest), their total risk, and the per-group trees."""

    edges: tuple[Edge, ...]
    risk: float
    groups: tuple[GroupPlan, ...] = ()

    @property
    def edge_keys(self) -> set[tuple[int, int]]:
        return {e.key for e in self.edges}


def total_risk(edges: Iterable[Edge]) -> float:
    return math.fsum(e.value for e in edges)


def _kruskal(edges: Iterable[Edge]) -> list[Edge]:
    """Minimum spanning forest; ties broken by ``(weight, u, v)``."""
    dsu = DisjointSet()
    return [e for e in sorted(edges, key=lambda e: (e.value, e.u, e.v)) if dsu.union(e.u, e.v)]


def _prune_leaves(edges: Iterable[Edge], keep: frozenset[int] | set[int]) -> list[Edge]:
    """Repeatedly drop edges hanging off non-terminal leaves."""
    alive = {e.key: e for e in edges}
    incident: dict[int, set[tuple[int, int]]] = {}
    for k in alive:
        incident.setdefault(k[0], set()).add(k)
        incident.setdefault(k[1], set()).add(k)
    stack = [x for x, ks in incident.items() if len(ks) == 1 and x not in keep]
    while stack:
        x = stack.pop()
        if len(incident[x]) != 1:
            continue
        (k,) = incident[x]
        del alive[k]
        incident[x].clear()
        y = k[0] if k[1] == x else k[1]
        incident[y].discard(k)
        if len(incident[y]) == 1 and y not in keep:
            stack.append(y)
    return sorted(alive.values())


def _require_risk(g: WeightedGraph) -> None:
    if g.mode is not Mode.RISK:
        raise ValueError("planning needs a RISK-mode graph; transform PROB graphs first")


def minimum_spanning_tree(g: WeightedGraph) -> PlanSolution:
    """Kruskal's algorithm over edges sorted by ``(weight, u, v)``."""
    _require_risk(g)
    tree = _kruskal(g.edges)
    if len(tree) != g.n - 1:
        raise NoPathError("graph is disconnected; no spanning tree exists")
    tree.sort()
    risk = total_risk(tree)
    return PlanSolution(tuple(tree), risk, (GroupPlan(frozenset(range(g.n)), tuple(tree), risk),))


def _check_terminals(g: WeightedGraph, terminals: Sequence[int], group: int = 0) -> None:
    labels = connected_components(g).labels
    first = terminals[0]
    for t in terminals[1:]:
        if labels[t] != labels[first]:
            raise UnreachableTerminalError(group, first, t)


def steiner_approx(g: WeightedGraph, terminals: Iterable[int]) -> PlanSolution:
    """Metric-closure 2-approximation of the minimum Steiner tree.

    1. complete graph on the terminals weighted by shortest-path risk;
    2. MST of that closure;
    3. replace each closure edge by its shortest path in ``g``;
    4. MST of the union, then strip non-terminal leaves.
    """
    _require_risk(g)
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("at least one terminal is required")
    g.check_vertex(*terms)
    _check_terminals(g, terms)
    keep = frozenset(terms)
    if len(terms) == 1:
        return PlanSolution((), 0.0, (GroupPlan(keep, (), 0.0),))
    trees = {t: shortest_path_tree(g, t) for t in terms}
    closure = [Edge(a, b, trees[a][0][b]) for a, b in itertools.combinations(terms, 2)]
    used: dict[tuple[int, int], Edge] = {}
    for ce in _kruskal(closure):
        pred = trees[ce.u][1]
        x = ce.v
        while x != ce.u:
            e = g.edge(x, pred[x])
            used[e.key] = e
            x = pred[x]
    tree = _prune_leaves(_kruskal(used.values()), keep)
    risk = total_risk(tree)
    return PlanSolution(tuple(tree), risk, (GroupPlan(keep, tuple(tree), risk),))


def steiner_exact_small(g: WeightedGraph, terminals: Iterable[int], max_n: int = 14) -> PlanSolution:
    """Optimal Steiner tree by trying every subset of non-terminal vertices.

    For each subset the MST of the subgraph induced by terminals + subset is
    taken (when it connects everything). Among minimum-risk trees the one
    with the lexicographically smallest sorted edge list is returned.
    """
    _require_risk(g)
    if g.n > max_n:
        raise GraphTooLargeError(f"graph has {g.n} vertices, exact Steiner limit is {max_n}")
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("at least one terminal is required")
    g.check_vertex(*terms)
    _check_terminals(g, terms)
    keep = frozenset(terms)
    if len(terms) == 1:
        return PlanSolution((), 0.0, (GroupPlan(keep, (), 0.0),))
    others = [x for x in range(g.n) if x not in keep]
    best = None
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            vs = keep.union(extra)
            sub = [e for e in g.edges if e.u in vs and e.v in vs]
            forest = _kruskal(sub)
            if len(forest) != len(vs) - 1:
                continue
            tree = _prune_leaves(forest, keep)
            cand = (total_risk(tree), [e.key for e in tree], tree)
            if best is None or cand[0] < best[0] or (cand[0] == best[0] and cand[1] < best[1]):
                best = cand
    risk, _, tree = best
    return PlanSolution(tuple(tree), risk, (GroupPlan(keep, tuple(tree), risk),))


def _merge_groups(g: WeightedGraph, group_terms: list[frozenset[int]], edges: Iterable[Edge]) -> PlanSolution:
    keep = frozenset().union(*group_terms)
    forest = _prune_leaves(_kruskal(edges), keep)
    dsu = DisjointSet()
    for e in forest:
        dsu.union(e.u, e.v)
    plans = []
    for terms in group_terms:
        root = dsu.find(min(terms))
        own = tuple(e for e in forest if dsu.find(e.u) == root)
        plans.append(GroupPlan(terms, own, total_risk(own)))
    return PlanSolution(tuple(forest), total_risk(forest), tuple(plans))


def solve_multipoint(g: WeightedGraph, task: CommTask, exact: bool = False) -> PlanSolution:
    """Plan all encoder->decoder deliveries of ``task`` with minimum total risk.

    Tasks are grouped with :func:`partition_tasks`; each group gets a Steiner
    tree over its terminals (approximate by default, exact with ``exact=True``
    on small graphs). The union is reduced to a spanning forest so that
    groups whose trees happen to touch never produce a cycle; each edge's
    risk counts once.
    """
    _require_risk(g)
    task.check(g)
    groups = partition_tasks(task)
    group_terms = [grp.terminals for grp in groups]
    for i, terms in enumerate(group_terms):
        _check_terminals(g, sorted(terms), group=i)
    solve = steiner_exact_small if exact else steiner_approx
    used: dict[tuple[int, int], Edge] = {}
    for terms in group_terms:
        for e in solve(g, terms).edges:
            used[e.key] = e
    return _merge_groups(g, group_terms, used.values())


def validate_solution(g: WeightedGraph, sol: PlanSolution, task: CommTask) -> tuple[bool, str]:
    """Check a plan against the graph and task; returns ``(ok, diagnostic)``.

    Conditions, in the order reported: edges exist with matching values,
    no cycle, every terminal covered, each task group connected, risk equals
    the edge-value sum.
    """
    for e in sol.edges:
        if not g.has_edge(e.u, e.v):
            return False, f"unknown edge ({e.u}, {e.v})"
        if not risk_equal(g.value(e.u, e.v), e.value):
            return False, f"edge ({e.u}, {e.v}) value {e.value!r} differs from graph"
    dsu = DisjointSet()
    for e in sol.edges:
        if not dsu.union(e.u, e.v):
            return False, f"cycle closed by edge ({e.u}, {e.v})"
    covered = {x for e in sol.edges for x in e.key}
    for grp in partition_tasks(task):
        terms = sorted(grp.terminals)
        for t in terms:
            if t not in covered:
                return False, f"uncovered terminal {t}"
        root = dsu.find(terms[0])
        for t in terms[1:]:
            if dsu.find(t) != root:
                return False, f"disconnected group: terminals {terms[0]} and {t}"
    if not risk_equal(total_risk(sol.edges), sol.risk):
        return False, f"risk {sol.risk!r} does not match edge sum {total_risk(sol.edges)!r}"
    return True, "ok"
