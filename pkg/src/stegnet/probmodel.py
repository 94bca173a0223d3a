"""Reliability planning on probabilistic graphs via the ``w = log2(1/p)`` transform."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Mode, WeightedGraph
from .multipoint import CommTask, PlanSolution, solve_multipoint


@dataclass(frozen=True)
class ReliabilityResult:
    plan: PlanSolution  # edges carry the transformed log2 weights
    reliability: float
    equivalent_risk: float


def prob_to_weight(g: WeightedGraph) -> WeightedGraph:
    if g.mode is not Mode.PROB:
        raise ValueError("expected a PROB-mode graph")
    # + 0.0 turns -0.0 (from p == 1) into 0.0
    return g.with_values((-math.log2(e.value) + 0.0 for e in g.edges), Mode.RISK)


def weight_to_prob(g: WeightedGraph) -> WeightedGraph:
    if g.mode is not Mode.RISK:
        raise ValueError("expected a RISK-mode graph")
    return g.with_values((2.0 ** -e.value for e in g.edges), Mode.PROB)


def path_reliability(g: WeightedGraph, vertices) -> float:
    """Product of edge probabilities along ``vertices``; 1 for a single vertex."""
    vs = list(vertices)
    if not vs:
        raise ValueError("empty vertex sequence")
    g.check_vertex(*vs)
    probs = []
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"vertices {a} and {b} are not adjacent")
        probs.append(g.value(a, b))
    return math.prod(probs)


def edge_set_reliability(g: WeightedGraph, keys) -> float:
    return math.prod(g.value(u, v) for u, v in keys)


def solve_probabilistic(g: WeightedGraph, task: CommTask, exact: bool = False) -> ReliabilityResult:
    """Maximize the product of edge probabilities over the plan's edges.

    Solved as the additive problem on ``prob_to_weight(g)``. For a forest
    spanning several groups the reported reliability is the product over
    every selected edge.
    """
    plan = solve_multipoint(prob_to_weight(g), task, exact=exact)
    reliability = edge_set_reliability(g, plan.edge_keys)
    return ReliabilityResult(plan, reliability, plan.risk)
