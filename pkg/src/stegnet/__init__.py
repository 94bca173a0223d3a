"""Graph models for planning and attacking covert communication on social networks."""

from .graph import (
    ComponentLabeling,
    Edge,
    GraphError,
    Mode,
    NoPathError,
    WeightedGraph,
    connected_components,
    dump_graph,
    generate_random_graph,
    load_graph,
)
from .pathfind import (
    GraphTooLargeError,
    PathResult,
    all_pairs_distances,
    bfs_shortest_path,
    dijkstra,
    enumerate_simple_paths,
    min_vertex_shortest_path,
    path_risk,
)
from .multipoint import (
    CommTask,
    PlanSolution,
    UnreachableTerminalError,
    load_task,
    minimum_spanning_tree,
    partition_tasks,
    solve_multipoint,
    steiner_approx,
    steiner_exact_small,
    validate_solution,
)
from .probmodel import ReliabilityResult, path_reliability, prob_to_weight, solve_probabilistic
from .detect import (
    AttackSet,
    PhrCurve,
    PsrTable,
    edge_support_counts,
    path_support_rates,
    phr_curve_experiment,
    select_attack_set,
    simulate_phr,
)

__version__ = "0.1.0"
