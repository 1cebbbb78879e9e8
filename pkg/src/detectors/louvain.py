"""Louvain modularity optimization on weighted networkx graphs."""

from collections import defaultdict
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from src.core.errors import DetectionError
from src.core.types import NodeId, Snapshot, StaticPartition, canonical, communities_of

WEIGHT = "weight"

# smallest modularity gain (in weight units) that counts as an improvement
_EPSILON = 1e-12


def modularity(graph: nx.Graph | Snapshot, partition: StaticPartition) -> float:
    """Newman modularity of a partition; 0 for a graph without edges."""
    if isinstance(graph, Snapshot):
        graph = graph.graph()
    if graph.size(weight=WEIGHT) == 0:
        return 0.0
    return nx.community.modularity(graph, communities_of(partition), weight=WEIGHT)


def _one_level(
    graph: nx.Graph, membership: dict, rng: np.random.Generator
) -> tuple[dict, bool]:
    """Local moves: move single nodes to the neighbouring community of best gain until none helps."""
    m2 = 2 * graph.size(weight=WEIGHT)
    degree = dict(graph.degree(weight=WEIGHT))
    total: dict[int, float] = defaultdict(float)
    for node, community in membership.items():
        total[community] += degree[node]

    order = rng.permutation(sorted(graph.nodes)).tolist()
    moved_any = False
    while True:
        moved = False
        for node in order:
            current = membership[node]
            k = degree[node]
            links: dict[int, float] = defaultdict(float)
            for neighbour, data in graph[node].items():
                if neighbour != node:
                    links[membership[neighbour]] += data.get(WEIGHT, 1.0)
            total[current] -= k
            best, best_gain = current, links.get(current, 0.0) - total[current] * k / m2
            for community in sorted(links):
                gain = links[community] - total[community] * k / m2
                if gain > best_gain + _EPSILON:
                    best, best_gain = community, gain
            total[best] += k
            if best != current:
                membership[node] = best
                moved = moved_any = True
        if not moved:
            return membership, moved_any


def _renumber(membership: dict) -> dict:
    """Community indices 0..k-1 in order of first appearance over sorted nodes."""
    mapping: dict[int, int] = {}
    for node in sorted(membership):
        mapping.setdefault(membership[node], len(mapping))
    return {node: mapping[c] for node, c in membership.items()}


def _aggregate(graph: nx.Graph, membership: dict) -> nx.Graph:
    """One node per community; inner weights become self-loops."""
    weights: dict[tuple[int, int], float] = defaultdict(float)
    for u, v, data in graph.edges(data=True):
        a, b = sorted((membership[u], membership[v]))
        weights[(a, b)] += data.get(WEIGHT, 1.0)
    aggregated = nx.Graph()
    aggregated.add_nodes_from(sorted(set(membership.values())))
    aggregated.add_weighted_edges_from(
        ((a, b, w) for (a, b), w in sorted(weights.items())), weight=WEIGHT
    )
    return aggregated


def louvain(
    graph: nx.Graph | Snapshot,
    seed: int | Sequence[int] = 0,
    seed_partition: Optional[StaticPartition] = None,
) -> dict[NodeId, int]:
    """
    Partition a graph by greedy modularity optimization.

    Args:
        graph (nx.Graph | Snapshot): Graph with optional `weight` edge attributes.
        seed (int | Sequence[int]): Seed of the node visit order.
        seed_partition (StaticPartition, optional): Starting partition. Nodes it does not
            cover start as singletons.

    Returns:
        dict[NodeId, int]: Canonical partition (indices ordered by smallest node).

    Raises:
        DetectionError: If the graph has no nodes.
    """
    if isinstance(graph, Snapshot):
        graph = graph.graph()
    if graph.number_of_nodes() == 0:
        raise DetectionError("Cannot detect communities in an empty graph.")

    nodes = sorted(graph.nodes)
    if seed_partition is None:
        membership = {node: i for i, node in enumerate(nodes)}
    else:
        membership = {node: seed_partition[node] for node in nodes if node in seed_partition}
        fresh = max(membership.values(), default=-1) + 1
        for node in nodes:
            if node not in membership:
                membership[node] = fresh
                fresh += 1
    if graph.size(weight=WEIGHT) == 0:
        return canonical(membership)

    rng = np.random.default_rng(seed)
    assignment = {node: node for node in nodes}
    current = graph
    while True:
        membership, _ = _one_level(current, membership, rng)
        membership = _renumber(membership)
        assignment = {node: membership[c] for node, c in assignment.items()}
        if len(set(membership.values())) == current.number_of_nodes():
            break
        current = _aggregate(current, membership)
        membership = {node: node for node in current.nodes}
    return canonical(assignment)
