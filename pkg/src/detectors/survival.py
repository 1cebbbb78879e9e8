"""Community survival graph: static communities of every step linked by Jaccard similarity."""

from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx
import numpy as np
from scipy import sparse

from src.core.types import NodeId, StaticPartition, communities_of
from src.detectors.louvain import WEIGHT

Occurrence = tuple[int, int]  # (step, community index)


@dataclass(frozen=True)
class SurvivalGraph:
    """
    Weighted graph over static communities.

    Node i of `graph` stands for the occurrences `members[i]`. With an unlimited window,
    occurrences with identical node sets share one node and the self-loop carries their
    pairwise similarity.
    """

    graph: nx.Graph
    members: tuple[tuple[Occurrence, ...], ...]


def _incidence(sets: Sequence[frozenset[NodeId]]) -> sparse.csr_matrix:
    nodes = sorted(frozenset().union(*sets))
    column = {node: k for k, node in enumerate(nodes)}
    rows = np.repeat(np.arange(len(sets)), [len(s) for s in sets])
    cols = np.fromiter((column[n] for s in sets for n in sorted(s)), dtype=np.int64, count=len(rows))
    data = np.ones(len(rows), dtype=np.float64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(len(sets), len(nodes)))


def _similar_pairs(
    sets: Sequence[frozenset[NodeId]], threshold: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pairs i < j of sets with positive Jaccard at least `threshold`, with that Jaccard."""
    if len(sets) < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, np.empty(0)
    incidence = _incidence(sets)
    shared = sparse.triu(incidence @ incidence.T, k=1).tocoo()
    sizes = np.array([len(s) for s in sets], dtype=np.float64)
    scores = shared.data / (sizes[shared.row] + sizes[shared.col] - shared.data)
    keep = (scores >= threshold) & (scores > 0)
    return shared.row[keep], shared.col[keep], scores[keep]


def survival_graph(
    partitions: Sequence[StaticPartition], threshold: float = 0.3, window: Optional[int] = None
) -> SurvivalGraph:
    """
    Build the survival graph of per-step partitions.

    Args:
        partitions (Sequence[StaticPartition]): One partition per step.
        threshold (float): Smallest Jaccard coefficient of an edge.
        window (int, optional): Largest step distance of an edge; None for no limit.

    Returns:
        SurvivalGraph: Edges only join communities of different steps.
    """
    occurrences: list[Occurrence] = []
    sets: list[frozenset[NodeId]] = []
    for t, partition in enumerate(partitions):
        for index, community in enumerate(communities_of(partition)):
            occurrences.append((t, index))
            sets.append(community)

    graph = nx.Graph()
    if window is None:
        groups: dict[frozenset[NodeId], list[Occurrence]] = {}
        for occurrence, nodes in zip(occurrences, sets):
            groups.setdefault(nodes, []).append(occurrence)
        unique = list(groups)
        counts = [len(groups[s]) for s in unique]
        graph.add_nodes_from(range(len(unique)))
        for i, count in enumerate(counts):
            if count > 1:
                graph.add_edge(i, i, **{WEIGHT: count * (count - 1) / 2})
        rows, cols, scores = _similar_pairs(unique, threshold)
        for i, j, score in zip(rows.tolist(), cols.tolist(), scores.tolist()):
            graph.add_edge(i, j, **{WEIGHT: score * counts[i] * counts[j]})
        members = tuple(tuple(groups[s]) for s in unique)
        return SurvivalGraph(graph, members)

    graph.add_nodes_from(range(len(sets)))
    steps = np.array([t for t, _ in occurrences], dtype=np.int64)
    rows, cols, scores = _similar_pairs(sets, threshold)
    distance = np.abs(steps[rows] - steps[cols]) if len(rows) else np.empty(0, dtype=np.int64)
    keep = (distance > 0) & (distance <= window)
    for i, j, score in zip(rows[keep].tolist(), cols[keep].tolist(), scores[keep].tolist()):
        graph.add_edge(i, j, **{WEIGHT: score})
    return SurvivalGraph(graph, tuple((o,) for o in occurrences))
