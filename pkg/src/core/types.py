"""Domain value types shared by every module: nodes, communities, snapshots, dynamic graphs."""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import networkx as nx

NodeId = int
CommunityId = int
Label = str
StepIndex = int
Edge = tuple[NodeId, NodeId]

# node -> community index, total over the nodes of one snapshot
StaticPartition = Mapping[NodeId, int]


def edge(u: NodeId, v: NodeId) -> Edge:
    """Return the canonical (min, max) form of an undirected pair."""
    if u == v:
        raise ValueError(f"Self-loop on node {u} is not allowed.")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Community:
    """A community <id, label, nodes>. The label carries its identity across events."""

    id: CommunityId
    label: Label
    nodes: frozenset[NodeId]

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"Community id must be non-negative, got {self.id}.")
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("Community label must be a non-empty string.")
        if not self.nodes:
            raise ValueError(f"Community {self.id} ({self.label}) has no nodes.")
        object.__setattr__(self, "nodes", frozenset(self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class Snapshot:
    """The undirected simple graph at one step."""

    step: StepIndex
    nodes: frozenset[NodeId]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.step < 0:
            raise ValueError(f"Step index must be non-negative, got {self.step}.")
        nodes = frozenset(self.nodes)
        edges = frozenset(edge(u, v) for u, v in self.edges)
        for u, v in edges:
            if u not in nodes or v not in nodes:
                raise ValueError(f"Edge ({u}, {v}) at step {self.step} has an absent endpoint.")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    def graph(self, weight: float | None = None) -> nx.Graph:
        """Build a networkx graph with nodes and edges inserted in sorted order."""
        g = nx.Graph()
        g.add_nodes_from(sorted(self.nodes))
        if weight is None:
            g.add_edges_from(sorted(self.edges))
        else:
            g.add_edges_from((u, v, {"weight": weight}) for u, v in sorted(self.edges))
        return g


@dataclass(frozen=True)
class DynamicGraph:
    """Ordered snapshots with dense step indices 0..T-1."""

    snapshots: tuple[Snapshot, ...]

    def __post_init__(self):
        snapshots = tuple(self.snapshots)
        for t, snapshot in enumerate(snapshots):
            if snapshot.step != t:
                raise ValueError(f"Snapshot at position {t} has step {snapshot.step}.")
        object.__setattr__(self, "snapshots", snapshots)

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[Snapshot]:
        return iter(self.snapshots)

    def __getitem__(self, step: StepIndex) -> Snapshot:
        return self.snapshots[step]

    def prefix(self, steps: int) -> "DynamicGraph":
        """The first `steps` snapshots."""
        return DynamicGraph(self.snapshots[:steps])

    def nodes(self) -> frozenset[NodeId]:
        """Every node present at some step."""
        return frozenset().union(*(s.nodes for s in self.snapshots))


def communities_of(partition: StaticPartition) -> list[frozenset[NodeId]]:
    """Node sets of a static partition, ordered by community index."""
    groups: dict[int, set[NodeId]] = {}
    for node, index in partition.items():
        groups.setdefault(index, set()).add(node)
    return [frozenset(groups[i]) for i in sorted(groups)]


def canonical(partition: StaticPartition) -> dict[NodeId, int]:
    """Renumber community indices 0..k-1 in increasing order of their smallest node."""
    groups = sorted(communities_of(partition), key=min)
    return {node: i for i, group in enumerate(groups) for node in sorted(group)}


def from_communities(groups: Iterable[Iterable[NodeId]]) -> dict[NodeId, int]:
    """Static partition from an iterable of disjoint node groups."""
    partition: dict[NodeId, int] = {}
    for i, group in enumerate(groups):
        for node in group:
            if node in partition:
                raise ValueError(f"Node {node} belongs to two communities.")
            partition[node] = i
    return partition
