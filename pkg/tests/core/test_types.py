"""Tests for the core value types."""

import pytest

from src.core.types import (
    Community,
    DynamicGraph,
    Snapshot,
    canonical,
    communities_of,
    edge,
)


def test_edge_is_canonical():
    """Pairs are stored smallest node first."""
    assert edge(5, 2) == (2, 5)
    assert edge(2, 5) == (2, 5)


def test_edge_rejects_self_loop():
    """Snapshots are simple graphs."""
    with pytest.raises(ValueError):
        edge(3, 3)


def test_community_requires_nodes():
    """An active community is never empty."""
    with pytest.raises(ValueError):
        Community(0, "A", frozenset())
    assert len(Community(0, "A", {1, 2})) == 2


def test_snapshot_canonicalizes_edges():
    """Edges given in any orientation are stored once, smallest node first."""
    snapshot = Snapshot(0, {0, 1, 2}, {(1, 0), (0, 1), (2, 1)})
    assert snapshot.edges == frozenset({(0, 1), (1, 2)})


def test_snapshot_rejects_absent_endpoint():
    """Every edge endpoint is a present node."""
    with pytest.raises(ValueError):
        Snapshot(0, {0, 1}, {(0, 2)})


def test_snapshot_graph_weights():
    """A weight is attached to every edge when requested."""
    graph = Snapshot(0, {0, 1, 2}, {(0, 1)}).graph(weight=2.0)
    assert sorted(graph.nodes) == [0, 1, 2]
    assert graph[0][1]["weight"] == 2.0


def test_dynamic_graph_requires_dense_steps():
    """Snapshot steps are 0..T-1 in order."""
    with pytest.raises(ValueError):
        DynamicGraph((Snapshot(0, {0}), Snapshot(2, {0})))


def test_dynamic_graph_prefix_and_nodes():
    """Prefixes keep the first steps; nodes are collected over all steps."""
    graph = DynamicGraph((Snapshot(0, {0, 1}, {(0, 1)}), Snapshot(1, {2}), Snapshot(2, set())))
    assert len(graph) == 3
    assert len(graph.prefix(2)) == 2
    assert graph.nodes() == frozenset({0, 1, 2})
    assert graph[1].nodes == frozenset({2})


def test_canonical_orders_by_smallest_node():
    """Canonical indices follow the smallest node of each community."""
    partition = {0: 7, 1: 3, 2: 7, 3: 3}
    assert canonical(partition) == {0: 0, 2: 0, 1: 1, 3: 1}
    assert communities_of({0: 1, 1: 0}) == [frozenset({1}), frozenset({0})]
