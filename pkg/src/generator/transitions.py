"""Progressive transitions: one edge modification per step, from `before` edges to `after` edges."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from src.core.types import Edge, NodeId
from src.generator.affinity import AffinityOracle
from src.generator.blocks import BlockEdges
from src.generator.density import internal_edge_count
from src.generator.params import GeneratorParams


class Op(str, Enum):
    """Kind of an edge modification."""

    ADD = "add"
    REMOVE = "remove"


class Modification(NamedTuple):
    """One edge added or removed."""

    op: Op
    edge: Edge


@dataclass(frozen=True)
class TransitionPlan:
    """
    Ordered edge modifications of one transition.

    Applying the first k modifications gives the internal edges at the k-th step of the
    transition; applying all of them gives the after edges.
    """

    modifications: tuple[Modification, ...]
    event_id: int = -1
    start_step: int = 0

    def __len__(self) -> int:
        return len(self.modifications)

    def apply(self, edges: Iterable[Edge], k: int) -> set[Edge]:
        """The edge set after the first `k` modifications."""
        result = set(edges)
        for op, e in self.modifications[:k]:
            if op is Op.ADD:
                result.add(e)
            else:
                result.discard(e)
        return result


def _by_affinity(oracle: AffinityOracle, edges: set[Edge], descending: bool) -> list[Edge]:
    """Edges sorted by affinity, ties broken by the pair."""
    ordered = sorted(edges)
    if not ordered:
        return []
    pairs = np.array(ordered, dtype=np.int64)
    scores = oracle.many(pairs[:, 0], pairs[:, 1])
    order = np.lexsort((pairs[:, 1], pairs[:, 0], -scores if descending else scores))
    return [ordered[i] for i in order]


def plan_transition(
    oracle: AffinityOracle,
    before_edges: Iterable[Edge],
    after_edges: Iterable[Edge],
    event_id: int = -1,
    start_step: int = 0,
) -> TransitionPlan:
    """
    Plan the minimal sequence of modifications from `before_edges` to `after_edges`.

    Additions are made in decreasing affinity order and removals in increasing affinity
    order, interleaved proportionally so that density stays close to its endpoints.
    Additions come first when positions are equal.
    """
    before, after = set(before_edges), set(after_edges)
    additions = _by_affinity(oracle, after - before, descending=True)
    removals = _by_affinity(oracle, before - after, descending=False)

    keyed = [((k + 0.5) / len(additions), 0, Modification(Op.ADD, e)) for k, e in enumerate(additions)]
    keyed += [((k + 0.5) / len(removals), 1, Modification(Op.REMOVE, e)) for k, e in enumerate(removals)]
    keyed.sort(key=lambda item: (item[0], item[1]))
    return TransitionPlan(tuple(m for _, _, m in keyed), event_id, start_step)


class TransitionPlanner:
    """Internal edges of communities and the plans between them, for one set of parameters."""

    def __init__(self, params: GeneratorParams):
        self.params = params
        self.oracle = AffinityOracle(params.seed)
        self.blocks = BlockEdges(self.oracle)

    def internal_edges(self, nodes: Iterable[NodeId]) -> frozenset[Edge]:
        """Edges of one community in its stable state."""
        nodes = frozenset(nodes)
        return self.blocks.intra(nodes, internal_edge_count(len(nodes), self.params.alpha))

    def union_edges(self, communities: Sequence[Iterable[NodeId]]) -> frozenset[Edge]:
        """Internal edges of disjoint communities."""
        return frozenset().union(*(self.internal_edges(c) for c in communities))

    def plan(
        self,
        before: Sequence[Iterable[NodeId]],
        after: Sequence[Iterable[NodeId]],
        event_id: int = -1,
        start_step: int = 0,
    ) -> TransitionPlan:
        """Plan from the internal edges of `before` to the internal edges of `after`."""
        return plan_transition(
            self.oracle, self.union_edges(before), self.union_edges(after), event_id, start_step
        )

    def transition_length(
        self, before: Sequence[Iterable[NodeId]], after: Sequence[Iterable[NodeId]]
    ) -> int:
        """Duration in steps of a transition: the size of the symmetric difference of edges."""
        return len(self.union_edges(before) ^ self.union_edges(after))
