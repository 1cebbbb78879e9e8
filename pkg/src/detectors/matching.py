"""Persistent labels for per-step partitions, by mutual best Jaccard match."""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import AbstractSet, Sequence

from src.core.errors import DetectionError
from src.core.partition import LongitudinalPartition
from src.core.types import NodeId, StaticPartition, communities_of


@dataclass(frozen=True)
class MatchingParams:
    """
    Attributes:
        jaccard_threshold (float): Smallest Jaccard coefficient for two communities of
            consecutive steps to share a label.
    """

    jaccard_threshold: float = 0.3

    def __post_init__(self):
        if not 0 <= self.jaccard_threshold <= 1:
            raise ValueError(f"jaccard_threshold must be in [0, 1], got {self.jaccard_threshold}.")

    @classmethod
    def from_config(cls, cfg: dict) -> "MatchingParams":
        """Build from the `detectors` section of params.yaml."""
        return cls(jaccard_threshold=float(cfg.get("jaccard_threshold", cls.jaccard_threshold)))


def jaccard(a: AbstractSet, b: AbstractSet) -> float:
    """|a ∩ b| / |a ∪ b|."""
    union = len(a | b)
    if union == 0:
        raise DetectionError("Jaccard coefficient of two empty sets is undefined.")
    return len(a & b) / union


def best_matches(
    previous: Sequence[frozenset[NodeId]], current: Sequence[frozenset[NodeId]]
) -> dict[int, tuple[int, float]]:
    """
    Mutual best matches between two lists of disjoint communities.

    Returns:
        dict[int, tuple[int, float]]: current index -> (previous index, Jaccard) for every
            pair where each is the other's most similar community, lowest index on ties.
    """
    owner = {node: i for i, community in enumerate(previous) for node in community}
    scores: dict[tuple[int, int], float] = {}
    for j, community in enumerate(current):
        overlaps = Counter(owner[n] for n in community if n in owner)
        for i, shared in overlaps.items():
            scores[(i, j)] = shared / (len(previous[i]) + len(community) - shared)

    best_of_previous: dict[int, tuple[float, int]] = {}
    best_of_current: dict[int, tuple[float, int]] = {}
    for (i, j), score in sorted(scores.items()):
        if i not in best_of_previous or score > best_of_previous[i][0]:
            best_of_previous[i] = (score, j)
        if j not in best_of_current or score > best_of_current[j][0]:
            best_of_current[j] = (score, i)
    return {
        j: (i, score)
        for j, (score, i) in best_of_current.items()
        if best_of_previous[i][1] == j
    }


def match_labels(
    partitions: Sequence[StaticPartition], params: MatchingParams = MatchingParams()
) -> LongitudinalPartition:
    """
    Give persistent labels to the communities of consecutive static partitions.

    A community inherits the label of the previous step's community when each is the other's
    most similar one and their Jaccard coefficient reaches the threshold. Every other
    community receives a new label.
    """
    fresh = (str(k) for k in itertools.count())
    assignments: dict[tuple[NodeId, int], str] = {}
    previous: list[frozenset[NodeId]] = []
    previous_labels: list[str] = []
    for t, partition in enumerate(partitions):
        current = communities_of(partition)
        matches = best_matches(previous, current)
        labels = []
        for j in range(len(current)):
            if j in matches and matches[j][1] >= params.jaccard_threshold:
                labels.append(previous_labels[matches[j][0]])
            else:
                labels.append(next(fresh))
        for community, label in zip(current, labels):
            for node in community:
                assignments[(node, t)] = label
        previous, previous_labels = current, labels
    return LongitudinalPartition(assignments)
