"""Smoothness of a longitudinal partition: how little it changes from one step to the next."""

from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import entropy

from src.core.errors import MetricError
from src.core.partition import LongitudinalPartition
from src.metrics.clustering import nmi


class SmPMode(str, Enum):
    """`similarity` is the mean successive NMI; `literal` is its complement."""

    SIMILARITY = "similarity"
    LITERAL = "literal"


@dataclass(frozen=True)
class SmoothnessReport:
    """Composite smoothness scores and the raw quantities they derive from."""

    sm_p: float
    sm_p_literal: float
    mean_nmi: float
    sm_n: float
    changes: int
    sm_l: float
    mean_entropy: float


def mean_successive_nmi(found: LongitudinalPartition) -> float:
    """
    Mean NMI between the partitions of consecutive steps, on the nodes present in both.

    Raises:
        MetricError: With fewer than two steps, or no pair of steps sharing a node.
    """
    if found.num_steps < 2:
        raise MetricError(f"Smoothness needs at least 2 steps, got {found.num_steps}.")
    values = []
    for t in range(found.num_steps - 1):
        now, after = found.at(t), found.at(t + 1)
        common = now.keys() & after.keys()
        if common:
            values.append(nmi({n: now[n] for n in common}, {n: after[n] for n in common}))
    if not values:
        raise MetricError("No consecutive steps share a node.")
    return float(np.mean(values))


def sm_p(found: LongitudinalPartition, mode: SmPMode | str = SmPMode.SIMILARITY) -> float:
    """Partition smoothness: mean successive NMI, or 1 minus it in literal mode."""
    similarity = mean_successive_nmi(found)
    return similarity if SmPMode(mode) is SmPMode.SIMILARITY else 1 - similarity


def label_changes(found: LongitudinalPartition) -> int:
    """Number of (node, step) where the node is labeled at step and step + 1, differently."""
    changes = 0
    for labels in found.by_node.values():
        for t, label in labels.items():
            following = labels.get(t + 1)
            if label is not None and following is not None and following != label:
                changes += 1
    return changes


def sm_n(found: LongitudinalPartition) -> float:
    """Node smoothness, 1 / (1 + number of label changes)."""
    return 1 / (1 + label_changes(found))


def mean_label_entropy(found: LongitudinalPartition) -> float:
    """Mean over nodes of the Shannon entropy (natural log) of their labels over time."""
    entropies = []
    for labels in found.by_node.values():
        counts = Counter(l for l in labels.values() if l is not None)
        if counts:
            entropies.append(float(entropy(list(counts.values()))))
    return float(np.mean(entropies)) if entropies else 0.0


def sm_l(found: LongitudinalPartition) -> float:
    """Label smoothness, 1 / (1 + mean label entropy)."""
    return 1 / (1 + mean_label_entropy(found))


def smoothness(
    found: LongitudinalPartition, mode: SmPMode | str = SmPMode.SIMILARITY
) -> SmoothnessReport:
    """Every smoothness score of a partition; `mode` decides which SM-P variant is `sm_p`."""
    similarity = mean_successive_nmi(found)
    changes = label_changes(found)
    mean_h = mean_label_entropy(found)
    return SmoothnessReport(
        sm_p=similarity if SmPMode(mode) is SmPMode.SIMILARITY else 1 - similarity,
        sm_p_literal=1 - similarity,
        mean_nmi=similarity,
        sm_n=1 / (1 + changes),
        changes=changes,
        sm_l=1 / (1 + mean_h),
        mean_entropy=mean_h,
    )
