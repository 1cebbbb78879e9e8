"""Per-step scores averaged over time."""

from dataclasses import dataclass

import numpy as np

from src.core.errors import MetricError
from src.core.partition import LongitudinalPartition
from src.core.types import DynamicGraph, StepIndex
from src.detectors.louvain import modularity
from src.metrics.clustering import SCORES
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)


@dataclass(frozen=True)
class StepScores:
    """
    Attributes:
        per_step (tuple[float, ...]): Score of every evaluated step.
        steps (tuple[StepIndex, ...]): The evaluated steps.
        skipped (tuple[StepIndex, ...]): Steps with nothing to compare.
    """

    per_step: tuple[float, ...]
    steps: tuple[StepIndex, ...]
    skipped: tuple[StepIndex, ...] = ()

    @property
    def mean(self) -> float:
        if not self.per_step:
            raise MetricError("No step could be evaluated.")
        return float(np.mean(self.per_step))


def avg_step_scores(
    gt: LongitudinalPartition, found: LongitudinalPartition, score: str = "ami"
) -> StepScores:
    """
    Compare both partitions step by step on the tuples defined in both.

    Steps where no tuple is defined in both are skipped and recorded.
    """
    if score not in SCORES:
        raise MetricError(f"Unknown score '{score}'; choose among {sorted(SCORES)}.")
    function = SCORES[score]
    values, steps, skipped = [], [], []
    for t in range(max(gt.num_steps, found.num_steps)):
        expected, detected = gt.at(t), found.at(t)
        common = expected.keys() & detected.keys()
        if not common:
            skipped.append(t)
            continue
        values.append(function({n: expected[n] for n in common}, {n: detected[n] for n in common}))
        steps.append(t)
    if skipped:
        log.warning("%s: %s steps skipped, nothing jointly defined.", score, len(skipped))
    return StepScores(tuple(values), tuple(steps), tuple(skipped))


def avg_modularity(graph: DynamicGraph, found: LongitudinalPartition) -> StepScores:
    """
    Modularity of the found partition at every step with at least one node.

    Present nodes without a found label count as singleton communities.
    """
    values, steps, skipped = [], [], []
    for snapshot in graph:
        if not snapshot.nodes:
            skipped.append(snapshot.step)
            continue
        labels = found.at(snapshot.step)
        index: dict = {}
        partition = {}
        for node in sorted(snapshot.nodes):
            key = labels.get(node, ("singleton", node))
            partition[node] = index.setdefault(key, len(index))
        values.append(modularity(snapshot, partition))
        steps.append(snapshot.step)
    return StepScores(tuple(values), tuple(steps), tuple(skipped))
