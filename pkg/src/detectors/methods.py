"""Dynamic community detection methods and their registry."""

from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import networkx as nx

from src.core.errors import DetectionError
from src.core.partition import LongitudinalPartition
from src.core.types import DynamicGraph, NodeId, Snapshot, StaticPartition, communities_of
from src.detectors.louvain import WEIGHT, louvain
from src.detectors.matching import MatchingParams, match_labels
from src.detectors.survival import survival_graph
from src.utils.log_utils import setup_logger
from src.utils.parallel_utils import parallel_map

log = setup_logger(__name__)


@dataclass(frozen=True)
class SmoothedGraphParams:
    """
    Attributes:
        alpha_sg (float): Weight of the current adjacency; 1 - alpha_sg goes to the previous
            step's co-membership.
    """

    alpha_sg: float = 0.9

    def __post_init__(self):
        if not 0 <= self.alpha_sg <= 1:
            raise ValueError(f"alpha_sg must be in [0, 1], got {self.alpha_sg}.")


@dataclass(frozen=True)
class LabelSmoothingParams:
    """
    Attributes:
        jaccard_threshold (float): Smallest Jaccard coefficient of a survival-graph edge.
        window (int, optional): Largest step distance of a survival-graph edge, None for all.
    """

    jaccard_threshold: float = 0.3
    window: Optional[int] = None

    def __post_init__(self):
        if not 0 <= self.jaccard_threshold <= 1:
            raise ValueError(f"jaccard_threshold must be in [0, 1], got {self.jaccard_threshold}.")
        if self.window is not None and self.window < 1:
            raise ValueError(f"window must be positive, got {self.window}.")


@dataclass(frozen=True)
class DetectorConfig:
    """Parameters of every method, read from the `detectors` section of params.yaml."""

    matching: MatchingParams = field(default_factory=MatchingParams)
    smoothed_graph: SmoothedGraphParams = field(default_factory=SmoothedGraphParams)
    label_smoothing: LabelSmoothingParams = field(default_factory=LabelSmoothingParams)
    jobs: int = 1

    @classmethod
    def from_config(cls, cfg: dict, jobs: Optional[int] = None) -> "DetectorConfig":
        threshold = float(cfg.get("jaccard_threshold", 0.3))
        window = cfg.get("survival_window")
        return cls(
            matching=MatchingParams(threshold),
            smoothed_graph=SmoothedGraphParams(float(cfg.get("alpha_sg", 0.9))),
            label_smoothing=LabelSmoothingParams(threshold, None if window is None else int(window)),
            jobs=int(jobs if jobs is not None else cfg.get("jobs", 1)),
        )


def _step_seed(seed: int, step: int) -> list[int]:
    return [seed, step]


def _static(snapshot: Snapshot, seed: int) -> dict[NodeId, int]:
    """Louvain on one snapshot; a snapshot without nodes has an empty partition."""
    if not snapshot.nodes:
        return {}
    return louvain(snapshot.graph(weight=1.0), _step_seed(seed, snapshot.step))


def static_partitions(graph: DynamicGraph, seed: int = 0, jobs: int = 1) -> list[dict[NodeId, int]]:
    """Independent Louvain partition of every snapshot, in parallel over `jobs` threads."""
    return parallel_map(partial(_static, seed=seed), graph.snapshots, jobs)


def no_smoothing(
    graph: DynamicGraph, seed: int = 0, matching: MatchingParams = MatchingParams(), jobs: int = 1
) -> LongitudinalPartition:
    """Louvain on every snapshot from scratch, then label matching."""
    return match_labels(static_partitions(graph, seed, jobs), matching)


def implicit_global(
    graph: DynamicGraph, seed: int = 0, matching: MatchingParams = MatchingParams()
) -> LongitudinalPartition:
    """Louvain on every snapshot, started from the previous step's partition."""
    partitions: list[dict[NodeId, int]] = []
    previous: Optional[StaticPartition] = None
    for snapshot in graph:
        if not snapshot.nodes:
            partitions.append({})
            previous = None
            continue
        start = None if previous is None else {n: c for n, c in previous.items() if n in snapshot.nodes}
        previous = louvain(snapshot.graph(weight=1.0), _step_seed(seed, snapshot.step), start)
        partitions.append(previous)
    return match_labels(partitions, matching)


def smoothed_weights(
    snapshot: Snapshot, previous: Optional[StaticPartition], alpha_sg: float
) -> nx.Graph:
    """
    alpha_sg * A + (1 - alpha_sg) * C, where C joins pairs co-membered at the previous step.

    Only pairs with a non-zero weight are materialized.
    """
    weights: dict[tuple[NodeId, NodeId], float] = {}
    if alpha_sg > 0:
        for e in snapshot.edges:
            weights[e] = alpha_sg
    if previous is not None and alpha_sg < 1:
        for community in communities_of(previous):
            present = sorted(community & snapshot.nodes)
            for i, u in enumerate(present):
                for v in present[i + 1 :]:
                    weights[(u, v)] = weights.get((u, v), 0.0) + (1 - alpha_sg)
    smoothed = nx.Graph()
    smoothed.add_nodes_from(sorted(snapshot.nodes))
    smoothed.add_weighted_edges_from(
        ((u, v, w) for (u, v), w in sorted(weights.items())), weight=WEIGHT
    )
    return smoothed


def smoothed_graph(
    graph: DynamicGraph,
    params: SmoothedGraphParams = SmoothedGraphParams(),
    seed: int = 0,
    matching: MatchingParams = MatchingParams(),
) -> LongitudinalPartition:
    """Louvain on each snapshot smoothed with the previous step's co-membership, then matching."""
    partitions: list[dict[NodeId, int]] = []
    previous: Optional[StaticPartition] = None
    for snapshot in graph:
        if not snapshot.nodes:
            partitions.append({})
            previous = None
            continue
        weighted = smoothed_weights(snapshot, previous, params.alpha_sg)
        previous = louvain(weighted, _step_seed(seed, snapshot.step))
        partitions.append(previous)
    return match_labels(partitions, matching)


def label_smoothing(
    graph: DynamicGraph,
    params: LabelSmoothingParams = LabelSmoothingParams(),
    seed: int = 0,
    jobs: int = 1,
) -> LongitudinalPartition:
    """
    Louvain on every snapshot, then Louvain on the survival graph of the static communities.

    Each community of the survival graph becomes one dynamic community; labels are numbered
    in order of first appearance.
    """
    partitions = static_partitions(graph, seed, jobs)
    survival = survival_graph(partitions, params.jaccard_threshold, params.window)
    if survival.graph.number_of_nodes() == 0:
        return LongitudinalPartition({})
    dynamic = louvain(survival.graph, seed)

    first_seen: dict[int, tuple[int, int]] = {}
    for node, members in enumerate(survival.members):
        first_seen[dynamic[node]] = min(first_seen.get(dynamic[node], members[0]), min(members))
    label_of = {c: str(k) for k, c in enumerate(sorted(first_seen, key=first_seen.get))}

    communities = [communities_of(p) for p in partitions]
    assignments: dict[tuple[NodeId, int], str] = {}
    for node, members in enumerate(survival.members):
        label = label_of[dynamic[node]]
        for t, index in members:
            for n in communities[t][index]:
                assignments[(n, t)] = label
    return LongitudinalPartition(assignments)


Detector = Callable[[DynamicGraph, int, DetectorConfig], LongitudinalPartition]

DETECTORS: dict[str, Detector] = {
    "no-smoothing": lambda g, seed, cfg: no_smoothing(g, seed, cfg.matching, cfg.jobs),
    "implicit-global": lambda g, seed, cfg: implicit_global(g, seed, cfg.matching),
    "smoothed-graph": lambda g, seed, cfg: smoothed_graph(g, cfg.smoothed_graph, seed, cfg.matching),
    "label-smoothing": lambda g, seed, cfg: label_smoothing(g, cfg.label_smoothing, seed, cfg.jobs),
}


def detect(
    name: str, graph: DynamicGraph, seed: int = 0, config: Optional[DetectorConfig] = None
) -> LongitudinalPartition:
    """
    Run a registered method.

    Raises:
        DetectionError: If `name` is not a registered method.
    """
    if name not in DETECTORS:
        raise DetectionError(f"Unknown method '{name}'; choose among {sorted(DETECTORS)}.")
    config = config if config is not None else DetectorConfig()
    partition = DETECTORS[name](graph, seed, config)
    log.info("%s: %s labels over %s steps.", name, len(partition.labels()), len(graph))
    return partition
