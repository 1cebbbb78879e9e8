"""Results of a scenario run: the event log, per-step target structure and ground truth."""

from dataclasses import dataclass
from typing import Iterator

from src.core.partition import LongitudinalPartition
from src.core.types import Community, CommunityId, NodeId, StepIndex
from src.scenario.events import EventKind


@dataclass(frozen=True)
class EventRecord:
    """
    One executed event (or one micro-step of a composite event).

    Attributes:
        index (int): Position in the event log.
        kind (EventKind): Kind of the declaration this entry belongs to.
        decl (int): Index of that declaration.
        start (StepIndex): First step of the transition.
        end (StepIndex): Step at which the after communities become active.
        before (tuple[Community, ...]): Consumed communities.
        after (tuple[Community, ...]): Yielded communities.
        trigger_ready (StepIndex): Step at which every trigger was ready.
        delay (int): Steps waited after `trigger_ready`.
    """

    index: int
    kind: EventKind
    decl: int
    start: StepIndex
    end: StepIndex
    before: tuple[Community, ...]
    after: tuple[Community, ...]
    trigger_ready: StepIndex = 0
    delay: int = 0

    @property
    def before_ids(self) -> tuple[CommunityId, ...]:
        return tuple(c.id for c in self.before)

    @property
    def after_ids(self) -> tuple[CommunityId, ...]:
        return tuple(c.id for c in self.after)

    @property
    def duration(self) -> int:
        return self.end - self.start

    @property
    def is_transition(self) -> bool:
        return self.kind.is_transition

    def involved_nodes(self) -> frozenset[NodeId]:
        """Nodes of the before and after communities."""
        return frozenset().union(*(c.nodes for c in self.before + self.after))


@dataclass(frozen=True)
class StepStructure:
    """Target community structure at one step: stable communities and ongoing transitions."""

    step: StepIndex
    stable: tuple[Community, ...]
    evolving: tuple[EventRecord, ...]

    def present_nodes(self) -> frozenset[NodeId]:
        """Nodes that exist at this step."""
        nodes = frozenset().union(*(c.nodes for c in self.stable))
        return nodes.union(*(r.involved_nodes() for r in self.evolving))


@dataclass(frozen=True)
class GroundTruth:
    """Planted longitudinal partition (undefined during transitions) and the event log."""

    partition: LongitudinalPartition
    event_log: tuple[EventRecord, ...]


@dataclass(frozen=True)
class ScenarioResult:
    """Everything a scenario run produces. Unpacks as (structure, ground_truth)."""

    structure: tuple[StepStructure, ...]
    ground_truth: GroundTruth

    def __iter__(self) -> Iterator:
        return iter((self.structure, self.ground_truth))

    @property
    def num_steps(self) -> int:
        return len(self.structure)

    @property
    def event_log(self) -> tuple[EventRecord, ...]:
        return self.ground_truth.event_log
