"""Declarations of community events: `C <- EVENT(parameters)[delay, triggers]`."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from src.core.types import Label


class EventKind(str, Enum):
    """Known community events."""

    ASSIGN = "ASSIGN"
    INITIALIZE = "INITIALIZE"
    BIRTH = "BIRTH"
    DEATH = "DEATH"
    MERGE = "MERGE"
    SPLIT = "SPLIT"
    THESEUS = "THESEUS"
    RESURGENCE = "RESURGENCE"
    CONTINUE = "CONTINUE"
    GROW_ITERATIVE = "GROW_ITERATIVE"
    SHRINK_ITERATIVE = "SHRINK_ITERATIVE"
    MIGRATE_ITERATIVE = "MIGRATE_ITERATIVE"

    @property
    def is_transition(self) -> bool:
        """Whether the involved nodes are in the evolving state while the event runs."""
        return self not in (EventKind.INITIALIZE, EventKind.CONTINUE)


@dataclass(frozen=True, order=True)
class CommunityRef:
    """Output slot `position` of declaration `decl`; bound to a community at run time."""

    decl: int
    position: int = 0


@dataclass(frozen=True)
class LabelOf:
    """The label of a referenced community, resolved when the event starts."""

    ref: CommunityRef


LabelSpec = Label | LabelOf | None


@dataclass(frozen=True)
class EventDecl:
    """
    One event declaration.

    Attributes:
        kind (EventKind): The event type.
        params (dict): Kind-specific parameters. Community inputs are `CommunityRef`s, labels
            are strings or `LabelOf`.
        triggers (tuple[CommunityRef, ...] | None): Communities that must be ready before the
            event starts. None means the event's input communities.
        delay (int): Steps to wait once every trigger is ready.
    """

    kind: EventKind
    params: dict[str, Any] = field(default_factory=dict)
    triggers: Optional[tuple[CommunityRef, ...]] = None
    delay: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", EventKind(self.kind))
        if self.delay < 0:
            raise ValueError(f"Delay must be non-negative, got {self.delay}.")
        if self.triggers is not None:
            object.__setattr__(self, "triggers", tuple(self.triggers))

    def inputs(self) -> tuple[CommunityRef, ...]:
        """Input communities, in parameter order."""
        refs: list[CommunityRef] = []
        for key in INPUT_PARAMS[self.kind]:
            value = self.params.get(key)
            if isinstance(value, CommunityRef):
                refs.append(value)
            elif isinstance(value, (list, tuple)):
                refs.extend(v for v in value if isinstance(v, CommunityRef))
        return tuple(refs)

    def effective_triggers(self) -> tuple[CommunityRef, ...]:
        """Triggers, defaulting to the input communities."""
        return self.triggers if self.triggers is not None else self.inputs()

    def references(self) -> tuple[CommunityRef, ...]:
        """Every community this declaration refers to (inputs, triggers, label references)."""
        refs = list(self.inputs()) + list(self.effective_triggers())
        for value in self.params.values():
            values = value if isinstance(value, (list, tuple)) else [value]
            refs.extend(v.ref for v in values if isinstance(v, LabelOf))
        return tuple(refs)


# parameters holding input communities, per event kind
INPUT_PARAMS: dict[EventKind, tuple[str, ...]] = {
    EventKind.ASSIGN: ("before",),
    EventKind.INITIALIZE: (),
    EventKind.BIRTH: (),
    EventKind.DEATH: ("community",),
    EventKind.MERGE: ("communities",),
    EventKind.SPLIT: ("community",),
    EventKind.THESEUS: ("community",),
    EventKind.RESURGENCE: ("community",),
    EventKind.CONTINUE: ("community",),
    EventKind.GROW_ITERATIVE: ("community",),
    EventKind.SHRINK_ITERATIVE: ("community",),
    EventKind.MIGRATE_ITERATIVE: ("source", "destination"),
}


def output_count(decl: EventDecl) -> int:
    """Number of communities a declaration yields."""
    match decl.kind:
        case EventKind.INITIALIZE:
            return len(decl.params["sizes"])
        case EventKind.ASSIGN:
            return len(decl.params["after_labels"])
        case EventKind.SPLIT:
            return len(decl.params["sizes"])
        case EventKind.THESEUS | EventKind.MIGRATE_ITERATIVE:
            return 2
        case EventKind.DEATH:
            return 0
        case _:
            return 1


# Builders used by library callers that script scenarios in Python.


def initialize(sizes: list[int], labels: list[Label]) -> EventDecl:
    """Initial communities of fresh nodes."""
    return EventDecl(EventKind.INITIALIZE, {"sizes": list(sizes), "labels": list(labels)})


def assign(
    before: list[CommunityRef],
    after_nodes: list[list[int]],
    after_labels: list[LabelSpec],
    delay: int = 0,
    triggers: Optional[tuple[CommunityRef, ...]] = None,
) -> EventDecl:
    """Generic event: replace `before` by communities with the given nodes and labels."""
    return EventDecl(
        EventKind.ASSIGN,
        {
            "before": list(before),
            "after_nodes": [list(n) for n in after_nodes],
            "after_labels": list(after_labels),
        },
        triggers,
        delay,
    )


def birth(nb_nodes: int, label: LabelSpec, delay: int = 0, triggers=None) -> EventDecl:
    """New community of `nb_nodes` fresh nodes."""
    return EventDecl(EventKind.BIRTH, {"nb_nodes": nb_nodes, "label": label}, triggers, delay)


def death(community: CommunityRef, delay: int = 0, triggers=None) -> EventDecl:
    """The community disappears and its nodes leave the network."""
    return EventDecl(EventKind.DEATH, {"community": community}, triggers, delay)


def merge(
    communities: list[CommunityRef], label: LabelSpec = None, delay: int = 0, triggers=None
) -> EventDecl:
    """Merge two or more communities; a fresh label is generated when `label` is None."""
    return EventDecl(
        EventKind.MERGE, {"communities": list(communities), "label": label}, triggers, delay
    )


def split(
    community: CommunityRef, labels: list[LabelSpec], sizes: list[int], delay: int = 0, triggers=None
) -> EventDecl:
    """Split a community into parts of the given sizes, nodes drawn at random."""
    return EventDecl(
        EventKind.SPLIT,
        {"community": community, "labels": list(labels), "sizes": list(sizes)},
        triggers,
        delay,
    )


def theseus(community: CommunityRef, nb_nodes: Optional[int] = None, delay: int = 0, triggers=None) -> EventDecl:
    """Replace nodes one by one, then let the original nodes form a new community."""
    return EventDecl(
        EventKind.THESEUS, {"community": community, "nb_nodes": nb_nodes}, triggers, delay
    )


def resurgence(
    community: CommunityRef, delay: int = 0, gap: Optional[int] = None, triggers=None
) -> EventDecl:
    """Disappear, then reappear with identical nodes and label `gap` steps later."""
    return EventDecl(
        EventKind.RESURGENCE, {"community": community, "gap": gap}, triggers, delay
    )


def continue_(community: CommunityRef, steps: int, delay: int = 0, triggers=None) -> EventDecl:
    """Keep the community unchanged for `steps` steps."""
    return EventDecl(EventKind.CONTINUE, {"community": community, "steps": steps}, triggers, delay)


def grow_iterative(community: CommunityRef, nb_nodes: int, delay: int = 0, triggers=None) -> EventDecl:
    """Add fresh nodes one at a time."""
    return EventDecl(
        EventKind.GROW_ITERATIVE, {"community": community, "nb_nodes": nb_nodes}, triggers, delay
    )


def shrink_iterative(community: CommunityRef, nb_nodes: int, delay: int = 0, triggers=None) -> EventDecl:
    """Remove random nodes one at a time; removed nodes leave the network."""
    return EventDecl(
        EventKind.SHRINK_ITERATIVE, {"community": community, "nb_nodes": nb_nodes}, triggers, delay
    )


def migrate_iterative(
    source: CommunityRef, destination: CommunityRef, nb_nodes: int, delay: int = 0, triggers=None
) -> EventDecl:
    """Move random nodes from `source` to `destination` one at a time."""
    return EventDecl(
        EventKind.MIGRATE_ITERATIVE,
        {"source": source, "destination": destination, "nb_nodes": nb_nodes},
        triggers,
        delay,
    )
