"""Longitudinal partitions: a label (or an explicit undefined marker) per (node, step) tuple."""

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

from src.core.errors import NothingToCompareError
from src.core.types import Label, NodeId, StepIndex

Key = tuple[NodeId, StepIndex]

# Explicit marker for a present node whose affiliation is ambiguous.
UNDEFINED = None


@dataclass(frozen=True)
class LongitudinalPartition:
    """
    Labels of (node, step) tuples.

    A key mapped to `UNDEFINED` is a present node without a known affiliation (grey in a
    TAM); a missing key is an absent node.
    """

    assignments: Mapping[Key, Optional[Label]] = field(default_factory=dict)

    def __post_init__(self):
        for (node, step), label in self.assignments.items():
            if node < 0 or step < 0:
                raise ValueError(f"Invalid key ({node}, {step}).")
            if label is not UNDEFINED and (not isinstance(label, str) or not label):
                raise ValueError(f"Invalid label {label!r} at ({node}, {step}).")
        object.__setattr__(self, "assignments", MappingProxyType(dict(self.assignments)))

    @classmethod
    def from_steps(
        cls, steps: Mapping[StepIndex, Mapping[NodeId, Optional[Label]]]
    ) -> "LongitudinalPartition":
        """Build from a mapping step -> {node: label}."""
        return cls({(n, t): l for t, labels in steps.items() for n, l in labels.items()})

    def __len__(self) -> int:
        return len(self.assignments)

    def __iter__(self) -> Iterator[Key]:
        return iter(self.assignments)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LongitudinalPartition):
            return NotImplemented
        return dict(self.assignments) == dict(other.assignments)

    def __hash__(self) -> int:
        return hash(frozenset(self.assignments.items()))

    def label(self, node: NodeId, step: StepIndex) -> Optional[Label]:
        """Label of a tuple; None when undefined or absent."""
        return self.assignments.get((node, step))

    @cached_property
    def defined(self) -> Mapping[Key, Label]:
        """Only the tuples with a label."""
        return MappingProxyType(
            {k: l for k, l in self.assignments.items() if l is not UNDEFINED}
        )

    @cached_property
    def by_step(self) -> Mapping[StepIndex, Mapping[NodeId, Optional[Label]]]:
        """step -> {node: label or UNDEFINED}, nodes sorted, steps sorted."""
        steps: dict[StepIndex, dict[NodeId, Optional[Label]]] = {}
        for (node, step), label in sorted(self.assignments.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            steps.setdefault(step, {})[node] = label
        return MappingProxyType(steps)

    @cached_property
    def by_node(self) -> Mapping[NodeId, Mapping[StepIndex, Optional[Label]]]:
        """node -> {step: label or UNDEFINED}, steps sorted."""
        nodes: dict[NodeId, dict[StepIndex, Optional[Label]]] = {}
        for (node, step), label in sorted(self.assignments.items()):
            nodes.setdefault(node, {})[step] = label
        return MappingProxyType(nodes)

    def at(self, step: StepIndex) -> dict[NodeId, Label]:
        """Defined labels at one step."""
        return {
            n: l for n, l in self.by_step.get(step, {}).items() if l is not UNDEFINED
        }

    @property
    def num_steps(self) -> int:
        """One past the largest step index that has a key."""
        return max(self.by_step) + 1 if self.assignments else 0

    def nodes(self) -> list[NodeId]:
        """Sorted nodes that have at least one key."""
        return list(self.by_node)

    def labels(self) -> set[Label]:
        """Every label in use."""
        return set(self.defined.values())


def restrict(
    p: LongitudinalPartition, q: LongitudinalPartition
) -> tuple[LongitudinalPartition, LongitudinalPartition]:
    """
    Restrict both partitions to the tuples where both have a defined label.

    Raises:
        NothingToCompareError: If no tuple is defined in both.
    """
    keys = p.defined.keys() & q.defined.keys()
    if not keys:
        raise NothingToCompareError()
    return (
        LongitudinalPartition({k: p.defined[k] for k in keys}),
        LongitudinalPartition({k: q.defined[k] for k in keys}),
    )
