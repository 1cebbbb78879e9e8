"""Tests for the scenario engine."""

from typing import Iterable, Sequence

import pytest

from src.core.errors import ScenarioError
from src.core.partition import UNDEFINED
from src.scenario.engine import run_scenario
from src.scenario.events import (
    CommunityRef,
    EventKind,
    LabelOf,
    assign,
    birth,
    continue_,
    death,
    grow_iterative,
    initialize,
    merge,
    migrate_iterative,
    resurgence,
    shrink_iterative,
    split,
    theseus,
)

DURATION = 3


class FixedDuration:
    """Every transition lasts DURATION steps, whatever the node sets."""

    def transition_length(
        self, before: Sequence[Iterable[int]], after: Sequence[Iterable[int]]
    ) -> int:
        return DURATION


@pytest.fixture(name="planner")
def fixture_planner() -> FixedDuration:
    """Duration model with constant transition lengths."""
    return FixedDuration()


def test_initialize_is_instantaneous(planner: FixedDuration):
    """Initial communities are stable from step 0 and get consecutive fresh node ids."""
    result = run_scenario([initialize([2, 3], ["A", "B"])], planner=planner)
    gt = result.ground_truth.partition
    assert result.num_steps == 1
    assert gt.at(0) == {0: "A", 1: "A", 2: "B", 3: "B", 4: "B"}
    assert [c.label for c in result.structure[0].stable] == ["A", "B"]


def test_birth_window(planner: FixedDuration):
    """A birth starts after its delay; its nodes are undefined until the transition ends."""
    result = run_scenario([birth(4, "X", delay=2)], planner=planner)
    (record,) = result.event_log
    assert (record.start, record.end) == (2, 2 + DURATION)
    gt = result.ground_truth.partition
    assert result.num_steps == record.end + 1
    for t in range(record.start, record.end):
        assert gt.assignments[(0, t)] is UNDEFINED
    assert gt.label(0, record.end) == "X"
    assert (0, 1) not in gt.assignments


def test_death_nodes_leave(planner: FixedDuration):
    """After a death the nodes are absent."""
    decls = [initialize([3], ["A"]), death(CommunityRef(0, 0), delay=1)]
    result = run_scenario(decls, planner=planner)
    gt = result.ground_truth.partition
    assert gt.label(0, 0) == "A"
    assert gt.assignments[(0, 1)] is UNDEFINED
    assert (0, 1 + DURATION) not in gt.assignments


def test_merge_takes_referenced_label(planner: FixedDuration):
    """The merged community carries the label of a referenced input."""
    decls = [
        initialize([2, 3], ["A", "B"]),
        merge([CommunityRef(0, 0), CommunityRef(0, 1)], LabelOf(CommunityRef(0, 1)), delay=5),
    ]
    result = run_scenario(decls, planner=planner)
    record = result.event_log[-1]
    assert record.start == 5
    (merged,) = record.after
    assert merged.label == "B"
    assert merged.nodes == frozenset(range(5))


def test_merge_without_label_gets_fresh_label(planner: FixedDuration):
    """Fresh labels never collide with labels used in the scenario."""
    decls = [
        initialize([2, 2], ["L0", "B"]),
        merge([CommunityRef(0, 0), CommunityRef(0, 1)]),
    ]
    result = run_scenario(decls, planner=planner)
    assert result.event_log[-1].after[0].label == "L1"


def test_split_sizes(planner: FixedDuration):
    """Split parts have the requested sizes and partition the input."""
    decls = [initialize([6], ["C"]), split(CommunityRef(0, 0), ["C", "D"], [4, 2])]
    result = run_scenario(decls, seed=3, planner=planner)
    parts = result.event_log[-1].after
    assert [len(p) for p in parts] == [4, 2]
    assert parts[0].nodes | parts[1].nodes == frozenset(range(6))


def test_split_sizes_must_partition(planner: FixedDuration):
    """Split sizes summing to another size are rejected."""
    decls = [initialize([6], ["C"]), split(CommunityRef(0, 0), ["C", "D"], [4, 3])]
    with pytest.raises(ScenarioError):
        run_scenario(decls, planner=planner)


def test_theseus(planner: FixedDuration):
    """Nodes are replaced one at a time, then the original nodes are reborn together."""
    decls = [initialize([3], ["T"]), theseus(CommunityRef(0, 0), delay=2)]
    result = run_scenario(decls, planner=planner)
    records = [r for r in result.event_log if r.kind is EventKind.THESEUS]
    assert len(records) == 4
    assert records[0].start == 2
    assert [r.start for r in records] == [2 + k * DURATION for k in range(4)]
    continuation, reborn = records[2].after[0], records[3].after[0]
    assert continuation.label == "T"
    assert continuation.nodes.isdisjoint(range(3))
    assert reborn.nodes == frozenset(range(3))
    assert reborn.label == "L0"


def test_theseus_continuation_can_trigger(planner: FixedDuration):
    """An event on the continuation starts once the replacements are done, before the rebirth ends."""
    decls = [
        initialize([2], ["T"]),
        theseus(CommunityRef(0, 0)),
        continue_(CommunityRef(1, 0), 1),
    ]
    result = run_scenario(decls, planner=planner)
    follow = result.event_log[-1]
    assert follow.kind is EventKind.CONTINUE
    assert follow.start == 2 * DURATION


def test_resurgence(planner: FixedDuration):
    """The community dies, stays absent for the gap, then comes back with its nodes and label."""
    decls = [initialize([3], ["R"]), resurgence(CommunityRef(0, 0), delay=2)]
    result = run_scenario(decls, planner=planner)
    dying, reborn = result.event_log[1:]
    assert dying.start == 2
    assert reborn.start == dying.end + 2
    assert reborn.after[0].nodes == frozenset(range(3))
    assert reborn.after[0].label == "R"
    gt = result.ground_truth.partition
    assert (0, dying.end) not in gt.assignments
    assert gt.label(0, reborn.end) == "R"


def test_continue_keeps_community_defined(planner: FixedDuration):
    """CONTINUE is not a transition: the community stays labelled throughout."""
    decls = [initialize([3], ["A"]), continue_(CommunityRef(0, 0), 4)]
    result = run_scenario(decls, planner=planner)
    record = result.event_log[-1]
    assert (record.start, record.end) == (0, 4)
    assert not record.is_transition
    gt = result.ground_truth.partition
    assert all(gt.label(0, t) == "A" for t in range(result.num_steps))


def test_iterative_events(planner: FixedDuration):
    """Iterative events are chains of single-node changes."""
    decls = [
        initialize([4, 5], ["A", "B"]),
        grow_iterative(CommunityRef(0, 0), 2),
        shrink_iterative(CommunityRef(0, 1), 1),
        migrate_iterative(CommunityRef(2, 0), CommunityRef(1, 0), 2),
    ]
    result = run_scenario(decls, seed=1, planner=planner)
    grown = [r for r in result.event_log if r.kind is EventKind.GROW_ITERATIVE]
    assert len(grown) == 2
    assert len(grown[-1].after[0]) == 6
    shrunk = [r for r in result.event_log if r.kind is EventKind.SHRINK_ITERATIVE]
    assert len(shrunk[-1].after[0]) == 4
    migrated = [r for r in result.event_log if r.kind is EventKind.MIGRATE_ITERATIVE]
    assert len(migrated) == 2
    assert migrated[0].start == 2 * DURATION
    source, destination = migrated[-1].after
    assert (len(source), len(destination)) == (2, 8)
    assert (source.label, destination.label) == ("B", "A")


def test_assign_with_explicit_nodes(planner: FixedDuration):
    """ASSIGN may move nodes between communities and bring new node ids."""
    decls = [
        initialize([2, 2], ["A", "B"]),
        assign([CommunityRef(0, 0), CommunityRef(0, 1)], [[0, 1, 2], [3, 10]], ["A", "B"]),
    ]
    result = run_scenario(decls, planner=planner)
    after = result.event_log[-1].after
    assert after[1].nodes == frozenset({3, 10})


def test_triggers_and_delay(planner: FixedDuration):
    """An event starts once its last trigger is ready, plus its delay."""
    decls = [
        initialize([3, 3], ["A", "B"]),
        birth(2, "X", delay=4),
        death(CommunityRef(0, 0), delay=1, triggers=(CommunityRef(1, 0),)),
    ]
    result = run_scenario(decls, planner=planner)
    born, died = result.event_log[1:]
    assert died.trigger_ready == born.end
    assert died.start == born.end + 1


def test_horizon_extends_run(planner: FixedDuration):
    """The run lasts at least `horizon` steps."""
    result = run_scenario([initialize([2], ["A"])], planner=planner, horizon=10)
    assert result.num_steps == 10
    assert result.ground_truth.partition.label(1, 9) == "A"


@pytest.mark.parametrize(
    "decls",
    [
        [birth(3, "my com")],
        [initialize([2, 2], ["A", "B\n"])],
        [initialize([3, 3], ["A", "B"]), merge([CommunityRef(0, 0), CommunityRef(0, 1)], "\t")],
    ],
)
def test_labels_with_whitespace_rejected(planner: FixedDuration, decls: list):
    """Labels containing whitespace cannot be written to a partition file."""
    with pytest.raises(ScenarioError, match="Invalid label"):
        run_scenario(decls, planner=planner)


def test_double_consumption_rejected(planner: FixedDuration):
    """A community cannot be the input of two events."""
    decls = [
        initialize([3], ["A"]),
        death(CommunityRef(0, 0)),
        continue_(CommunityRef(0, 0), 2),
    ]
    with pytest.raises(ScenarioError):
        run_scenario(decls, planner=planner)


def test_unknown_reference_rejected(planner: FixedDuration):
    """References must point to a yielded community."""
    with pytest.raises(ScenarioError):
        run_scenario([initialize([3], ["A"]), death(CommunityRef(0, 1))], planner=planner)


def test_cyclic_triggers_rejected(planner: FixedDuration):
    """Events waiting on each other can never start."""
    decls = [
        birth(2, "X", triggers=(CommunityRef(1, 0),)),
        birth(2, "Y", triggers=(CommunityRef(0, 0),)),
    ]
    with pytest.raises(ScenarioError, match="Cyclic"):
        run_scenario(decls, planner=planner)


def test_disjoint_active_communities(planner: FixedDuration):
    """At every step the stable communities are pairwise disjoint."""
    decls = [
        initialize([4, 4], ["A", "B"]),
        merge([CommunityRef(0, 0), CommunityRef(0, 1)], "A", delay=1),
        split(CommunityRef(1, 0), ["A", "B"], [5, 3], delay=2),
    ]
    result = run_scenario(decls, planner=planner)
    for step in result.structure:
        seen: set[int] = set()
        for community in step.stable:
            assert seen.isdisjoint(community.nodes)
            seen |= community.nodes


def test_default_planner_is_deterministic():
    """Without an explicit duration model, the generator's planner decides the windows."""
    decls = [initialize([5, 5], ["A", "B"]), merge([CommunityRef(0, 0), CommunityRef(0, 1)], "A")]
    first, second = run_scenario(decls, seed=2), run_scenario(decls, seed=2)
    assert first.event_log == second.event_log
    assert first.event_log[-1].end > first.event_log[-1].start
