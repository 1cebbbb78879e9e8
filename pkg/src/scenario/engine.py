"""
Discrete-event execution of community events.

Every event reduces to ASSIGN jobs: the before communities are consumed when the job starts,
the involved nodes are in the evolving state for as many steps as the edge generator needs
(one internal edge modification per step), and the after communities become active when the
job completes. Composite events (THESEUS, RESURGENCE, the iterative events) are chains of
such jobs.
"""

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Generator, Iterable, Optional, Protocol, Sequence

import networkx as nx
import numpy as np

from src.core.errors import ScenarioError
from src.core.partition import UNDEFINED, LongitudinalPartition
from src.core.types import Community, CommunityId, Label, NodeId, StepIndex
from src.generator.params import GeneratorParams
from src.generator.transitions import TransitionPlanner
from src.scenario.events import (
    INPUT_PARAMS,
    CommunityRef,
    EventDecl,
    EventKind,
    LabelOf,
    output_count,
)
from src.scenario.structure import EventRecord, GroundTruth, ScenarioResult, StepStructure
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)


class DurationModel(Protocol):
    """Anything that knows how many steps a transition between node sets lasts."""

    def transition_length(
        self, before: Sequence[Iterable[NodeId]], after: Sequence[Iterable[NodeId]]
    ) -> int: ...


@dataclass
class _Assign:
    """Job request: replace `before` by communities with the given nodes and labels."""

    kind: EventKind
    before: Sequence[Community]
    after_nodes: Sequence[frozenset[NodeId]]
    after_labels: Sequence[Label]
    duration: Optional[int] = None


@dataclass
class _Wait:
    """Job request: resume the event `steps` steps later."""

    steps: int


@dataclass
class _Bind:
    """Job request: make output `position` available to other events right away."""

    position: int
    community: Community


@dataclass
class _Process:
    """A running declaration."""

    decl_index: int
    decl: EventDecl
    body: Generator
    trigger_ready: StepIndex
    delay: int
    bound: set[int] = field(default_factory=set)


# Queue priorities at equal times: completions make communities ready before starts.
_COMPLETE, _START = 0, 1


class ScenarioEngine:
    """
    Executes event declarations.

    Args:
        events (Sequence[EventDecl]): The declarations.
        seed (int): Seed of the random node choices (SPLIT, THESEUS, SHRINK, MIGRATE).
        planner (DurationModel, optional): Transition lengths. Defaults to a planner with
            default generator parameters and the same seed.
        horizon (int, optional): Minimal number of steps of the run.
    """

    def __init__(
        self,
        events: Sequence[EventDecl],
        seed: int = 0,
        planner: Optional[DurationModel] = None,
        horizon: Optional[int] = None,
    ):
        self.decls = list(events)
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.planner = planner if planner is not None else TransitionPlanner(GeneratorParams(seed=seed))
        self.horizon = horizon

        self.active: dict[CommunityId, Community] = {}
        self.ready_at: dict[CommunityId, StepIndex] = {}
        self.bound: dict[CommunityRef, Community] = {}
        self.log: list[EventRecord] = []

        self._busy: set[NodeId] = set()
        self._next_node = 0
        self._next_community = 0
        self._labels_used: set[Label] = set()
        self._queue: list[tuple] = []
        self._seq = itertools.count()
        self._pending: set[int] = set()
        self._started: set[int] = set()

    # ---------------------------------------------------------------- validation

    def _check_declarations(self):
        dependencies = nx.DiGraph()
        dependencies.add_nodes_from(range(len(self.decls)))
        consumed: dict[CommunityRef, int] = {}
        for i, decl in enumerate(self.decls):
            for key in INPUT_PARAMS[decl.kind]:
                if key not in decl.params:
                    raise ScenarioError(f"Event {i} ({decl.kind.value}) misses parameter '{key}'.")
            for ref in decl.references():
                if not 0 <= ref.decl < len(self.decls):
                    raise ScenarioError(f"Event {i} refers to a community never yielded: {ref}.")
                try:
                    count = output_count(self.decls[ref.decl])
                except (KeyError, TypeError) as e:
                    raise ScenarioError(f"Event {ref.decl} has malformed parameters.") from e
                if ref.position >= count:
                    raise ScenarioError(f"Event {i} refers to a community never yielded: {ref}.")
                dependencies.add_edge(ref.decl, i)
            for ref in decl.inputs():
                if ref in consumed:
                    raise ScenarioError(
                        f"Community {ref} is consumed by events {consumed[ref]} and {i}."
                    )
                consumed[ref] = i
            for value in decl.params.values():
                values = value if isinstance(value, (list, tuple)) else [value]
                self._labels_used.update(v for v in values if isinstance(v, str))
        if not nx.is_directed_acyclic_graph(dependencies):
            cycle = nx.find_cycle(dependencies)
            raise ScenarioError(f"Cyclic triggers between events {[u for u, _ in cycle]}.")

    # ---------------------------------------------------------------- identifiers

    def _new_nodes(self, count: int) -> frozenset[NodeId]:
        nodes = frozenset(range(self._next_node, self._next_node + count))
        self._next_node += count
        return nodes

    def _new_label(self) -> Label:
        for k in itertools.count():
            label = f"L{k}"
            if label not in self._labels_used:
                self._labels_used.add(label)
                return label
        raise AssertionError("unreachable")

    def _label(self, spec) -> Label:
        if spec is None:
            return self._new_label()
        if isinstance(spec, LabelOf):
            if spec.ref not in self.bound:
                raise ScenarioError(f"Label of {spec.ref} requested before it was yielded.")
            return self.bound[spec.ref].label
        if not isinstance(spec, str) or spec.split() != [spec]:
            raise ScenarioError(f"Invalid label {spec!r}.")
        return spec

    # ---------------------------------------------------------------- queue

    def _push(self, time: StepIndex, priority: int, *payload):
        heapq.heappush(self._queue, (time, priority, next(self._seq), payload))

    def _schedule_ready(self):
        """Schedule every pending declaration whose triggers are all bound."""
        for i in sorted(self._pending):
            decl = self.decls[i]
            triggers = decl.effective_triggers()
            if not all(ref in self.bound for ref in triggers):
                continue
            ready = max((self.ready_at[self.bound[ref].id] for ref in triggers), default=0)
            self._pending.discard(i)
            self._push(ready + decl.delay, _START, "start", i, ready)

    def run(self) -> ScenarioResult:
        """Execute every declaration and build the ground truth."""
        self._check_declarations()
        self._pending = set(range(len(self.decls)))
        self._schedule_ready()
        while self._queue:
            time, _, _, payload = heapq.heappop(self._queue)
            match payload:
                case ("start", i, ready):
                    self._start(i, time, ready)
                case ("complete", proc, record):
                    self._complete(proc, record, time)
                case ("resume", proc):
                    self._advance(proc, time, None)
            self._schedule_ready()
        if self._pending:
            raise ScenarioError(f"Events {sorted(self._pending)} never started.")
        result = self._result()
        log.info(
            "Scenario finished: %s declarations, %s log entries, %s steps.",
            len(self.decls), len(self.log), result.num_steps,
        )
        return result

    # ---------------------------------------------------------------- processes

    def _start(self, i: int, now: StepIndex, ready: StepIndex):
        decl = self.decls[i]
        inputs = []
        for ref in decl.inputs():
            community = self.bound[ref]
            if community.id not in self.active:
                raise ScenarioError(
                    f"Event {i} ({decl.kind.value}) uses community {community.id} "
                    f"({community.label}), which is not active at step {now}."
                )
            inputs.append(community)
        body = self._body(decl, inputs)
        proc = _Process(i, decl, body, trigger_ready=ready, delay=decl.delay)
        self._started.add(i)
        self._advance(proc, now, None)

    def _advance(self, proc: _Process, now: StepIndex, value):
        while True:
            try:
                request = proc.body.send(value)
            except StopIteration as stop:
                self._finish(proc, tuple(stop.value or ()))
                return
            if isinstance(request, _Bind):
                self._bind(proc, request.position, request.community)
                value = None
                continue
            if isinstance(request, _Wait):
                proc.trigger_ready, proc.delay = now, request.steps
                self._push(now + request.steps, _COMPLETE, "resume", proc)
                return
            self._execute(proc, request, now)
            return

    def _bind(self, proc: _Process, position: int, community: Community):
        self.bound[CommunityRef(proc.decl_index, position)] = community
        proc.bound.add(position)

    def _finish(self, proc: _Process, outputs: tuple[Community, ...]):
        expected = output_count(proc.decl)
        if len(outputs) != expected:
            raise ScenarioError(
                f"Event {proc.decl_index} ({proc.decl.kind.value}) yielded {len(outputs)} "
                f"communities instead of {expected}."
            )
        for position, community in enumerate(outputs):
            if position not in proc.bound:
                self._bind(proc, position, community)

    def _execute(self, proc: _Process, job: _Assign, now: StepIndex):
        if len(job.after_nodes) != len(job.after_labels):
            raise ScenarioError(
                f"ASSIGN with {len(job.after_nodes)} node sets and {len(job.after_labels)} labels."
            )
        for community in job.before:
            if community.id not in self.active:
                raise ScenarioError(f"Community {community.id} ({community.label}) is not active.")
        before_nodes = frozenset().union(*(c.nodes for c in job.before))
        seen: set[NodeId] = set()
        for nodes in job.after_nodes:
            if not nodes:
                raise ScenarioError("ASSIGN cannot yield an empty community.")
            if seen & nodes:
                raise ScenarioError(f"Overlapping node sets: {sorted(seen & nodes)}.")
            seen |= nodes
            taken = (nodes - before_nodes) & self._busy
            if taken:
                raise ScenarioError(f"Nodes {sorted(taken)} already belong to another community.")
            if any(n < 0 for n in nodes):
                raise ScenarioError("Node ids must be non-negative.")
        if seen:
            self._next_node = max(self._next_node, max(seen) + 1)

        for community in job.before:
            del self.active[community.id]
        after = []
        for nodes, label in zip(job.after_nodes, job.after_labels):
            after.append(Community(self._next_community, label, nodes))
            self._next_community += 1
            self._labels_used.add(label)
        self._busy |= seen

        if job.duration is not None:
            duration = job.duration
        else:
            duration = self.planner.transition_length(
                [c.nodes for c in job.before], [c.nodes for c in after]
            )
        record = EventRecord(
            index=len(self.log),
            kind=job.kind,
            decl=proc.decl_index,
            start=now,
            end=now + duration,
            before=tuple(job.before),
            after=tuple(after),
            trigger_ready=proc.trigger_ready,
            delay=proc.delay,
        )
        self.log.append(record)
        self._push(record.end, _COMPLETE, "complete", proc, record)

    def _complete(self, proc: _Process, record: EventRecord, now: StepIndex):
        after_nodes = frozenset().union(*(c.nodes for c in record.after))
        for community in record.before:
            self._busy -= community.nodes - after_nodes
        for community in record.after:
            self.active[community.id] = community
            self.ready_at[community.id] = now
        proc.trigger_ready, proc.delay = now, 0
        self._advance(proc, now, record.after)

    # ---------------------------------------------------------------- event bodies

    def _body(self, decl: EventDecl, inputs: list[Community]) -> Generator:
        p = decl.params
        kind = decl.kind
        match kind:
            case EventKind.ASSIGN:
                return self._assign(kind, inputs, p["after_nodes"], p["after_labels"])
            case EventKind.INITIALIZE:
                return self._initialize(p["sizes"], p["labels"])
            case EventKind.BIRTH:
                return self._birth(p["nb_nodes"], p.get("label"))
            case EventKind.DEATH:
                return self._assign(kind, inputs, [], [])
            case EventKind.MERGE:
                return self._merge(inputs, p.get("label"))
            case EventKind.SPLIT:
                return self._split(inputs[0], p["labels"], p["sizes"])
            case EventKind.THESEUS:
                return self._theseus(inputs[0], p.get("nb_nodes"))
            case EventKind.RESURGENCE:
                gap = p.get("gap")
                return self._resurgence(inputs[0], decl.delay if gap is None else gap)
            case EventKind.CONTINUE:
                return self._continue(inputs[0], p["steps"])
            case EventKind.GROW_ITERATIVE:
                return self._grow(inputs[0], p["nb_nodes"])
            case EventKind.SHRINK_ITERATIVE:
                return self._shrink(inputs[0], p["nb_nodes"])
            case EventKind.MIGRATE_ITERATIVE:
                return self._migrate(inputs[0], inputs[1], p["nb_nodes"])
        raise ScenarioError(f"Unknown event kind {kind}.")

    def _assign(self, kind, before, after_nodes, after_labels):
        if len(after_nodes) != len(after_labels):
            raise ScenarioError(
                f"ASSIGN with {len(after_nodes)} node sets and {len(after_labels)} labels."
            )
        labels = [self._label(spec) for spec in after_labels]
        nodes = [frozenset(int(n) for n in group) for group in after_nodes]
        return (yield _Assign(kind, before, nodes, labels))

    def _initialize(self, sizes, labels):
        if len(sizes) != len(labels):
            raise ScenarioError(f"INITIALIZE with {len(sizes)} sizes and {len(labels)} labels.")
        if any(size < 1 for size in sizes):
            raise ScenarioError(f"INITIALIZE sizes must be positive, got {list(sizes)}.")
        resolved = [self._label(spec) for spec in labels]
        nodes = [self._new_nodes(size) for size in sizes]
        return (yield _Assign(EventKind.INITIALIZE, [], nodes, resolved, duration=0))

    def _birth(self, nb_nodes, label):
        if nb_nodes < 1:
            raise ScenarioError(f"BIRTH needs at least one node, got {nb_nodes}.")
        resolved = self._label(label)
        return (yield _Assign(EventKind.BIRTH, [], [self._new_nodes(nb_nodes)], [resolved]))

    def _merge(self, communities, label):
        if len(communities) < 2:
            raise ScenarioError(f"MERGE needs at least 2 communities, got {len(communities)}.")
        resolved = self._label(label)
        nodes = frozenset().union(*(c.nodes for c in communities))
        return (yield _Assign(EventKind.MERGE, communities, [nodes], [resolved]))

    def _split(self, community, labels, sizes):
        if len(labels) != len(sizes):
            raise ScenarioError(f"SPLIT with {len(labels)} labels and {len(sizes)} sizes.")
        if any(size < 1 for size in sizes) or sum(sizes) != len(community):
            raise ScenarioError(
                f"SPLIT sizes {list(sizes)} do not partition {len(community)} nodes."
            )
        resolved = [self._label(spec) for spec in labels]
        shuffled = self.rng.permutation(sorted(community.nodes)).tolist()
        bounds = np.cumsum([0, *sizes])
        parts = [frozenset(shuffled[a:b]) for a, b in zip(bounds[:-1], bounds[1:])]
        return (yield _Assign(EventKind.SPLIT, [community], parts, resolved))

    def _theseus(self, community, nb_nodes):
        nb_nodes = len(community) if nb_nodes is None else nb_nodes
        if not 1 <= nb_nodes <= len(community):
            raise ScenarioError(
                f"THESEUS replaces between 1 and {len(community)} nodes, got {nb_nodes}."
            )
        replaced = self.rng.permutation(sorted(community.nodes))[:nb_nodes].tolist()
        current = community
        for node in replaced:
            nodes = (current.nodes - {node}) | self._new_nodes(1)
            (current,) = yield _Assign(EventKind.THESEUS, [current], [nodes], [current.label])
        yield _Bind(0, current)
        (reborn,) = yield _Assign(
            EventKind.THESEUS, [], [frozenset(replaced)], [self._new_label()]
        )
        return current, reborn

    def _resurgence(self, community, gap):
        if gap < 0:
            raise ScenarioError(f"RESURGENCE gap must be non-negative, got {gap}.")
        yield _Assign(EventKind.RESURGENCE, [community], [], [])
        yield _Wait(max(gap, 1))
        return (
            yield _Assign(EventKind.RESURGENCE, [], [community.nodes], [community.label])
        )

    def _continue(self, community, steps):
        if steps < 0:
            raise ScenarioError(f"CONTINUE needs a non-negative number of steps, got {steps}.")
        return (
            yield _Assign(
                EventKind.CONTINUE, [community], [community.nodes], [community.label], duration=steps
            )
        )

    def _grow(self, community, nb_nodes):
        if nb_nodes < 1:
            raise ScenarioError(f"GROW_ITERATIVE needs at least one node, got {nb_nodes}.")
        current = community
        for _ in range(nb_nodes):
            nodes = current.nodes | self._new_nodes(1)
            (current,) = yield _Assign(EventKind.GROW_ITERATIVE, [current], [nodes], [current.label])
        return (current,)

    def _shrink(self, community, nb_nodes):
        if not 1 <= nb_nodes < len(community):
            raise ScenarioError(
                f"SHRINK_ITERATIVE removes between 1 and {len(community) - 1} nodes, got {nb_nodes}."
            )
        removed = self.rng.permutation(sorted(community.nodes))[:nb_nodes].tolist()
        current = community
        for node in removed:
            (current,) = yield _Assign(
                EventKind.SHRINK_ITERATIVE, [current], [current.nodes - {node}], [current.label]
            )
        return (current,)

    def _migrate(self, source, destination, nb_nodes):
        if not 1 <= nb_nodes < len(source):
            raise ScenarioError(
                f"MIGRATE_ITERATIVE moves between 1 and {len(source) - 1} nodes, got {nb_nodes}."
            )
        moved = self.rng.permutation(sorted(source.nodes))[:nb_nodes].tolist()
        for node in moved:
            source, destination = yield _Assign(
                EventKind.MIGRATE_ITERATIVE,
                [source, destination],
                [source.nodes - {node}, destination.nodes | {node}],
                [source.label, destination.label],
            )
        return source, destination

    # ---------------------------------------------------------------- results

    def _result(self) -> ScenarioResult:
        last_end = max((r.end for r in self.log), default=-1)
        num_steps = max(last_end + 1, self.horizon or 0)

        appear: dict[CommunityId, tuple[StepIndex, Community]] = {}
        vanish: dict[CommunityId, StepIndex] = {}
        for record in self.log:
            for community in record.after:
                appear[community.id] = (record.end, community)
            for community in record.before:
                vanish[community.id] = record.start if record.is_transition else record.end

        stable: list[list[Community]] = [[] for _ in range(num_steps)]
        for cid, (first, community) in sorted(appear.items()):
            for t in range(first, min(vanish.get(cid, num_steps), num_steps)):
                stable[t].append(community)
        evolving: list[list[EventRecord]] = [[] for _ in range(num_steps)]
        for record in self.log:
            if record.is_transition:
                for t in range(record.start, min(record.end, num_steps)):
                    evolving[t].append(record)

        structure = []
        assignments: dict[tuple[NodeId, StepIndex], Optional[Label]] = {}
        for t in range(num_steps):
            step = StepStructure(t, tuple(stable[t]), tuple(evolving[t]))
            structure.append(step)
            for record in step.evolving:
                for node in record.involved_nodes():
                    assignments[(node, t)] = UNDEFINED
            for community in step.stable:
                for node in community.nodes:
                    assignments[(node, t)] = community.label
        truth = GroundTruth(LongitudinalPartition(assignments), tuple(self.log))
        return ScenarioResult(tuple(structure), truth)


def run_scenario(
    events: Sequence[EventDecl],
    seed: int = 0,
    planner: Optional[DurationModel] = None,
    horizon: Optional[int] = None,
) -> ScenarioResult:
    """
    Execute a scenario.

    Each event starts at max(ready step of its triggers) + delay. Structural events last as
    many steps as their transition plan has edge modifications.

    Args:
        events (Sequence[EventDecl]): Declarations; references must form an acyclic graph.
        seed (int): Seed of the random node choices.
        planner (DurationModel, optional): Transition lengths; pass the generator's planner so
            windows match the edges generated later.
        horizon (int, optional): Minimal number of steps.

    Returns:
        ScenarioResult: Per-step structure and ground truth, unpackable as a pair.
    """
    return ScenarioEngine(events, seed, planner, horizon).run()
