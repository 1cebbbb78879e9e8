"""From a per-step community structure to a dynamic graph."""

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from tqdm import tqdm

from src.core.errors import GenerationError
from src.core.types import DynamicGraph, Edge, NodeId, Snapshot, StepIndex
from src.generator.density import external_density
from src.generator.noise import apply_noise
from src.generator.params import GeneratorParams
from src.generator.transitions import Op, TransitionPlan, TransitionPlanner
from src.scenario.engine import run_scenario
from src.scenario.events import EventDecl
from src.scenario.structure import EventRecord, GroundTruth, StepStructure
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)

# salt separating the noise stream from any other use of (seed, step)
_NOISE_STREAM = 1


@dataclass(frozen=True)
class BackboneStep:
    """Noise-free edges of one step, split into internal and external edges."""

    step: StepIndex
    nodes: frozenset[NodeId]
    internal: frozenset[Edge]
    external: frozenset[Edge]


@dataclass(frozen=True)
class Benchmark:
    """A generated benchmark instance."""

    graph: DynamicGraph
    ground_truth: GroundTruth
    structure: tuple[StepStructure, ...]
    params: GeneratorParams

    @property
    def event_log(self) -> tuple[EventRecord, ...]:
        return self.ground_truth.event_log


class _RunningTransition:
    """Edge state of one ongoing transition, advanced one modification per step."""

    def __init__(self, record: EventRecord, planner: TransitionPlanner):
        before = [c.nodes for c in record.before]
        after = [c.nodes for c in record.after]
        self.plan: TransitionPlan = planner.plan(before, after, record.index, record.start)
        if len(self.plan) != record.duration:
            raise GenerationError(
                f"Event {record.index} lasts {record.duration} steps but its transition needs "
                f"{len(self.plan)} modifications; was the scenario run with other parameters?"
            )
        self.edges: set[Edge] = set(planner.union_edges(before))
        self.applied = 0

    def advance(self) -> set[Edge]:
        op, e = self.plan.modifications[self.applied]
        if op is Op.ADD:
            self.edges.add(e)
        else:
            self.edges.discard(e)
        self.applied += 1
        return self.edges


def _interim_groups(step: StepStructure) -> list[frozenset[NodeId]]:
    """
    Blocks used for external edges: stable communities, the before communities of ongoing
    transitions, and arriving nodes grouped by the community they are heading to.
    """
    groups = [c.nodes for c in step.stable]
    for record in step.evolving:
        before_nodes = frozenset().union(*(c.nodes for c in record.before))
        groups.extend(c.nodes for c in record.before)
        groups.extend(c.nodes - before_nodes for c in record.after if c.nodes - before_nodes)
    return sorted(groups, key=min)


def iter_backbone(
    structure: Sequence[StepStructure],
    params: GeneratorParams,
    planner: Optional[TransitionPlanner] = None,
) -> Iterator[BackboneStep]:
    """
    Yield the noise-free edges of every step.

    Stable communities get their block edges, each ongoing transition advances by exactly one
    modification, and external edges are recomputed from the interim partition.

    Raises:
        GenerationError: If step indices are not dense or a transition window does not match
            its plan.
    """
    planner = planner if planner is not None else TransitionPlanner(params)
    running: dict[int, _RunningTransition] = {}
    for t, step in enumerate(structure):
        if step.step != t:
            raise GenerationError(f"Structure entry {t} is for step {step.step}.")
        internal: set[Edge] = set()
        for community in step.stable:
            internal |= planner.internal_edges(community.nodes)
        for record in step.evolving:
            if record.index not in running:
                if record.start != t:
                    raise GenerationError(f"Event {record.index} joins at step {t}, not at its start.")
                running[record.index] = _RunningTransition(record, planner)
            internal |= running[record.index].advance()
            if t == record.end - 1:
                del running[record.index]

        nodes = step.present_nodes()
        external: set[Edge] = set()
        if len(nodes) >= 2 and params.beta > 0:
            fraction = external_density(len(nodes), params.alpha, params.beta)
            groups = _interim_groups(step)
            for i, a in enumerate(groups):
                for b in groups[i + 1 :]:
                    external |= planner.blocks.inter(a, b, fraction)
        yield BackboneStep(t, nodes, frozenset(internal), frozenset(external))
    if running:
        raise GenerationError(f"Events {sorted(running)} did not complete within the structure.")


def generate_backbone(
    structure: Sequence[StepStructure],
    params: GeneratorParams,
    planner: Optional[TransitionPlanner] = None,
) -> list[BackboneStep]:
    """Noise-free edges of every step."""
    return list(iter_backbone(structure, params, planner))


def generate(
    structure: Sequence[StepStructure],
    params: GeneratorParams,
    planner: Optional[TransitionPlanner] = None,
    progress: bool = False,
) -> DynamicGraph:
    """
    Generate the dynamic graph of a community structure.

    Args:
        structure (Sequence[StepStructure]): Per-step structure from a scenario run.
        params (GeneratorParams): Model parameters.
        planner (TransitionPlanner, optional): Reuse the planner the scenario ran with.
        progress (bool): Show a progress bar.

    Returns:
        DynamicGraph: One snapshot per step, noise applied last.
    """
    snapshots = []
    backbone = iter_backbone(structure, params, planner)
    for step in tqdm(backbone, total=len(structure), desc="generate", disable=not progress):
        snapshot = Snapshot(step.step, step.nodes, step.internal | step.external)
        if params.beta_r > 0:
            snapshot = apply_noise(snapshot, params.beta_r, [params.seed, step.step, _NOISE_STREAM])
        snapshots.append(snapshot)
    graph = DynamicGraph(tuple(snapshots))
    log.info(
        "Generated %s snapshots, %s edges in total.",
        len(graph), sum(len(s.edges) for s in graph),
    )
    return graph


def build_benchmark(
    events: Sequence[EventDecl],
    params: GeneratorParams,
    horizon: Optional[int] = None,
    progress: bool = False,
) -> Benchmark:
    """Run a scenario and generate its edges with the same parameters."""
    planner = TransitionPlanner(params)
    result = run_scenario(events, params.seed, planner, horizon)
    graph = generate(result.structure, params, planner, progress)
    return Benchmark(graph, result.ground_truth, result.structure, params)
