"""Tests for transition plans."""

import pytest

from src.generator.affinity import AffinityOracle
from src.generator.params import GeneratorParams
from src.generator.transitions import Op, TransitionPlanner, plan_transition


@pytest.fixture(name="planner")
def fixture_planner() -> TransitionPlanner:
    """Planner with sparse communities."""
    return TransitionPlanner(GeneratorParams(alpha=0.8, beta=0.1, beta_r=0.0, seed=2))


def test_plan_is_minimal():
    """A plan adds exactly the missing edges and removes exactly the extra ones."""
    before = {(0, 1), (1, 2), (2, 3)}
    after = {(1, 2), (0, 3), (0, 2)}
    plan = plan_transition(AffinityOracle(0), before, after)
    assert len(plan) == 4
    assert plan.apply(before, len(plan)) == after
    assert {m.edge for m in plan.modifications if m.op is Op.ADD} == {(0, 3), (0, 2)}


def test_additions_by_decreasing_affinity():
    """Additions come most affine first."""
    oracle = AffinityOracle(3)
    after = {(0, k) for k in range(1, 9)}
    plan = plan_transition(oracle, set(), after)
    scores = [oracle(*m.edge) for m in plan.modifications]
    assert scores == sorted(scores, reverse=True)


def test_interleaving_keeps_edge_count_close():
    """Interleaving additions and removals keeps the edge count between its endpoints."""
    before = {(0, k) for k in range(1, 11)}
    after = {(1, k) for k in range(2, 12)}
    plan = plan_transition(AffinityOracle(0), before, after)
    for k in range(len(plan) + 1):
        assert 9 <= len(plan.apply(before, k)) <= 11


def test_planner_merge(planner: TransitionPlanner):
    """Merging two communities ends on the block edges of the union."""
    a, b = frozenset(range(6)), frozenset(range(6, 10))
    plan = planner.plan([a, b], [a | b])
    start = planner.union_edges([a, b])
    assert plan.apply(start, len(plan)) == planner.internal_edges(a | b)
    assert planner.transition_length([a, b], [a | b]) == len(plan)


def test_empty_transition(planner: TransitionPlanner):
    """Nothing changes when before and after coincide."""
    nodes = frozenset(range(5))
    assert planner.transition_length([nodes], [nodes]) == 0
