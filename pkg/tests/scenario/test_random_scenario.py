"""Tests for random scenarios."""

import logging

import numpy as np
import pytest
from pytest import LogCaptureFixture

from src.scenario.engine import run_scenario
from src.scenario.events import EventKind
from src.scenario.random_scenario import RandomScenarioParams, random_scenario

TESTED_MODULE = "src.scenario.random_scenario"


class LowestDraws:
    """Random generator stand-in that always draws the lowest value."""

    def integers(self, low, high=None, size=None):
        if size is None:
            return 0 if high is None else low
        return np.full(size, low)


@pytest.fixture(name="params")
def fixture_params() -> RandomScenarioParams:
    """Settings of the random benchmarks."""
    return RandomScenarioParams(m=10, s_min=5, s_max=15, o=20, seed=7)


def test_initial_communities(params: RandomScenarioParams):
    """The scenario starts with m communities of sizes within bounds."""
    decls = random_scenario(params)
    first = decls[0]
    assert first.kind is EventKind.INITIALIZE
    assert len(first.params["sizes"]) == 10
    assert all(5 <= s <= 15 for s in first.params["sizes"])
    assert len(decls) == 21


def test_operations_are_merges_and_splits(params: RandomScenarioParams):
    """Large communities are split in about 2/3 and 1/3, others merged."""
    for decl in random_scenario(params)[1:]:
        assert decl.kind in (EventKind.MERGE, EventKind.SPLIT)
        if decl.kind is EventKind.SPLIT:
            large, small = decl.params["sizes"]
            assert large >= small


def test_deterministic(params: RandomScenarioParams):
    """Equal parameters give equal scenarios."""
    assert random_scenario(params) == random_scenario(params)
    other = RandomScenarioParams(params.m, params.s_min, params.s_max, params.o, seed=8)
    assert random_scenario(other) != random_scenario(params)


def test_runs_to_completion(params: RandomScenarioParams):
    """A random scenario is valid for the engine and operations never overlap."""
    result = run_scenario(random_scenario(params), seed=params.seed)
    operations = [r for r in result.event_log if r.kind is not EventKind.INITIALIZE]
    assert len(operations) == 20
    for before, after in zip(operations, operations[1:]):
        assert after.start >= before.end


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_nodes_conserved(seed: int):
    """Merges and splits move nodes but never create or remove any."""
    decls = random_scenario(RandomScenarioParams(m=10, s_min=5, s_max=15, o=20, seed=seed))
    total = sum(decls[0].params["sizes"])
    result = run_scenario(decls, seed=seed)
    for step in result.structure:
        assert step.present_nodes() == frozenset(range(total)), step.step
    final = result.structure[-1]
    assert not final.evolving
    assert sum(len(c) for c in final.stable) == total


def test_typical_size():
    """With the default settings benchmarks have about 100 nodes and 1200 steps."""
    nodes, steps = [], []
    for seed in range(8):
        decls = random_scenario(RandomScenarioParams(m=10, s_min=5, s_max=15, o=20, seed=seed))
        result = run_scenario(decls, seed=seed)
        nodes.append(len(result.structure[0].present_nodes()))
        steps.append(result.num_steps)
    assert 50 <= np.mean(nodes) <= 200
    assert 600 <= np.mean(steps) <= 2400


def test_merge_skipped_without_partner(mocker, caplog: LogCaptureFixture):
    """With a single community too small to split, the operation is skipped with a warning."""
    mocker.patch(f"{TESTED_MODULE}.np.random.default_rng", return_value=LowestDraws())
    with caplog.at_level(logging.WARNING, logger=TESTED_MODULE):
        decls = random_scenario(RandomScenarioParams(m=2, s_min=2, s_max=10, o=2))
    assert [d.kind for d in decls] == [EventKind.INITIALIZE, EventKind.MERGE]
    assert "nothing to merge with" in caplog.text


@pytest.mark.parametrize(
    "kwargs", [{"m": 1}, {"s_min": 1}, {"s_min": 9, "s_max": 8}, {"o": -1}]
)
def test_invalid_params(kwargs: dict):
    """Parameters are range-checked."""
    with pytest.raises(ValueError):
        RandomScenarioParams(**kwargs)
