"""Tests for per-step averaged scores."""

import logging

import pytest
from pytest import LogCaptureFixture

from src.core.errors import MetricError
from src.core.partition import UNDEFINED, LongitudinalPartition
from src.core.types import DynamicGraph, Snapshot
from src.metrics.instantaneous import avg_modularity, avg_step_scores

TESTED_MODULE = "src.metrics.instantaneous"


@pytest.fixture(name="gt")
def fixture_gt() -> LongitudinalPartition:
    """Two communities over three steps, undefined at step 1."""
    steps = {
        0: {0: "A", 1: "A", 2: "B", 3: "B"},
        1: {0: UNDEFINED, 1: UNDEFINED, 2: UNDEFINED, 3: UNDEFINED},
        2: {0: "A", 1: "A", 2: "B", 3: "B"},
    }
    return LongitudinalPartition.from_steps(steps)


def test_undefined_steps_are_skipped(gt: LongitudinalPartition, caplog: LogCaptureFixture):
    """Steps with nothing jointly defined are recorded and reported."""
    found = LongitudinalPartition.from_steps({t: {0: "0", 1: "0", 2: "1", 3: "1"} for t in range(3)})
    with caplog.at_level(logging.WARNING, logger=TESTED_MODULE):
        scores = avg_step_scores(gt, found, "ari")
    assert scores.steps == (0, 2)
    assert scores.skipped == (1,)
    assert scores.mean == pytest.approx(1.0)
    assert "1 steps skipped" in caplog.text


def test_unknown_score(gt: LongitudinalPartition):
    """Only registered scores can be averaged."""
    with pytest.raises(MetricError):
        avg_step_scores(gt, gt, "purity")


def test_mean_of_nothing():
    """A mean over no step is an error."""
    scores = avg_step_scores(LongitudinalPartition({(0, 0): "A"}), LongitudinalPartition({(1, 0): "A"}))
    with pytest.raises(MetricError):
        _ = scores.mean


def test_avg_modularity():
    """Unlabelled present nodes are singletons and empty steps are skipped."""
    triangles = {(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)}
    graph = DynamicGraph((Snapshot(0, range(6), triangles), Snapshot(1, ())))
    found = LongitudinalPartition.from_steps({0: {0: "a", 1: "a", 2: "a", 3: "b", 4: "b", 5: "b"}})
    scores = avg_modularity(graph, found)
    assert scores.per_step == pytest.approx((0.5,))
    assert scores.skipped == (1,)
    lonely = avg_modularity(graph, LongitudinalPartition({}))
    assert lonely.per_step[0] < 0
