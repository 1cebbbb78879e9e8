"""Tests for the registered dynamic community detection methods."""

from pathlib import Path

import pytest

from src.core.errors import DetectionError
from src.core.types import DynamicGraph, Snapshot
from src.detectors.methods import (
    DETECTORS,
    DetectorConfig,
    SmoothedGraphParams,
    detect,
    no_smoothing,
    smoothed_graph,
    smoothed_weights,
)
from src.generator.generate import build_benchmark
from src.generator.params import GeneratorParams
from src.scenario.dsl import load_scenario

SCENARIOS = Path(__file__).resolve().parents[2] / "references" / "scenarios"


@pytest.fixture(name="cliques", scope="module")
def fixture_cliques() -> DynamicGraph:
    """Three disconnected cliques over five steps."""
    params = GeneratorParams(alpha=1.0, beta=0.0, beta_r=0.0)
    return build_benchmark(load_scenario(SCENARIOS / "static3.dcs"), params, horizon=5).graph


@pytest.fixture(name="noisy", scope="module")
def fixture_noisy() -> DynamicGraph:
    """The first steps of the ad-hoc scenario with blurred communities."""
    params = GeneratorParams(alpha=0.8, beta=0.2, beta_r=0.05, seed=2)
    return build_benchmark(load_scenario(SCENARIOS / "adhoc.dcs"), params).graph.prefix(30)


@pytest.mark.parametrize("name", sorted(DETECTORS))
def test_methods_recover_cliques(name: str, cliques: DynamicGraph):
    """Every method finds the three cliques with one persistent label each."""
    partition = detect(name, cliques, seed=1)
    assert len(partition.labels()) == 3
    for snapshot in cliques:
        labels = partition.at(snapshot.step)
        groups = {frozenset(n for n in labels if labels[n] == l) for l in set(labels.values())}
        assert groups == {frozenset(range(0, 10)), frozenset(range(10, 20)), frozenset(range(20, 30))}
    assert partition.label(0, 0) == partition.label(0, 4)


def test_unknown_method():
    """Unknown names are rejected with the list of registered methods."""
    with pytest.raises(DetectionError, match="no-smoothing"):
        detect("bogus", DynamicGraph(()))


def test_smoothed_graph_without_memory_is_no_smoothing(noisy: DynamicGraph):
    """alpha_sg = 1 ignores the previous step entirely."""
    assert smoothed_graph(noisy, SmoothedGraphParams(1.0), seed=4) == no_smoothing(noisy, seed=4)


def test_parallel_matches_sequential(noisy: DynamicGraph):
    """Threads do not change the result."""
    assert no_smoothing(noisy, seed=4, jobs=2) == no_smoothing(noisy, seed=4, jobs=1)
    one = detect("label-smoothing", noisy, 4, DetectorConfig(jobs=1))
    two = detect("label-smoothing", noisy, 4, DetectorConfig(jobs=2))
    assert one == two


def test_smoothed_weights():
    """Weights mix current edges and previous co-membership."""
    snapshot = Snapshot(0, range(4), {(0, 1), (2, 3)})
    weighted = smoothed_weights(snapshot, {0: 0, 1: 0, 2: 0, 3: 1}, 0.75)
    assert weighted[0][1]["weight"] == pytest.approx(1.0)
    assert weighted[0][2]["weight"] == pytest.approx(0.25)
    assert weighted[2][3]["weight"] == pytest.approx(0.75)
    assert weighted.number_of_edges() == 4


def test_empty_snapshot_in_the_middle():
    """Steps without nodes have no labels and do not break detection."""
    triangle = {(0, 1), (1, 2), (0, 2)}
    graph = DynamicGraph((Snapshot(0, range(3), triangle), Snapshot(1, ()), Snapshot(2, range(3), triangle)))
    for name in DETECTORS:
        partition = detect(name, graph)
        assert partition.at(1) == {}
        assert len(set(partition.at(2).values())) == 1


def test_detector_config_from_params():
    """The detectors section of params.yaml configures every method."""
    config = DetectorConfig.from_config(
        {"jaccard_threshold": 0.4, "alpha_sg": 0.5, "survival_window": 3, "jobs": 2}
    )
    assert config.matching.jaccard_threshold == 0.4
    assert config.smoothed_graph.alpha_sg == 0.5
    assert config.label_smoothing.window == 3
    assert config.jobs == 2
    assert DetectorConfig.from_config({}, jobs=4).jobs == 4


@pytest.mark.parametrize("name", sorted(DETECTORS))
def test_methods_are_deterministic(name: str, noisy: DynamicGraph):
    """A fixed seed gives the same partition."""
    assert detect(name, noisy, seed=6) == detect(name, noisy, seed=6)
