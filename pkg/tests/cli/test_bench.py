"""Tests for the scalability harness."""

import itertools

import pytest
from scipy import stats

from src.cli.bench import BENCH_COLUMNS, BenchParams, per_step_seconds, run_bench
from src.detectors.methods import DetectorConfig
from src.generator.params import GeneratorParams

TESTED_MODULE = "src.cli.bench"


@pytest.fixture(name="small")
def fixture_small() -> BenchParams:
    """Two step prefixes and one community count, one method."""
    return BenchParams(
        methods=("no-smoothing",),
        step_sweep_steps=(4, 8),
        step_sweep_m=2,
        o=2,
        size_sweep_m=(3,),
        size_sweep_steps=4,
    )


def test_rows_and_timing(small: BenchParams, mocker):
    """Only detector calls are timed, one row per sweep point and method."""
    mocker.patch(f"{TESTED_MODULE}.time.perf_counter", side_effect=itertools.count(0, 0.5))
    table = run_bench(small, GeneratorParams(beta_r=0.0))
    assert list(table.columns) == list(BENCH_COLUMNS)
    assert table["sweep"].tolist() == ["steps", "steps", "size"]
    assert table["steps"].tolist() == [4, 8, 4]
    assert table["seconds"].tolist() == [0.5, 0.5, 0.5]
    assert per_step_seconds(table, "no-smoothing").to_dict() == {4: 0.125, 8: 0.0625}


def test_empty_sweeps():
    """No sweep point, no row."""
    table = run_bench(BenchParams(step_sweep_steps=(), size_sweep_m=()))
    assert table.empty
    assert list(table.columns) == list(BENCH_COLUMNS)


@pytest.mark.parametrize(
    "kwargs", [{"step_sweep_steps": (0,)}, {"size_sweep_steps": 0}, {"size_sweep_m": (1,)}, {"step_sweep_m": 1}]
)
def test_invalid_params(kwargs: dict):
    """Sweeps need steps and at least two communities."""
    with pytest.raises(ValueError):
        BenchParams(**kwargs)


def test_from_config():
    """The bench section sets the sweeps, the random scenario section the sizes."""
    params = BenchParams.from_config(
        {"methods": ["implicit-global"], "step_sweep": {"m": 3, "o": 7, "steps": [10]}, "size_sweep": {"m": [2]}},
        {"s_min": 4, "s_max": 6},
    )
    assert params.methods == ("implicit-global",)
    assert (params.step_sweep_m, params.o, params.step_sweep_steps) == (3, 7, (10,))
    assert params.size_sweep_m == (2,)
    assert (params.s_min, params.s_max) == (4, 6)


@pytest.mark.slow
def test_scaling_with_steps():
    """Per-snapshot methods scale linearly with the steps; label smoothing grows faster."""
    params = BenchParams(step_sweep_steps=(50, 100, 200, 400), step_sweep_m=5, o=50, size_sweep_m=())
    table = run_bench(params, GeneratorParams(), DetectorConfig())
    for method in ("no-smoothing", "implicit-global", "smoothed-graph"):
        rows = table[table["method"] == method]
        fit = stats.linregress(rows["steps"], rows["seconds"])
        assert fit.rvalue**2 >= 0.9, method
    per_step = per_step_seconds(table, "label-smoothing").sort_index()
    assert list(per_step.index) == [50, 100, 200, 400]
    assert (per_step.diff().dropna() > 0).all(), per_step.to_dict()
