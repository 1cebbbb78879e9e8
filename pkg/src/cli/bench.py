"""Scalability harness: wall-clock time of the detectors over two sweeps."""

import time
from dataclasses import dataclass

import pandas as pd
from tqdm import tqdm

from src.core.types import DynamicGraph
from src.detectors.methods import DETECTORS, DetectorConfig, detect
from src.generator.generate import build_benchmark
from src.generator.params import GeneratorParams
from src.scenario.random_scenario import RandomScenarioParams, random_scenario
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)

BENCH_COLUMNS = ("sweep", "method", "m", "steps", "nodes", "seconds")


@dataclass(frozen=True)
class BenchParams:
    """
    Represents the two sweeps of the scalability harness.

    Attributes:
        methods (tuple[str, ...]): Registered methods to time.
        step_sweep_steps (tuple[int, ...]): Step-count prefixes of the step sweep.
        step_sweep_m (int): Initial community count of the step sweep.
        o (int): Operations of every random scenario.
        size_sweep_m (tuple[int, ...]): Initial community counts of the size sweep.
        size_sweep_steps (int): Steps of every size-sweep benchmark.
        s_min (int): Smallest initial community size.
        s_max (int): Largest initial community size.
    """

    methods: tuple[str, ...] = tuple(DETECTORS)
    step_sweep_steps: tuple[int, ...] = (50, 100, 200, 400)
    step_sweep_m: int = 5
    o: int = 50
    size_sweep_m: tuple[int, ...] = (2, 4, 8, 16)
    size_sweep_steps: int = 50
    s_min: int = 5
    s_max: int = 15

    def __post_init__(self):
        for name in ("methods", "step_sweep_steps", "size_sweep_m"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if any(steps < 1 for steps in self.step_sweep_steps) or self.size_sweep_steps < 1:
            raise ValueError("Benchmarks need at least one step.")
        if any(m < 2 for m in (*self.size_sweep_m, self.step_sweep_m)):
            raise ValueError("Benchmarks need at least two initial communities.")

    @classmethod
    def from_config(cls, cfg: dict, scenario_cfg: dict | None = None) -> "BenchParams":
        """Build from the `bench` and `random_scenario` sections of params.yaml."""
        scenario_cfg = scenario_cfg or {}
        step_cfg, size_cfg = cfg.get("step_sweep", {}), cfg.get("size_sweep", {})
        return cls(
            methods=tuple(cfg.get("methods", DETECTORS)),
            step_sweep_steps=tuple(step_cfg.get("steps", cls.step_sweep_steps)),
            step_sweep_m=int(step_cfg.get("m", cls.step_sweep_m)),
            o=int(step_cfg.get("o", cls.o)),
            size_sweep_m=tuple(size_cfg.get("m", cls.size_sweep_m)),
            size_sweep_steps=int(size_cfg.get("steps", cls.size_sweep_steps)),
            s_min=int(scenario_cfg.get("s_min", cls.s_min)),
            s_max=int(scenario_cfg.get("s_max", cls.s_max)),
        )


def time_detector(method: str, graph: DynamicGraph, seed: int, config: DetectorConfig) -> float:
    """Seconds spent by one detector run; nothing else is timed."""
    start = time.perf_counter()
    detect(method, graph, seed, config)
    return time.perf_counter() - start


def _benchmark_graph(m: int, o: int, steps: int, params: BenchParams, generator: GeneratorParams) -> DynamicGraph:
    decls = random_scenario(RandomScenarioParams(m, params.s_min, params.s_max, o, generator.seed))
    return build_benchmark(decls, generator, horizon=steps).graph.prefix(steps)


def _row(sweep: str, method: str, m: int, graph: DynamicGraph, seconds: float) -> dict:
    return {
        "sweep": sweep,
        "method": method,
        "m": m,
        "steps": len(graph),
        "nodes": len(graph.nodes()),
        "seconds": seconds,
    }


def step_sweep(
    params: BenchParams, generator: GeneratorParams, config: DetectorConfig, progress: bool = False
) -> list[dict]:
    """Time every method on prefixes of one benchmark."""
    if not params.step_sweep_steps or not params.methods:
        return []
    graph = _benchmark_graph(
        params.step_sweep_m, params.o, max(params.step_sweep_steps), params, generator
    )
    rows = []
    for steps in tqdm(params.step_sweep_steps, desc="step sweep", disable=not progress):
        prefix = graph.prefix(steps)
        for method in params.methods:
            seconds = time_detector(method, prefix, generator.seed, config)
            rows.append(_row("steps", method, params.step_sweep_m, prefix, seconds))
    return rows


def size_sweep(
    params: BenchParams, generator: GeneratorParams, config: DetectorConfig, progress: bool = False
) -> list[dict]:
    """Time every method on fixed-length benchmarks with more and more communities."""
    rows = []
    if not params.methods:
        return rows
    for m in tqdm(params.size_sweep_m, desc="size sweep", disable=not progress):
        graph = _benchmark_graph(m, params.o, params.size_sweep_steps, params, generator)
        for method in params.methods:
            seconds = time_detector(method, graph, generator.seed, config)
            rows.append(_row("size", method, m, graph, seconds))
    return rows


def run_bench(
    params: BenchParams,
    generator: GeneratorParams = GeneratorParams(),
    config: DetectorConfig = DetectorConfig(),
    progress: bool = False,
) -> pd.DataFrame:
    """Both sweeps as one table with the columns of `BENCH_COLUMNS`."""
    rows = step_sweep(params, generator, config, progress) + size_sweep(params, generator, config, progress)
    table = pd.DataFrame(rows, columns=list(BENCH_COLUMNS))
    log.info("Timed %s detector runs.", len(table))
    return table


def per_step_seconds(table: pd.DataFrame, method: str) -> pd.Series:
    """Seconds per step of one method along the step sweep, indexed by step count."""
    rows = table[(table["sweep"] == "steps") & (table["method"] == method)]
    return (rows["seconds"] / rows["steps"]).set_axis(rows["steps"].to_list())


def format_table(table: pd.DataFrame) -> str:
    """Tab-separated table; seconds are the only non-reproducible column."""
    return table.to_csv(sep="\t", index=False, lineterminator="\n")
