"""Compare methods over random benchmarks of one sharpness level."""

from typing import Optional, Sequence

import pandas as pd
from tqdm import tqdm

from src.detectors.methods import DETECTORS, DetectorConfig, detect
from src.generator.generate import build_benchmark
from src.generator.params import GeneratorParams
from src.metrics.report import EvaluationReport, evaluate, rank_table
from src.scenario.random_scenario import RandomScenarioParams, random_scenario
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)


def evaluate_suite(
    mu: float,
    seeds: Sequence[int],
    methods: Optional[Sequence[str]] = None,
    scenario: RandomScenarioParams = RandomScenarioParams(),
    config: DetectorConfig = DetectorConfig(),
    beta_r: float = 0.01,
    progress: bool = False,
) -> tuple[list[EvaluationReport], pd.DataFrame]:
    """
    Generate one random benchmark per seed, run every method and rank them.

    Args:
        mu (float): Sharpness knob, alpha = 1 - mu and beta = mu.
        seeds (Sequence[int]): One benchmark per seed.
        methods (Sequence[str], optional): Registered method names, all by default.
        scenario (RandomScenarioParams): Random scenario parameters; the seed is replaced.
        config (DetectorConfig): Method parameters.
        beta_r (float): Noise level.
        progress (bool): Show a progress bar.

    Returns:
        tuple[list[EvaluationReport], pd.DataFrame]: Every report, and the median rank of
            each method (rows) on each score (columns) over the seeds, empty with a single method.
    """
    methods = list(methods) if methods is not None else list(DETECTORS)
    reports: list[EvaluationReport] = []
    ranks = []
    for seed in tqdm(seeds, desc=f"mu={mu}", disable=not progress):
        params = GeneratorParams.from_mu(mu, beta_r=beta_r, seed=seed)
        decls = random_scenario(
            RandomScenarioParams(scenario.m, scenario.s_min, scenario.s_max, scenario.o, seed)
        )
        benchmark = build_benchmark(decls, params)
        seed_reports = []
        for method in methods:
            found = detect(method, benchmark.graph, seed, config)
            seed_reports.append(
                evaluate(benchmark.ground_truth.partition, found, benchmark.graph, method, params)
            )
        reports.extend(seed_reports)
        if len(seed_reports) >= 2:
            ranks.append(rank_table(seed_reports))
    if not ranks:
        return reports, pd.DataFrame()
    median = pd.concat(ranks).groupby(level=0, sort=False).median()
    log.info("Median ranks for mu=%s over %s seeds:\n%s", mu, len(seeds), median)
    return reports, median
