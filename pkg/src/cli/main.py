"""Command-line entry point: generate benchmarks, detect, evaluate, draw and time."""

import dataclasses
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

import click

from src.cli.bench import BenchParams, format_table, run_bench
from src.conf.parse_params import default_seed, parse_params
from src.core.errors import BenchmarkError
from src.detectors.methods import DetectorConfig, SmoothedGraphParams, detect
from src.formats.bundle import FileBundle
from src.formats.manifest import load_manifest, write_event_log, write_manifest
from src.formats.partition_file import load_partition, write_partition
from src.formats.report_file import json_twin, write_report, write_report_json
from src.formats.tam import TamStyle, export_tam
from src.formats.tnet import load_edges, write_edges
from src.generator.generate import build_benchmark
from src.generator.params import GeneratorParams
from src.metrics.report import evaluate
from src.metrics.smoothness import SmPMode
from src.scenario.dsl import load_scenario
from src.scenario.random_scenario import RandomScenarioParams, random_scenario
from src.utils.fs_utils import OutputTransaction, output_transaction
from src.utils.log_utils import (
    PACKAGE_LOGGER,
    remove_file_logger,
    set_package_level,
    setup_file_logger,
    setup_logger,
)

log = setup_logger(__name__)

PRESETS = ("sharp", "blurred")


@contextmanager
def _command(out: Optional[Path] = None) -> Iterator[OutputTransaction]:
    """Write outputs atomically and turn domain errors into click errors."""
    try:
        with output_transaction() as transaction:
            yield transaction
    except (BenchmarkError, ValueError) as e:
        raise click.ClickException(str(e)) from e
    if out is not None:
        log.info("Outputs written to %s", out)


def _params(ctx: click.Context) -> dict:
    return ctx.obj["params"]


def resolve_generator_params(
    cfg: dict,
    preset: Optional[str] = None,
    mu: Optional[float] = None,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    beta_r: Optional[float] = None,
    seed: Optional[int] = None,
) -> GeneratorParams:
    """
    Generator parameters from params.yaml, then the preset, then mu, then explicit values.

    The seed falls back to DCBENCH_SEED and then to the `generator` section.
    """
    values = dict(cfg.get("generator", {}))
    if preset is not None:
        values.update(cfg.get("presets", {}).get(preset, {}))
    if mu is not None:
        from_mu = GeneratorParams.from_mu(mu)
        values.update(alpha=from_mu.alpha, beta=from_mu.beta)
    for key, value in (("alpha", alpha), ("beta", beta), ("beta_r", beta_r)):
        if value is not None:
            values[key] = value
    values["seed"] = seed if seed is not None else default_seed(int(values.get("seed", 0)))
    return GeneratorParams.from_config(values)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress at INFO level.")
@click.option(
    "--params",
    "params_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Parameter file. Defaults to params.yaml in the project root.",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, params_file: Optional[Path]):
    """Dynamic community detection benchmark."""
    set_package_level("INFO" if verbose else "WARNING")
    ctx.ensure_object(dict)
    ctx.obj["params"] = parse_params(params_file)
    ctx.obj["verbose"] = verbose


@main.command()
@click.option(
    "--scenario",
    "scenario_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Scenario script (.dcs). Defaults to the `scenario.file` parameter.",
)
@click.option("--random", "use_random", is_flag=True, help="Draw a random scenario instead.")
@click.option("--m", type=click.INT, help="Random scenario: initial number of communities.")
@click.option("--smin", type=click.INT, help="Random scenario: smallest initial size.")
@click.option("--smax", type=click.INT, help="Random scenario: largest initial size.")
@click.option("--o", "operations", type=click.INT, help="Random scenario: number of operations.")
@click.option("--preset", type=click.Choice(PRESETS), help="Named parameter set.")
@click.option("--mu", type=click.FLOAT, help="Shortcut for alpha = 1 - mu and beta = mu.")
@click.option("--alpha", type=click.FLOAT, help="Density exponent, overrides --mu.")
@click.option("--beta", type=click.FLOAT, help="Identifiability, overrides --mu.")
@click.option("--beta-r", "beta_r", type=click.FLOAT, help="Fraction of edges rewired per step.")
@click.option("--seed", type=click.INT, help="Seed; defaults to $DCBENCH_SEED.")
@click.option("--horizon", type=click.INT, help="Smallest number of steps.")
@click.option(
    "-o",
    "--output",
    "output_dir",
    type=click.Path(file_okay=False, path_type=Path),
    help="Output directory. Defaults to the `out_dir` parameter.",
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Append the run log to this file.",
)
@click.option("--progress", is_flag=True, help="Show a progress bar.")
@click.pass_context
def generate(
    ctx: click.Context,
    scenario_file: Optional[Path],
    use_random: bool,
    m: Optional[int],
    smin: Optional[int],
    smax: Optional[int],
    operations: Optional[int],
    preset: Optional[str],
    mu: Optional[float],
    alpha: Optional[float],
    beta: Optional[float],
    beta_r: Optional[float],
    seed: Optional[int],
    horizon: Optional[int],
    output_dir: Optional[Path],
    log_file: Optional[Path],
    progress: bool,
):
    """Run a scenario and write its edges, ground truth, event log and manifest."""
    cfg = _params(ctx)
    if scenario_file is not None and use_random:
        raise click.UsageError("--scenario and --random are mutually exclusive.")
    random_options = (m, smin, smax, operations)
    if not use_random and any(v is not None for v in random_options):
        raise click.UsageError("--m, --smin, --smax and --o only apply with --random.")

    bundle = FileBundle.in_dir(output_dir or cfg.get("out_dir", "."))
    handler = None
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = setup_file_logger(PACKAGE_LOGGER, log_file, "INFO" if ctx.obj["verbose"] else "WARNING")
    try:
        with _command(bundle.manifest.parent) as out:
            random_cfg = cfg.get("random_scenario", {})
            if use_random and mu is None and alpha is None and beta is None and preset is None:
                mu = random_cfg.get("mu")
            params = resolve_generator_params(cfg, preset, mu, alpha, beta, beta_r, seed)

            scenario_cfg = cfg.get("scenario", {})
            horizon = horizon if horizon is not None else scenario_cfg.get("horizon")
            manifest: dict[str, Any] = {}
            if use_random:
                scenario_params = RandomScenarioParams.from_config(
                    {
                        k: v
                        for k, v in {**random_cfg, "m": m, "s_min": smin, "s_max": smax, "o": operations}.items()
                        if v is not None
                    },
                    seed=params.seed,
                )
                decls = random_scenario(scenario_params)
                manifest.update(
                    scenario="random",
                    m=scenario_params.m,
                    s_min=scenario_params.s_min,
                    s_max=scenario_params.s_max,
                    o=scenario_params.o,
                )
            else:
                if scenario_file is None:
                    if not scenario_cfg.get("file"):
                        raise click.UsageError("Give --scenario, --random or a `scenario.file` parameter.")
                    scenario_file = Path(scenario_cfg["file"])
                decls = load_scenario(scenario_file)
                manifest["scenario"] = scenario_file.as_posix()

            benchmark = build_benchmark(decls, params, horizon, progress)
            manifest.update(
                alpha=params.alpha,
                beta=params.beta,
                beta_r=params.beta_r,
                seed=params.seed,
                horizon=horizon,
                preset=preset,
                mu=mu,
                steps=len(benchmark.graph),
                nodes=len(benchmark.graph.nodes()),
                events=len(benchmark.event_log),
            )
            out.write(bundle.edges, write_edges(benchmark.graph))
            out.write(bundle.ground_truth, write_partition(benchmark.ground_truth.partition))
            out.write(bundle.event_log, write_event_log(benchmark.event_log))
            out.write(bundle.manifest, write_manifest(manifest))
    finally:
        if handler is not None:
            remove_file_logger(handler, PACKAGE_LOGGER)
    click.echo(f"{len(benchmark.graph)} steps written to {bundle.edges.parent}")


@main.command("detect")
@click.option(
    "--edges",
    "edges_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Edge-stream file.",
)
@click.option("--method", default="no-smoothing", show_default=True, help="Registered method.")
@click.option("--alpha-sg", "alpha_sg", type=click.FLOAT, help="Smoothed-graph weight of the current step.")
@click.option("--jaccard-threshold", type=click.FLOAT, help="Smallest Jaccard for label matching.")
@click.option("--window", type=click.INT, help="Label smoothing: largest step distance.")
@click.option("--seed", type=click.INT, help="Seed; defaults to $DCBENCH_SEED.")
@click.option("--jobs", type=click.IntRange(min=1), help="Threads for per-snapshot detection.")
@click.option(
    "-o",
    "--output",
    "output_file",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Partition file. Defaults to partition.txt next to the edges.",
)
@click.pass_context
def detect_command(
    ctx: click.Context,
    edges_file: Path,
    method: str,
    alpha_sg: Optional[float],
    jaccard_threshold: Optional[float],
    window: Optional[int],
    seed: Optional[int],
    jobs: Optional[int],
    output_file: Optional[Path],
):
    """Run a dynamic community detection method on an edge-stream file."""
    cfg = _params(ctx)
    output_file = output_file or FileBundle.in_dir(edges_file.parent).partition
    with _command(output_file) as out:
        detector_cfg = dict(cfg.get("detectors", {}))
        if jaccard_threshold is not None:
            detector_cfg["jaccard_threshold"] = jaccard_threshold
        if window is not None:
            detector_cfg["survival_window"] = window
        config = DetectorConfig.from_config(detector_cfg, jobs)
        if alpha_sg is not None:
            config = dataclasses.replace(config, smoothed_graph=SmoothedGraphParams(alpha_sg))
        seed = seed if seed is not None else default_seed(int(cfg.get("generator", {}).get("seed", 0)))
        found = detect(method, load_edges(edges_file), seed, config)
        out.write(output_file, write_partition(found))
    click.echo(f"{method}: {len(found.labels())} labels written to {output_file}")


@main.command("evaluate")
@click.option("--edges", "edges_file", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option(
    "--ground-truth",
    "gt_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
)
@click.option("--found", "found_file", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--method", default="", help="Method name recorded in the report.")
@click.option(
    "--manifest",
    "manifest_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Manifest of the generating run, to record its parameters.",
)
@click.option("--sm-p-mode", type=click.Choice([m.value for m in SmPMode]), help="SM-P variant ranked.")
@click.option(
    "-o",
    "--output",
    "output_file",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Flat report file; a .json twin is written next to it.",
)
@click.pass_context
def evaluate_command(
    ctx: click.Context,
    edges_file: Path,
    gt_file: Path,
    found_file: Path,
    method: str,
    manifest_file: Optional[Path],
    sm_p_mode: Optional[str],
    output_file: Optional[Path],
):
    """Score a detected partition against the ground truth."""
    cfg = _params(ctx)
    output_file = output_file or FileBundle.in_dir(found_file.parent).report
    with _command(output_file) as out:
        params = None
        if manifest_file is not None:
            manifest = load_manifest(manifest_file)
            params = GeneratorParams.from_config(manifest)
        mode = sm_p_mode or cfg.get("metrics", {}).get("sm_p_mode", SmPMode.SIMILARITY.value)
        report = evaluate(
            load_partition(gt_file),
            load_partition(found_file),
            load_edges(edges_file),
            method,
            params,
            mode,
        )
        out.write(output_file, write_report(report))
        out.write(json_twin(output_file), write_report_json(report))
    click.echo(write_report(report), nl=False)


@main.command("tam")
@click.option(
    "--partition",
    "partition_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--graph",
    "edges_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Edge-stream file; present but unlabelled nodes are drawn grey.",
)
@click.option("--cell-width", type=click.IntRange(min=1))
@click.option("--row-height", type=click.IntRange(min=1))
@click.option("-o", "--output", "output_file", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def tam_command(
    ctx: click.Context,
    partition_file: Path,
    edges_file: Optional[Path],
    cell_width: Optional[int],
    row_height: Optional[int],
    output_file: Optional[Path],
):
    """Draw a partition file as an SVG temporal affiliation matrix."""
    cfg = dict(_params(ctx).get("tam", {}))
    cfg.update({k: v for k, v in (("cell_width", cell_width), ("row_height", row_height)) if v is not None})
    output_file = output_file or partition_file.with_suffix(".svg")
    with _command(output_file) as out:
        graph = load_edges(edges_file) if edges_file is not None else None
        svg = export_tam(load_partition(partition_file), graph, TamStyle.from_config(cfg))
        out.write(output_file, svg)
    click.echo(f"TAM written to {output_file}")


@main.command("bench")
@click.option("--method", "methods", multiple=True, help="Method to time; repeatable. All by default.")
@click.option("--steps", multiple=True, type=click.IntRange(min=1), help="Step-sweep prefix; repeatable.")
@click.option("--m", "sizes", multiple=True, type=click.IntRange(min=2), help="Size-sweep community count; repeatable.")
@click.option("--seed", type=click.INT, help="Seed; defaults to $DCBENCH_SEED.")
@click.option("--jobs", type=click.IntRange(min=1))
@click.option("-o", "--output", "output_file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--progress", is_flag=True)
@click.pass_context
def bench_command(
    ctx: click.Context,
    methods: tuple[str, ...],
    steps: tuple[int, ...],
    sizes: tuple[int, ...],
    seed: Optional[int],
    jobs: Optional[int],
    output_file: Optional[Path],
    progress: bool,
):
    """Time the detectors over growing step counts and growing community counts."""
    cfg = _params(ctx)
    with _command(output_file) as out:
        params = BenchParams.from_config(cfg.get("bench", {}), cfg.get("random_scenario", {}))
        overrides = {
            name: value
            for name, value in (("methods", methods), ("step_sweep_steps", steps), ("size_sweep_m", sizes))
            if value
        }
        params = dataclasses.replace(params, **overrides)
        generator = resolve_generator_params(cfg, seed=seed)
        config = DetectorConfig.from_config(cfg.get("detectors", {}), jobs)
        table = format_table(run_bench(params, generator, config, progress))
        if output_file is not None:
            out.write(output_file, table)
    click.echo(table, nl=False)


if __name__ == "__main__":
    main()  # pylint: disable=no-value-for-parameter
