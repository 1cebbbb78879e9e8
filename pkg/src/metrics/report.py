"""Evaluation reports and rank aggregation across methods."""

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import pandas as pd

from src.core.errors import MetricError
from src.core.partition import LongitudinalPartition
from src.core.types import DynamicGraph
from src.generator.params import GeneratorParams
from src.metrics.instantaneous import StepScores, avg_modularity, avg_step_scores
from src.metrics.longitudinal import lami, lari
from src.metrics.smoothness import SmoothnessReport, SmPMode, smoothness

# scores used for ranking; higher is better for every one of them
RANKED_SCORES = ("avg_ami", "avg_ari", "avg_q", "sm_p", "sm_n", "sm_l", "lami", "lari")


@dataclass(frozen=True)
class EvaluationReport:
    """Every score of one detected partition against the ground truth."""

    method: str
    avg_ami: StepScores
    avg_ari: StepScores
    avg_q: StepScores
    smoothness: SmoothnessReport
    lami: float
    lari: float
    params: Optional[GeneratorParams] = None
    sm_p_mode: str = SmPMode.SIMILARITY.value

    def scores(self) -> dict[str, float]:
        """The ranked scores."""
        return {
            "avg_ami": self.avg_ami.mean,
            "avg_ari": self.avg_ari.mean,
            "avg_q": self.avg_q.mean,
            "sm_p": self.smoothness.sm_p,
            "sm_n": self.smoothness.sm_n,
            "sm_l": self.smoothness.sm_l,
            "lami": self.lami,
            "lari": self.lari,
        }

    def flat(self) -> dict[str, Any]:
        """Every value of the report as one flat mapping, scores first."""
        values: dict[str, Any] = {"method": self.method, **self.scores()}
        values.update(
            {
                "sm_p_mode": self.sm_p_mode,
                "sm_p_literal": self.smoothness.sm_p_literal,
                "mean_nmi": self.smoothness.mean_nmi,
                "label_changes": self.smoothness.changes,
                "mean_entropy": self.smoothness.mean_entropy,
                "steps_evaluated": len(self.avg_ami.steps),
                "steps_skipped": len(self.avg_ami.skipped),
            }
        )
        if self.params is not None:
            values.update(
                {
                    "alpha": self.params.alpha,
                    "beta": self.params.beta,
                    "beta_r": self.params.beta_r,
                    "seed": self.params.seed,
                }
            )
        return values


def evaluate(
    gt: LongitudinalPartition,
    found: LongitudinalPartition,
    graph: DynamicGraph,
    method: str = "",
    params: Optional[GeneratorParams] = None,
    sm_p_mode: SmPMode | str = SmPMode.SIMILARITY,
) -> EvaluationReport:
    """
    Score a detected partition.

    Raises:
        MetricError: If nothing can be compared or the partition spans fewer than 2 steps.
    """
    report = EvaluationReport(
        method=method,
        avg_ami=avg_step_scores(gt, found, "ami"),
        avg_ari=avg_step_scores(gt, found, "ari"),
        avg_q=avg_modularity(graph, found),
        smoothness=smoothness(found, sm_p_mode),
        lami=lami(gt, found),
        lari=lari(gt, found),
        params=params,
        sm_p_mode=SmPMode(sm_p_mode).value,
    )
    # every mean must be defined
    report.scores()
    return report


def rank_table(reports: Sequence[EvaluationReport]) -> pd.DataFrame:
    """
    Rank methods on every score, 1 being the best; ties share their mean rank.

    Returns:
        pd.DataFrame: One row per method, one column per score.
    """
    if len(reports) < 2:
        raise MetricError(f"Ranking needs at least 2 reports, got {len(reports)}.")
    scores = pd.DataFrame([r.scores() for r in reports], index=[r.method for r in reports])
    return scores.rank(ascending=False, method="average")
