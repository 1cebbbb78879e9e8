"""Longitudinal scores: every (node, step) tuple is one element, every label one cluster."""

from src.core.errors import MetricError, NothingToCompareError
from src.core.partition import LongitudinalPartition, restrict
from src.metrics.clustering import ami, ari


def _flattened(gt: LongitudinalPartition, found: LongitudinalPartition):
    try:
        p, q = restrict(gt, found)
    except NothingToCompareError as e:
        raise MetricError(e.message) from e
    return dict(p.defined), dict(q.defined)


def lami(gt: LongitudinalPartition, found: LongitudinalPartition) -> float:
    """AMI over the jointly defined (node, step) tuples."""
    return ami(*_flattened(gt, found))


def lari(gt: LongitudinalPartition, found: LongitudinalPartition) -> float:
    """ARI over the jointly defined (node, step) tuples."""
    return ari(*_flattened(gt, found))
