"""Partition similarity scores (NMI, AMI, ARI) over a shared element set."""

from typing import Hashable, Mapping

import numpy as np
from sklearn.metrics import (
    adjusted_mutual_info_score,
    adjusted_rand_score,
    normalized_mutual_info_score,
)

from src.core.errors import MetricError

Clustering = Mapping[Hashable, Hashable]


def aligned_labels(a: Clustering, b: Clustering) -> tuple[list, list]:
    """
    Labels of both clusterings over their common, sorted element set.

    Raises:
        MetricError: If the element sets differ or are empty.
    """
    if a.keys() != b.keys():
        missing = len(a.keys() ^ b.keys())
        raise MetricError(f"Partitions cover different elements ({missing} not shared).")
    if not a:
        raise MetricError("Partitions have no elements.")
    elements = sorted(a)
    return [a[e] for e in elements], [b[e] for e in elements]


def _encoded(labels: list) -> np.ndarray:
    """Integer codes of hashable labels, so mixed label types are safe for sklearn."""
    codes: dict[Hashable, int] = {}
    return np.array([codes.setdefault(label, len(codes)) for label in labels], dtype=np.int64)


def nmi(a: Clustering, b: Clustering) -> float:
    """Normalized mutual information, arithmetic-mean normalization."""
    x, y = aligned_labels(a, b)
    return float(normalized_mutual_info_score(_encoded(x), _encoded(y), average_method="arithmetic"))


def ami(a: Clustering, b: Clustering) -> float:
    """Adjusted mutual information, arithmetic-mean normalization."""
    x, y = aligned_labels(a, b)
    return float(adjusted_mutual_info_score(_encoded(x), _encoded(y), average_method="arithmetic"))


def ari(a: Clustering, b: Clustering) -> float:
    """Adjusted Rand index."""
    x, y = aligned_labels(a, b)
    return float(adjusted_rand_score(_encoded(x), _encoded(y)))


SCORES = {"nmi": nmi, "ami": ami, "ari": ari}
