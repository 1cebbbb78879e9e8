"""Punctual random rewiring of a snapshot."""

import itertools
import math
from typing import Sequence

import numpy as np

from src.core.types import Edge, Snapshot, edge
from src.utils.log_utils import setup_logger

log = setup_logger(__name__)

# rejection sampling is used while absent pairs outnumber the draws this many times
_REJECTION_RATIO = 4


def _absent_pairs(
    rng: np.random.Generator, nodes: np.ndarray, edges: frozenset[Edge], k: int
) -> list[Edge]:
    """Draw `k` distinct pairs of distinct nodes that are not in `edges`."""
    n = len(nodes)
    absent_total = n * (n - 1) // 2 - len(edges)
    if absent_total >= _REJECTION_RATIO * k:
        chosen: set[Edge] = set()
        picks: list[Edge] = []
        while len(picks) < k:
            i, j = rng.integers(0, n, size=2)
            if i == j:
                continue
            pair = edge(int(nodes[i]), int(nodes[j]))
            if pair in edges or pair in chosen:
                continue
            chosen.add(pair)
            picks.append(pair)
        return picks
    candidates = [
        (int(u), int(v)) for u, v in itertools.combinations(nodes, 2) if (u, v) not in edges
    ]
    index = rng.choice(len(candidates), size=min(k, len(candidates)), replace=False)
    return [candidates[i] for i in sorted(index)]


def apply_noise(snapshot: Snapshot, beta_r: float, step_seed: int | Sequence[int]) -> Snapshot:
    """
    Replace floor(beta_r * |E|) random edges by random absent pairs.

    The edge count is preserved unless the graph has too few absent pairs, in which case
    the missing replacements are skipped with a warning.

    Args:
        snapshot (Snapshot): The snapshot to rewire.
        beta_r (float): Fraction of edges to rewire.
        step_seed (int | Sequence[int]): Seed of this step's random draws.

    Returns:
        Snapshot: A new snapshot with the same nodes.
    """
    edges = sorted(snapshot.edges)
    k = math.floor(beta_r * len(edges))
    if k == 0:
        return snapshot
    rng = np.random.default_rng(step_seed)
    removed = {edges[i] for i in rng.choice(len(edges), size=k, replace=False)}
    nodes = np.array(sorted(snapshot.nodes), dtype=np.int64)
    added = _absent_pairs(rng, nodes, snapshot.edges, k)
    if len(added) < k:
        log.warning(
            "Step %s: only %s absent pairs for %s rewired edges, %s replacements skipped.",
            snapshot.step, len(added), k, k - len(added),
        )
    return Snapshot(snapshot.step, snapshot.nodes, (snapshot.edges - removed) | set(added))
