"""Deterministic edge selection inside one block or between two blocks."""

from typing import Iterable, Iterator, Optional

import numpy as np

from src.core.types import Edge, NodeId
from src.generator.affinity import AffinityOracle
from src.generator.density import round_half_up

# pairs scored per chunk; bounds memory to O(chunk + q)
CHUNK_PAIRS = 1 << 18


def _pair_chunks(a: np.ndarray, b: Optional[np.ndarray]) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield candidate pairs in row blocks: i < j inside `a`, or every (a, b) pair."""
    rows: list[tuple[np.ndarray, np.ndarray]] = []
    size = 0
    for i, u in enumerate(a):
        vs = a[i + 1 :] if b is None else b
        if len(vs) == 0:
            continue
        rows.append((np.full(len(vs), u, dtype=np.int64), vs))
        size += len(vs)
        if size >= CHUNK_PAIRS:
            yield np.concatenate([r[0] for r in rows]), np.concatenate([r[1] for r in rows])
            rows, size = [], 0
    if rows:
        yield np.concatenate([r[0] for r in rows]), np.concatenate([r[1] for r in rows])


def top_pairs(
    oracle: AffinityOracle, nodes_a: Iterable[NodeId], nodes_b: Optional[Iterable[NodeId]], q: int
) -> frozenset[Edge]:
    """
    The `q` candidate pairs of highest affinity.

    Ties are broken by the pair itself, so the result only depends on the node sets and
    the oracle seed.

    Args:
        oracle (AffinityOracle): Latent affinities.
        nodes_a (Iterable[NodeId]): First block.
        nodes_b (Iterable[NodeId] | None): Second block, or None for pairs inside `nodes_a`.
        q (int): Number of pairs to keep.

    Returns:
        frozenset[Edge]: Canonical pairs.
    """
    a = np.array(sorted(nodes_a), dtype=np.int64)
    b = None if nodes_b is None else np.array(sorted(nodes_b), dtype=np.int64)
    if q <= 0 or len(a) == 0 or (b is not None and len(b) == 0):
        return frozenset()

    best_u = np.empty(0, dtype=np.int64)
    best_v = np.empty(0, dtype=np.int64)
    best_s = np.empty(0, dtype=np.float64)
    for us, vs in _pair_chunks(a, b):
        lo, hi = np.minimum(us, vs), np.maximum(us, vs)
        best_u = np.concatenate([best_u, lo])
        best_v = np.concatenate([best_v, hi])
        best_s = np.concatenate([best_s, oracle.many(lo, hi)])
        if len(best_s) > q:
            order = np.lexsort((best_v, best_u, -best_s))[:q]
            best_u, best_v, best_s = best_u[order], best_v[order], best_s[order]
    return frozenset(zip(best_u.tolist(), best_v.tolist()))


class BlockEdges:
    """Intra- and inter-block edge sets, cached by node set."""

    def __init__(self, oracle: AffinityOracle, max_cached: int = 1 << 16):
        self.oracle = oracle
        self.max_cached = max_cached
        self._cache: dict[tuple, frozenset[Edge]] = {}

    def _lookup(self, key: tuple, a, b, q: int) -> frozenset[Edge]:
        if key not in self._cache:
            if len(self._cache) >= self.max_cached:
                self._cache.clear()
            self._cache[key] = top_pairs(self.oracle, a, b, q)
        return self._cache[key]

    def intra(self, nodes: frozenset[NodeId], count: int) -> frozenset[Edge]:
        """The `count` most affine pairs inside `nodes`."""
        if count <= 0 or len(nodes) < 2:
            return frozenset()
        return self._lookup((nodes, None, count), nodes, None, count)

    def inter(
        self, nodes_a: frozenset[NodeId], nodes_b: frozenset[NodeId], target_fraction: float
    ) -> frozenset[Edge]:
        """round(target_fraction * |A| * |B|) most affine pairs between two disjoint blocks."""
        q = round_half_up(target_fraction * len(nodes_a) * len(nodes_b))
        if q <= 0:
            return frozenset()
        a, b = sorted((nodes_a, nodes_b), key=min)
        return self._lookup((a, b, q), a, b, q)

    def clear(self):
        """Drop every cached block."""
        self._cache.clear()
