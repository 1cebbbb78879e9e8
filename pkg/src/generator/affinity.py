"""Latent affinity of node pairs, computed on demand from a keyed hash."""

import numpy as np

from src.core.errors import GenerationError
from src.core.types import NodeId

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_UNIT = 2.0**-53


def _splitmix64(x: np.ndarray) -> np.ndarray:
    """Finalizer of the splitmix64 generator, applied element-wise (wrapping uint64)."""
    z = x + _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX_1
    z = (z ^ (z >> _S27)) * _MIX_2
    return z ^ (z >> _S31)


class AffinityOracle:
    """
    Symmetric latent affinity in [0, 1) for every pair of distinct nodes.

    Values come from a keyed hash of (seed, min(u, v), max(u, v)), so nothing quadratic
    in the number of nodes is ever stored.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._key = _splitmix64(np.array([seed % 2**64], dtype=np.uint64))[0]

    def many(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Affinities of the pairs (us[i], vs[i]). Pairs must be of distinct nodes."""
        us = np.asarray(us, dtype=np.uint64)
        vs = np.asarray(vs, dtype=np.uint64)
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        h = _splitmix64(_splitmix64(lo ^ self._key) ^ hi)
        return (h >> _S11).astype(np.float64) * _UNIT

    def __call__(self, u: NodeId, v: NodeId) -> float:
        if u == v:
            raise GenerationError(f"Affinity is undefined for the pair ({u}, {v}).")
        return float(self.many(np.array([u]), np.array([v]))[0])
