"""Tests for latent affinities."""

import numpy as np
import pytest
from scipy import stats

from src.core.errors import GenerationError
from src.generator.affinity import AffinityOracle


def test_symmetric_and_seeded():
    """Affinity ignores pair orientation and depends on the seed."""
    oracle = AffinityOracle(3)
    assert oracle(2, 9) == oracle(9, 2)
    assert oracle(2, 9) == AffinityOracle(3)(2, 9)
    assert oracle(2, 9) != AffinityOracle(4)(2, 9)


def test_range():
    """Values lie in [0, 1)."""
    us, vs = np.triu_indices(200, k=1)
    values = AffinityOracle(0).many(us, vs)
    assert values.min() >= 0
    assert values.max() < 1


def test_uniformity():
    """Affinities of distinct pairs pass a Kolmogorov-Smirnov test against U(0, 1)."""
    us, vs = np.triu_indices(300, k=1)
    values = AffinityOracle(11).many(us, vs)
    assert stats.kstest(values, "uniform").pvalue > 0.001


def test_vectorized_matches_scalar():
    """Batch and single lookups agree."""
    oracle = AffinityOracle(5)
    us, vs = np.array([0, 4, 7]), np.array([1, 2, 30])
    assert oracle.many(us, vs).tolist() == [oracle(0, 1), oracle(4, 2), oracle(7, 30)]


def test_self_pair_rejected():
    """A node has no affinity with itself."""
    with pytest.raises(GenerationError):
        AffinityOracle(0)(4, 4)
