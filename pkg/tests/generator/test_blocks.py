"""Tests for block edge selection."""

import itertools

import pytest

from src.generator import blocks
from src.generator.affinity import AffinityOracle
from src.generator.blocks import BlockEdges, top_pairs


@pytest.fixture(name="oracle")
def fixture_oracle() -> AffinityOracle:
    """Affinities with a fixed seed."""
    return AffinityOracle(1)


def test_top_pairs_are_most_affine(oracle: AffinityOracle):
    """The selected pairs are the q pairs of highest affinity."""
    nodes = range(12)
    selected = top_pairs(oracle, nodes, None, 10)
    ranked = sorted(itertools.combinations(nodes, 2), key=lambda p: -oracle(*p))
    assert selected == frozenset(ranked[:10])


def test_chunking_does_not_change_result(oracle: AffinityOracle, monkeypatch):
    """Selection is independent of the chunk size."""
    expected = top_pairs(oracle, range(30), range(30, 50), 37)
    monkeypatch.setattr(blocks, "CHUNK_PAIRS", 7)
    assert top_pairs(oracle, range(30), range(30, 50), 37) == expected


def test_inter_block_pairs(oracle: AffinityOracle):
    """Inter-block edges join the two blocks, in the rounded target number."""
    edges = BlockEdges(oracle).inter(frozenset(range(5)), frozenset(range(5, 9)), 0.25)
    assert len(edges) == 5
    assert all(u < 5 <= v for u, v in edges)


def test_inter_is_symmetric(oracle: AffinityOracle):
    """Block order does not matter."""
    cache = BlockEdges(oracle)
    a, b = frozenset({1, 4, 6}), frozenset({0, 2, 9, 12})
    assert cache.inter(a, b, 0.5) == cache.inter(b, a, 0.5)


def test_intra_edges(oracle: AffinityOracle):
    """Intra-block edges stay inside the block; tiny requests give nothing."""
    cache = BlockEdges(oracle)
    nodes = frozenset({3, 5, 8, 13})
    edges = cache.intra(nodes, 4)
    assert len(edges) == 4
    assert all(u in nodes and v in nodes and u < v for u, v in edges)
    assert cache.intra(frozenset({3}), 1) == frozenset()
    assert cache.intra(nodes, 0) == frozenset()


def test_cache_bounded(oracle: AffinityOracle):
    """The cache never holds more than max_cached blocks."""
    cache = BlockEdges(oracle, max_cached=2)
    for k in range(5):
        cache.intra(frozenset(range(k, k + 4)), 3)
        assert len(cache._cache) <= 2  # pylint: disable=protected-access
