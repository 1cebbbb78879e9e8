"""Density law of communities: mean degree (n_c - 1)^alpha."""

import math

from src.core.errors import GenerationError


def mean_degree(nc: int, alpha: float) -> float:
    """Mean internal degree of a community of `nc` nodes."""
    if nc < 1:
        raise GenerationError(f"Community size must be at least 1, got {nc}.")
    return float((nc - 1) ** alpha)


def internal_density(nc: int, alpha: float) -> float:
    """Fraction of internal pairs that are edges, (nc - 1)^(alpha - 1)."""
    if nc < 2:
        raise GenerationError(f"Density is undefined for a community of {nc} node(s).")
    return float((nc - 1) ** (alpha - 1))


def internal_edge_count(nc: int, alpha: float) -> int:
    """Number of internal edges, ceil(nc * (nc - 1)^alpha / 2), capped at the clique size."""
    pairs = nc * (nc - 1) // 2
    return min(math.ceil(nc * mean_degree(nc, alpha) / 2), pairs)


def external_density(total_nodes: int, alpha: float, beta: float) -> float:
    """Fraction of inter-community pairs that are edges: beta times the whole-graph density."""
    if total_nodes < 2:
        raise GenerationError(
            f"External density is undefined for a graph of {total_nodes} node(s)."
        )
    return beta * internal_density(total_nodes, alpha)


def round_half_up(x: float) -> int:
    """Round to the nearest integer, halves away from zero for non-negative input."""
    return math.floor(x + 0.5)
