"""Edge-stream files: a dynamic graph as sorted `t u v` lines."""

import os
from pathlib import Path

from src.core.errors import FormatError
from src.core.types import DynamicGraph, Edge, NodeId, Snapshot

HEADER = "# tnet v1"
# written only when trailing snapshots have no node, so their count survives a round-trip
STEPS_PREFIX = "# steps "
PRESENCE = "N"


def write_edges(graph: DynamicGraph) -> str:
    """
    Serialize a dynamic graph.

    Every snapshot contributes its edges as `t u v` lines (u < v, sorted), followed by
    `N t u` lines for its isolated nodes.
    """
    lines = [HEADER]
    last_nonempty = max((s.step for s in graph if s.nodes), default=-1)
    if last_nonempty + 1 < len(graph):
        lines.append(f"{STEPS_PREFIX}{len(graph)}")
    for snapshot in graph:
        lines.extend(f"{snapshot.step} {u} {v}" for u, v in sorted(snapshot.edges))
        touched = {n for e in snapshot.edges for n in e}
        lines.extend(
            f"{PRESENCE} {snapshot.step} {n}" for n in sorted(snapshot.nodes - touched)
        )
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError as e:
        raise FormatError(f"{what} '{token}' is not an integer.", lineno) from e
    if value < 0:
        raise FormatError(f"{what} {value} is negative.", lineno)
    return value


def read_edges(text: str) -> DynamicGraph:
    """
    Parse an edge-stream file.

    Raises:
        FormatError: On a missing header, a malformed line, a self-loop or a repeated line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != HEADER:
        raise FormatError(f"Expected header '{HEADER}'.", 1)

    steps = 0
    nodes: dict[int, set[NodeId]] = {}
    edges: dict[int, set[Edge]] = {}
    presence: set[tuple[int, NodeId]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith(STEPS_PREFIX) and lineno == 2:
            steps = _int(line[len(STEPS_PREFIX):], lineno, "Step count")
            continue
        tokens = line.split(" ")
        if len(tokens) != 3 or any(not t for t in tokens):
            raise FormatError(f"Expected 't u v' or 'N t u', got '{line}'.", lineno)
        if tokens[0] == PRESENCE:
            t = _int(tokens[1], lineno, "Step")
            u = _int(tokens[2], lineno, "Node")
            if (t, u) in presence:
                raise FormatError(f"Node {u} is listed twice at step {t}.", lineno)
            presence.add((t, u))
            nodes.setdefault(t, set()).add(u)
            continue
        t, u, v = (_int(tok, lineno, what) for tok, what in zip(tokens, ("Step", "Node", "Node")))
        if u >= v:
            raise FormatError(f"Edge endpoints must satisfy u < v, got {u} {v}.", lineno)
        step_edges = edges.setdefault(t, set())
        if (u, v) in step_edges:
            raise FormatError(f"Edge {u} {v} is listed twice at step {t}.", lineno)
        step_edges.add((u, v))
        nodes.setdefault(t, set()).update((u, v))

    steps = max(steps, max(nodes, default=-1) + 1)
    return DynamicGraph(
        tuple(
            Snapshot(t, frozenset(nodes.get(t, ())), frozenset(edges.get(t, ())))
            for t in range(steps)
        )
    )


def load_edges(path: str | os.PathLike) -> DynamicGraph:
    """Read an edge-stream file from disk."""
    return read_edges(Path(path).read_text(encoding="utf-8"))
