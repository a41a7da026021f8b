"""1-WL color refinement baseline."""

from __future__ import annotations

import hashlib
from collections import Counter
from typing import Dict, List, Optional

from .graphs import LabeledGraph

WlHistogram = Dict[str, int]


def _digest(parts: str) -> str:
    return hashlib.sha256(parts.encode()).hexdigest()


def wl_refine(graph: LabeledGraph, rounds: Optional[int] = None) -> WlHistogram:
    """Histogram of stable vertex colors after 1-WL refinement.

    Runs min(rounds, stabilization) refinement rounds; ``rounds=None`` means
    the vertex count, which always suffices for stabilization. Colors are
    deterministic digest strings derived from the label and the sorted
    neighbor-color multiset, so histograms from separate calls (and separate
    graphs) are directly comparable. A self-loop contributes the vertex's own
    color twice; parallel edges contribute with multiplicity.
    """
    n = graph.num_vertices
    if rounds is None:
        rounds = n
    if rounds < 0:
        raise ValueError("rounds must be >= 0")

    neighbors: List[Counter] = [Counter() for _ in range(n)]
    for a, b in graph.edges:
        if a == b:
            neighbors[a][a] += 2
        else:
            neighbors[a][b] += 1
            neighbors[b][a] += 1

    colors = [f"l{l}" for l in graph.labels]
    distinct = len(set(colors))
    for _ in range(rounds):
        new_colors = []
        for v in range(n):
            multiset = sorted(
                c for w, mult in neighbors[v].items() for c in [colors[w]] * mult
            )
            new_colors.append(_digest(colors[v] + "|" + ",".join(multiset)))
        new_distinct = len(set(new_colors))
        if new_distinct == distinct:
            # Same class count means the partition is already stable; keep
            # the pre-round colors so stabilization depth stays comparable
            # across graphs.
            break
        colors = new_colors
        distinct = new_distinct
    return dict(Counter(colors))
