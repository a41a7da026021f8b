"""Consumers of encoding runs: isomorphism verdicts, shared-subgraph bounds,
subgraph-class detection, and class-redundancy statistics."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import (
    SortConfig,
    c_multiset_key,
    derive_seed,
    enumerate_encoding_class,
    iter_all_runs,
    run,
    _ordered_edges,
    _rng_for,
    _sort_key,
)
from .graphs import LabeledGraph
from .oracle import GuardExceeded
from .terms import TermInterner, serialize_encoding

EXHAUSTIVE_EDGE_GUARD = 5

ISOMORPHIC = "isomorphic"
NON_ISOMORPHIC = "non-isomorphic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of an isomorphism test.

    ``isomorphic`` is only issued on exact term-multiset equality (hence
    certified); ``non-isomorphic`` only from exhaustive enumeration within
    the guard. Sampling never produces a false negative, only ``unknown``.
    """

    status: str
    witness: Optional[Tuple[str, ...]] = None
    samples_tried: int = 0

    @property
    def exit_code(self) -> int:
        return {ISOMORPHIC: 0, NON_ISOMORPHIC: 1, UNKNOWN: 2}[self.status]


def iso_test(
    g: LabeledGraph,
    h: LabeledGraph,
    k: int = 5,
    config: Optional[SortConfig] = None,
    guard_edges: int = EXHAUSTIVE_EDGE_GUARD,
) -> IsoVerdict:
    """Decide isomorphism exactly when both graphs fit the exhaustive guard,
    otherwise compare K sampled runs from each side."""
    if config is None:
        config = SortConfig()
    if g.num_edges <= guard_edges and h.num_edges <= guard_edges:
        set_g = enumerate_encoding_class(g, variant="npa", guard_edges=guard_edges)
        set_h = enumerate_encoding_class(h, variant="npa", guard_edges=guard_edges)
        common = set_g & set_h
        if common:
            return IsoVerdict(ISOMORPHIC, witness=min(common))
        return IsoVerdict(NON_ISOMORPHIC)

    interner = TermInterner()
    keys_g = set()
    keys_h = set()
    for i in range(k):
        seed = config.seed if i == 0 else derive_seed(config.seed, i)
        cfg = replace(config, seed=seed, variant="npa")
        keys_g.add(c_multiset_key(run(g, cfg, interner=interner)))
        keys_h.add(c_multiset_key(run(h, cfg, interner=interner)))
        common = keys_g & keys_h
        if common:
            return IsoVerdict(ISOMORPHIC, witness=min(common), samples_tried=i + 1)
    return IsoVerdict(UNKNOWN, samples_tried=k)


def shared_subgraph_bound(
    g: LabeledGraph,
    h: LabeledGraph,
    k: int = 1,
    config: Optional[SortConfig] = None,
) -> int:
    """Certified lower bound on the number of shared subgraphs.

    Maximum over K seed-paired runs of the multiset-intersection size of the
    two full encoding multisets; every matched element certifies one
    isomorphic shared subgraph.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if config is None:
        config = SortConfig()
    interner = TermInterner()
    best = 0
    for i in range(k):
        seed = config.seed if i == 0 else derive_seed(config.seed, i)
        cfg = replace(config, seed=seed)
        wg = run(g, cfg, interner=interner).w_multiset()
        wh = run(h, cfg, interner=interner).w_multiset()
        best = max(best, sum((wg & wh).values()))
    return best


def _distinct_w_multisets(
    graph: LabeledGraph, interner: TermInterner, guard_edges: int
) -> List[Counter]:
    seen: Dict[Tuple[str, ...], Counter] = {}
    for r in iter_all_runs(graph, variant="npa", interner=interner, guard_edges=guard_edges):
        w = r.w_multiset()
        key = tuple(sorted(serialize_encoding(e) for e in r.w))
        seen.setdefault(key, w)
    return list(seen.values())


def detect_subgraph_class(
    s: LabeledGraph, g: LabeledGraph, guard_edges: int = 5
) -> bool:
    """True iff some run of ``g`` contains some run of ``s`` as a sub-multiset
    of encodings, which certifies (and exactly characterizes, over all
    orderings) that ``g`` has a subgraph isomorphic to ``s``."""
    if g.num_edges > guard_edges:
        raise GuardExceeded(
            f"subgraph detection guard {guard_edges} exceeded: {g.num_edges} edges"
        )
    if s.num_edges > g.num_edges or s.num_vertices > g.num_vertices:
        return False
    if Counter(s.labels) - Counter(g.labels):
        return False  # vertex encodings alone cannot be covered
    interner = TermInterner()
    candidates_s = _distinct_w_multisets(s, interner, guard_edges)
    candidates_g = _distinct_w_multisets(g, interner, guard_edges)
    for ws in candidates_s:
        for wg in candidates_g:
            if not ws - wg:
                return True
    return False


@dataclass(frozen=True)
class RedundancyReport:
    """Upper-bound statistics on how many distinct outputs one isomorphism
    class can receive under a sort configuration."""

    log10_edge_orders: float
    log10_orientation_factor: float
    levels: int

    def to_dict(self) -> Dict[str, float]:
        return {
            "log10_edge_orders": self.log10_edge_orders,
            "log10_orientation_factor": self.log10_orientation_factor,
            "levels": self.levels,
        }

    def to_text(self) -> str:
        return (
            f"log10_edge_orders {self.log10_edge_orders:.4f}\n"
            f"log10_orientation_factor {self.log10_orientation_factor:.4f}\n"
            f"levels {self.levels}\n"
        )


def _log10_factorial(t: int) -> float:
    return math.lgamma(t + 1) / math.log(10.0)


def redundancy_report(graph: LabeledGraph, config: SortConfig) -> RedundancyReport:
    """Tie-block analysis of the sorted edge sequence.

    Within each maximal equal-key block, edges are grouped by transitive
    overlap of their endpoint components as of the block start; only the
    order within a group affects the output, so the edge-order count is the
    product of group-size factorials. The orientation factor counts 2 per
    cross-component edge inside tie blocks. Groups are frozen at block start,
    which can overcount slightly when merges inside a block link previously
    disjoint groups; the result is still an upper bound.
    """
    degrees = graph.degrees()
    rng = _rng_for(graph, config.seed)
    ordered = _ordered_edges(graph, config, rng)
    keys = [
        _sort_key((min(a, b), max(a, b)), degrees, graph.labels, config.edge_mode)
        for a, b in ordered
    ]

    parent = list(range(graph.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    log_orders = 0.0
    p = 0
    i = 0
    m = len(ordered)
    while i < m:
        j = i
        while j < m and keys[j] == keys[i]:
            j += 1
        block = ordered[i:j]
        roots = [(find(a), find(b)) for a, b in block]
        p += sum(1 for ra, rb in roots if ra != rb)
        # Transitive interaction groups over the block's endpoint components.
        scratch: Dict[int, int] = {}

        def sfind(x: int) -> int:
            scratch.setdefault(x, x)
            while scratch[x] != x:
                scratch[x] = scratch[scratch[x]]
                x = scratch[x]
            return x

        for ra, rb in roots:
            sa, sb = sfind(ra), sfind(rb)
            if sa != sb:
                scratch[sa] = sb
        sizes = Counter(sfind(ra) for ra, _ in roots)
        for t in sizes.values():
            log_orders += _log10_factorial(t)
        for a, b in block:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        i = j

    levels = run(graph, config).levels
    return RedundancyReport(
        log10_edge_orders=log_orders,
        log10_orientation_factor=p * math.log10(2.0),
        levels=levels,
    )


def dataset_stats(
    graphs: Sequence[LabeledGraph], config: SortConfig
) -> Dict[str, float]:
    """Aggregate redundancy statistics over a graph collection.

    Per-graph runs are seeded deterministically from the config seed and the
    graph's position.
    """
    graphs = list(graphs)
    if not graphs:
        raise ValueError("dataset_stats requires a non-empty collection")
    orders: List[float] = []
    levels: List[int] = []
    for idx, g in enumerate(graphs):
        cfg = replace(config, seed=derive_seed(config.seed, idx))
        rep = redundancy_report(g, cfg)
        orders.append(rep.log10_edge_orders)
        levels.append(rep.levels)
    return {
        "count": len(graphs),
        "median_log10_edge_orders": statistics.median(orders),
        "mean_levels": statistics.fmean(levels),
    }
