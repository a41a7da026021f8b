"""Edge-parsing engine: sorted edge consumption over a union-find of components,
producing interned encoding multisets.

One run processes every edge once. Each merge combines the encodings of the
two endpoint components (or one component with itself) through the injective
combiner, then shifts every h-value in the first component by the fresh m1.
Components stay pairwise disjoint and connected throughout, and within a
component all h-values stay pairwise distinct; both facts are checkable at
runtime.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from dataclasses import dataclass, replace
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graphs import LabeledGraph
from .oracle import GuardExceeded
from .terms import (
    CEncoding,
    Child,
    TermInterner,
    serialize_encoding,
)

EDGE_MODES = ("none", "one-deg", "two-degs", "degs-and-labels")
ENDPOINT_MODES = ("random", "by-level")
VARIANTS = ("npa", "npba")

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SortConfig:
    """Everything that determines a run on a given graph.

    The seed fully determines all random tie-breaking: edge order within tie
    blocks and endpoint orientation.
    """

    edge_mode: str = "degs-and-labels"
    endpoint_mode: str = "random"
    variant: str = "npa"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.edge_mode not in EDGE_MODES:
            raise ValueError(f"edge_mode must be one of {EDGE_MODES}")
        if self.endpoint_mode not in ENDPOINT_MODES:
            raise ValueError(f"endpoint_mode must be one of {ENDPOINT_MODES}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")


@dataclass(frozen=True)
class MergeRecord:
    step: int
    oriented: Tuple[int, int]
    same_component: int
    children: Tuple[CEncoding, CEncoding]
    result: CEncoding
    level: int


@dataclass(frozen=True)
class EncodingRun:
    """Result of one engine execution.

    ``w`` holds all n+m encodings in production order (vertex encodings
    first); ``c`` holds the final-component encodings, canonically sorted,
    one per connected component. ``edge_order`` is the realized oriented
    trace, sufficient to replay the run exactly via :func:`run_ordered`.
    """

    w: Tuple[CEncoding, ...]
    c: Tuple[CEncoding, ...]
    levels: int
    edge_order: Tuple[Tuple[int, int], ...]
    merges: Tuple[MergeRecord, ...]
    variant: str
    config: Optional[SortConfig] = None

    def w_multiset(self) -> Counter:
        return Counter(self.w)

    def c_multiset(self) -> Counter:
        return Counter(self.c)

    def merge_multiset(self) -> Counter:
        """Edge-merge encodings only (vertex encodings excluded)."""
        return Counter(rec.result for rec in self.merges)


def c_multiset_key(run: EncodingRun) -> Tuple[str, ...]:
    """Canonical, cross-process key of the final-component multiset."""
    return tuple(sorted(serialize_encoding(e) for e in run.c))


def serialize_run(run: EncodingRun) -> str:
    """Line-oriented text form: edge trace, W, C, levels."""
    lines = [f"levels {run.levels}"]
    for rec in run.merges:
        va, vb = rec.oriented
        lines.append(f"edge {rec.step} {va}-{vb} b={rec.same_component}")
    for enc in run.w:
        lines.append(f"W {serialize_encoding(enc)}")
    for enc in run.c:
        lines.append(f"C {serialize_encoding(enc)}")
    return "\n".join(lines) + "\n"


class ParseState:
    """Union-find over vertices plus per-component encoding bookkeeping."""

    def __init__(self, graph: LabeledGraph, interner: TermInterner):
        self.graph = graph
        self.interner = interner
        n = graph.num_vertices
        self.parent = list(range(n))
        self.members: Dict[int, List[int]] = {v: [v] for v in range(n)}
        self.level: Dict[int, int] = {v: 0 for v in range(n)}
        self.h: List[int] = list(graph.labels)
        self.max_h: Dict[int, int] = {v: graph.labels[v] for v in range(n)}
        self.enc: Dict[int, CEncoding] = {
            v: CEncoding(interner.leaf(graph.labels[v]), 0, graph.labels[v] + 1)
            for v in range(n)
        }
        self.step = 0

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def merge_edge(self, va: int, vb: int, variant: str) -> MergeRecord:
        self.step += 1
        r1, r2 = self.find(va), self.find(vb)
        b = 1 if r1 == r2 else 0
        e1, e2 = self.enc[r1], self.enc[r2]

        m1_new = e1.m2 + e2.m2 + 1
        m2_new = 2 * e1.m2 + 2 * e2.m2 + 2
        if variant == "npa":
            # Each child tuple records its endpoint's post-merge h-value.
            # The shifted side lands strictly above m1_new and the unshifted
            # side strictly below it, so the unordered pair still identifies
            # which component absorbed the shift; recording pre-shift values
            # instead loses that bit and collapses non-isomorphic graphs
            # (e.g. a loop on a path's end vs on its middle vertex).
            c1 = Child(e1.y, self.h[va] + m1_new, e1.m1, e1.m2)
            c2 = Child(e2.y, self.h[vb] + (m1_new if b else 0), e2.m1, e2.m2)
            y = self.interner.merge(c1, c2, b)
        else:
            c1 = Child(e1.y, 0, e1.m1, e1.m2)
            c2 = Child(e2.y, 0, e2.m1, e2.m2)
            y = self.interner.merge(c1, c2, 0)
        result = CEncoding(y, m1_new, m2_new)

        if variant == "npa":
            # h shifts on the first component only; when b=1 that is the
            # whole merged component.
            h = self.h
            for w in self.members[r1]:
                h[w] += m1_new

        if b:
            root = r1
            self.level[root] = 1 + self.level[root]
            if variant == "npa":
                self.max_h[root] += m1_new
        else:
            new_level = 1 + max(self.level[r1], self.level[r2])
            shifted_max = self.max_h[r1] + (m1_new if variant == "npa" else 0)
            new_max = max(shifted_max, self.max_h[r2])
            if len(self.members[r1]) >= len(self.members[r2]):
                root, other = r1, r2
            else:
                root, other = r2, r1
            self.parent[other] = root
            self.members[root].extend(self.members.pop(other))
            self.level.pop(other)
            self.level[root] = new_level
            self.max_h.pop(other)
            self.max_h[root] = new_max
            self.enc.pop(other)
        self.enc[root] = result
        if variant == "npa":
            assert result.m2 > self.max_h[root]  # m2 dominates every h-value
        return MergeRecord(
            step=self.step,
            oriented=(va, vb),
            same_component=b,
            children=(e1, e2),
            result=result,
            level=self.level[root],
        )

    def roots(self) -> List[int]:
        return sorted(self.members)

    def check_h_unique(self) -> None:
        """Within every component all h-values must be pairwise distinct."""
        for root, members in self.members.items():
            values = {self.h[v] for v in members}
            if len(values) != len(members):
                raise AssertionError(f"duplicate h-values in component of {root}")

    def check_partition(self, processed: Sequence[Tuple[int, int]]) -> None:
        """Components must be exactly the connectivity classes of the
        processed edge prefix (hence pairwise disjoint and connected)."""
        n = self.graph.num_vertices
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in processed:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        expected: Dict[int, set] = {}
        for v in range(n):
            expected.setdefault(find(v), set()).add(v)
        actual = {frozenset(m) for m in self.members.values()}
        if actual != {frozenset(s) for s in expected.values()}:
            raise AssertionError("components diverged from edge connectivity")


def _rng_for(graph: LabeledGraph, seed: int) -> random.Random:
    payload = repr((seed & _SEED_MASK, graph.num_vertices, graph.labels, graph.edges))
    digest = hashlib.sha256(payload.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(
        (seed & _SEED_MASK).to_bytes(8, "big") + index.to_bytes(8, "big")
    ).digest()
    return int.from_bytes(digest[:8], "big")


def _sort_key(
    edge: Tuple[int, int], degrees: Sequence[int], labels: Sequence[int], mode: str
) -> Tuple[int, ...]:
    if mode == "none":
        return ()
    a, b = edge
    deg1, deg2 = sorted((degrees[a], degrees[b]), reverse=True)
    if mode == "one-deg":
        return (deg1,)
    if mode == "two-degs":
        return (deg1, deg2)
    lab1, lab2 = sorted((labels[a], labels[b]), reverse=True)
    return (deg1, deg2, lab1, lab2)


def _ordered_edges(
    graph: LabeledGraph, config: SortConfig, rng: random.Random
) -> List[Tuple[int, int]]:
    """Edges in ascending key order, ties permuted uniformly; orientation is
    drawn here for the random endpoint mode and left normalized otherwise."""
    degrees = graph.degrees()
    keyed = sorted(
        (_sort_key(e, degrees, graph.labels, config.edge_mode), rng.random(), i)
        for i, e in enumerate(graph.edges)
    )
    ordered = [graph.edges[i] for _, _, i in keyed]
    if config.endpoint_mode == "random":
        oriented = []
        for a, b in ordered:
            if a != b and rng.getrandbits(1):
                a, b = b, a
            oriented.append((a, b))
        return oriented
    return ordered


def sort_edges(graph: LabeledGraph, config: SortConfig) -> List[Tuple[int, int]]:
    """The ordered, oriented edge sequence a run with this config would use.

    For the by-level endpoint mode the orientation depends on component
    levels at processing time, so the pairs returned here keep the normalized
    orientation and the run resolves them on the fly.
    """
    return _ordered_edges(graph, config, _rng_for(graph, config.seed))


def _execute(
    graph: LabeledGraph,
    oriented_edges: Sequence[Tuple[int, int]],
    variant: str,
    interner: TermInterner,
    by_level_rng: Optional[random.Random] = None,
    config: Optional[SortConfig] = None,
    check_invariants: bool = False,
) -> EncodingRun:
    state = ParseState(graph, interner)
    w: List[CEncoding] = [state.enc[v] for v in range(graph.num_vertices)]
    trace: List[Tuple[int, int]] = []
    merges: List[MergeRecord] = []
    processed: List[Tuple[int, int]] = []
    for va, vb in oriented_edges:
        if by_level_rng is not None:
            l1 = state.level[state.find(va)]
            l2 = state.level[state.find(vb)]
            if l1 > l2 or (l1 == l2 and va != vb and by_level_rng.getrandbits(1)):
                va, vb = vb, va
        rec = state.merge_edge(va, vb, variant)
        w.append(rec.result)
        trace.append((va, vb))
        merges.append(rec)
        if check_invariants:
            processed.append((va, vb))
            state.check_partition(processed)
            if variant == "npa":
                state.check_h_unique()
    c = sorted(
        (state.enc[r] for r in state.roots()), key=serialize_encoding
    )
    levels = max((state.level[r] for r in state.roots()), default=0)
    return EncodingRun(
        w=tuple(w),
        c=tuple(c),
        levels=levels,
        edge_order=tuple(trace),
        merges=tuple(merges),
        variant=variant,
        config=config,
    )


def run(
    graph: LabeledGraph,
    config: SortConfig,
    interner: Optional[TermInterner] = None,
    check_invariants: bool = False,
) -> EncodingRun:
    """One full parsing run under a sort configuration."""
    if interner is None:
        interner = TermInterner()
    rng = _rng_for(graph, config.seed)
    oriented = _ordered_edges(graph, config, rng)
    by_level_rng = rng if config.endpoint_mode == "by-level" else None
    return _execute(
        graph,
        oriented,
        config.variant,
        interner,
        by_level_rng=by_level_rng,
        config=config,
        check_invariants=check_invariants,
    )


def run_npba(
    graph: LabeledGraph,
    config: SortConfig,
    interner: Optional[TermInterner] = None,
    check_invariants: bool = False,
) -> EncodingRun:
    """Baseline-variant run: merges ignore h-values and the same-component
    indicator, and no h updates happen. Same parsing loop otherwise."""
    return run(
        graph,
        replace(config, variant="npba"),
        interner=interner,
        check_invariants=check_invariants,
    )


def run_ordered(
    graph: LabeledGraph,
    oriented_edges: Sequence[Tuple[int, int]],
    variant: str = "npa",
    interner: Optional[TermInterner] = None,
    check_invariants: bool = False,
) -> EncodingRun:
    """Run with an explicit edge order and orientation (no randomness).

    The sequence must cover the graph's edge multiset exactly; every pair is
    taken as (v_a, v_b) literally.
    """
    norm = Counter((a, b) if a <= b else (b, a) for a, b in oriented_edges)
    if norm != Counter(graph.edges):
        raise ValueError("oriented_edges must cover the graph's edge multiset exactly")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if interner is None:
        interner = TermInterner()
    return _execute(
        graph,
        list(oriented_edges),
        variant,
        interner,
        check_invariants=check_invariants,
    )


def sample_orderings(
    graph: LabeledGraph,
    config: SortConfig,
    k: int,
    interner: Optional[TermInterner] = None,
) -> List[EncodingRun]:
    """K independent runs; run 0 uses the config seed verbatim, later runs use
    seeds derived deterministically from it."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if interner is None:
        interner = TermInterner()
    runs = []
    for i in range(k):
        seed = config.seed if i == 0 else derive_seed(config.seed, i)
        runs.append(run(graph, replace(config, seed=seed), interner=interner))
    return runs


def _orientation_choices(edge: Tuple[int, int]) -> Tuple[Tuple[int, int], ...]:
    a, b = edge
    return ((a, b),) if a == b else ((a, b), (b, a))


def iter_all_runs(
    graph: LabeledGraph,
    variant: str = "npa",
    interner: Optional[TermInterner] = None,
    guard_edges: int = 6,
) -> Iterable[EncodingRun]:
    """Every run over every edge permutation and endpoint orientation.

    This is the superset of what any sort function can realize, which is what
    makes the resulting multivalued image complete. Cost is m! * 2^m runs;
    guarded accordingly.
    """
    if graph.num_edges > guard_edges:
        raise GuardExceeded(
            f"exhaustive enumeration guard {guard_edges} exceeded: {graph.num_edges} edges"
        )
    if interner is None:
        interner = TermInterner()
    for perm in sorted(set(permutations(graph.edges))):
        for oriented in product(*(_orientation_choices(e) for e in perm)):
            yield _execute(graph, list(oriented), variant, interner)


def enumerate_encoding_class(
    graph: LabeledGraph, variant: str = "npa", guard_edges: int = 6
) -> set:
    """The complete multivalued image of the graph's isomorphism class:
    the set of final-component multisets over all orderings, keyed
    canonically. Isomorphic graphs yield identical sets."""
    return {
        c_multiset_key(r)
        for r in iter_all_runs(graph, variant=variant, guard_edges=guard_edges)
    }
