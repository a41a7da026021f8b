"""Brute-force ground truth for small instances: isomorphism, subgraphs, canonical forms.

Everything here is deliberately independent of the encoding machinery so it
can serve as an oracle against it.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Set, Tuple

from .graphs import LabeledGraph


class GuardExceeded(ValueError):
    """Raised when an instance is too large for a brute-force routine."""


def _vertex_profiles(g: LabeledGraph) -> List[Tuple[int, int, int]]:
    """(label, degree, loop count) per vertex; an isomorphism invariant."""
    deg = g.degrees()
    loops = [0] * g.num_vertices
    for a, b in g.edges:
        if a == b:
            loops[a] += 1
    return [(g.labels[v], deg[v], loops[v]) for v in range(g.num_vertices)]


def are_isomorphic_bruteforce(g: LabeledGraph, h: LabeledGraph, guard: int = 10) -> bool:
    """Decide isomorphism by backtracking over label/degree-compatible maps.

    Exact for multigraphs (edge multiplicities must match). Refuses instances
    with more than ``guard`` vertices rather than running unbounded.
    """
    if g.num_vertices > guard or h.num_vertices > guard:
        raise GuardExceeded(
            f"instance exceeds brute-force vertex guard {guard}: "
            f"{g.num_vertices} vs {h.num_vertices} vertices"
        )
    if g.num_vertices != h.num_vertices or g.num_edges != h.num_edges:
        return False
    pg, ph = _vertex_profiles(g), _vertex_profiles(h)
    if sorted(pg) != sorted(ph):
        return False

    mult_g = g.edge_multiplicities()
    mult_h = h.edge_multiplicities()
    n = g.num_vertices
    # Most-constrained (rarest profile, then highest degree) vertices first.
    freq = Counter(pg)
    order = sorted(range(n), key=lambda v: (freq[pg[v]], -pg[v][1], v))
    candidates = [[w for w in range(n) if ph[w] == pg[v]] for v in order]

    mapping: List[Optional[int]] = [None] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in candidates[i]:
            if used[w]:
                continue
            ok = True
            for u in order[:i]:
                mu = mapping[u]
                if mult_g[_key(v, u)] != mult_h[_key(w, mu)]:
                    ok = False
                    break
            if ok and mult_g[(v, v)] == mult_h[(w, w)]:
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                mapping[v] = None
                used[w] = False
        return False

    return extend(0)


def _key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def canonical_form(g: LabeledGraph, guard: int = 8) -> Tuple:
    """Minimum representation over all vertex permutations.

    Two graphs are isomorphic iff their canonical forms are equal. Intended
    for tiny graphs (catalog building, dedup); cost is n! permutations.
    """
    if g.num_vertices > guard:
        raise GuardExceeded(f"canonical_form guard {guard} exceeded: {g.num_vertices} vertices")
    best = None
    for perm in permutations(range(g.num_vertices)):
        labels = [0] * g.num_vertices
        for v, l in enumerate(g.labels):
            labels[perm[v]] = l
        edges = tuple(sorted(_key(perm[a], perm[b]) for a, b in g.edges))
        cand = (g.num_vertices, tuple(labels), edges)
        if best is None or cand < best:
            best = cand
    return best


def contains_subgraph(g: LabeledGraph, s: LabeledGraph, guard: int = 10) -> bool:
    """True iff some subgraph of ``g`` is isomorphic to ``s``.

    A subgraph is any vertex subset plus an edge sub-multiset whose endpoints
    lie in the subset, so the test reduces to finding a label-preserving
    injection with sufficient edge multiplicities.
    """
    if g.num_vertices > guard or s.num_vertices > guard:
        raise GuardExceeded(f"contains_subgraph vertex guard {guard} exceeded")
    if s.num_vertices > g.num_vertices or s.num_edges > g.num_edges:
        return False
    mult_g = g.edge_multiplicities()
    mult_s = s.edge_multiplicities()
    deg_g = g.degrees()
    deg_s = s.degrees()
    n_s = s.num_vertices
    order = sorted(range(n_s), key=lambda v: -deg_s[v])
    candidates = [
        [
            w
            for w in range(g.num_vertices)
            if g.labels[w] == s.labels[v]
            and deg_g[w] >= deg_s[v]
            and mult_g[(w, w)] >= mult_s[(v, v)]
        ]
        for v in order
    ]

    mapping: List[Optional[int]] = [None] * n_s
    used = [False] * g.num_vertices

    def extend(i: int) -> bool:
        if i == n_s:
            return True
        v = order[i]
        for w in candidates[i]:
            if used[w]:
                continue
            ok = True
            for u in order[:i]:
                if mult_s[_key(v, u)] > mult_g[_key(w, mapping[u])]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                mapping[v] = None
                used[w] = False
        return False

    return extend(0)


def iter_subgraphs(g: LabeledGraph, guard_edges: int = 6) -> Iterator[LabeledGraph]:
    """Yield every concrete subgraph of ``g`` (as a reindexed graph).

    Enumerates all nonempty vertex subsets crossed with all edge sub-multisets
    supported on the subset. Exponential; guarded by edge count.
    """
    if g.num_edges > guard_edges:
        raise GuardExceeded(f"iter_subgraphs edge guard {guard_edges} exceeded")
    mult = sorted(g.edge_multiplicities().items())
    n = g.num_vertices
    for r in range(1, n + 1):
        for subset in combinations(range(n), r):
            inside = set(subset)
            reindex = {v: i for i, v in enumerate(subset)}
            labels = tuple(g.labels[v] for v in subset)
            avail = [((a, b), c) for (a, b), c in mult if a in inside and b in inside]
            for choice in _iter_multiplicity_choices(avail):
                edges = tuple(
                    (reindex[a], reindex[b]) for (a, b), c in choice for _ in range(c)
                )
                yield LabeledGraph(r, edges, labels)


def _iter_multiplicity_choices(avail):
    if not avail:
        yield ()
        return
    (pair, cap), rest = avail[0], avail[1:]
    for tail in _iter_multiplicity_choices(rest):
        for c in range(cap + 1):
            yield ((pair, c),) + tail if c else tail


def subgraph_class_counts(g: LabeledGraph, guard_edges: int = 6) -> Counter:
    """Multiplicity of each subgraph isomorphism class (by canonical form)."""
    return Counter(canonical_form(s) for s in iter_subgraphs(g, guard_edges))


def count_shared_subgraphs(g: LabeledGraph, h: LabeledGraph, guard_edges: int = 6) -> int:
    """Number of concrete subgraphs of ``g`` isomorphic to some subgraph of ``h``."""
    classes_g = subgraph_class_counts(g, guard_edges)
    classes_h: Set[Tuple] = set(subgraph_class_counts(h, guard_edges))
    return sum(c for form, c in classes_g.items() if form in classes_h)
