"""Labeled multigraph data model, edge-list text format, and TUDataset ingestion."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple


class GraphFormatError(ValueError):
    """Raised when a graph file or text representation is malformed."""


def _norm(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected multigraph with positive-integer vertex labels.

    Vertices are 0-indexed. ``edges`` is a multiset of unordered index pairs,
    stored as a sorted tuple of (low, high) pairs; self-loops and parallel
    edges are allowed. A self-loop contributes 2 to its vertex degree.
    """

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.num_vertices
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(self.labels) != n:
            raise ValueError(f"expected {n} labels, got {len(self.labels)}")
        for l in self.labels:
            if l < 1:
                raise ValueError(f"labels must be >= 1, got {l}")
        norm = tuple(sorted(_norm(a, b) for a, b in self.edges))
        for a, b in norm:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range for {n} vertices")
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def size(self) -> int:
        """Vertex count + edge count + largest label."""
        return self.num_vertices + self.num_edges + max(self.labels)

    def degrees(self) -> List[int]:
        deg = [0] * self.num_vertices
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1  # for a loop both increments hit the same vertex
        return deg

    def edge_multiplicities(self) -> Counter:
        return Counter(self.edges)

    def permuted(self, perm: Sequence[int]) -> "LabeledGraph":
        """Relabel vertices: old index v becomes perm[v]."""
        if sorted(perm) != list(range(self.num_vertices)):
            raise ValueError("perm must be a permutation of the vertex indices")
        labels = [0] * self.num_vertices
        for v, l in enumerate(self.labels):
            labels[perm[v]] = l
        edges = tuple(_norm(perm[a], perm[b]) for a, b in self.edges)
        return LabeledGraph(self.num_vertices, edges, tuple(labels))

    def num_components(self) -> int:
        parent = list(range(self.num_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in range(self.num_vertices)})


def parse_edge_list(text: str) -> LabeledGraph:
    """Parse the one-line edge-list format.

    Format: ``n=<int> labels=<l0>,...,<l{n-1}> e=<a>-<b>[,<a>-<b>...]``.
    Repeated pairs denote parallel edges; ``a`` = ``b`` denotes a self-loop.
    Blank lines and ``#`` comment lines around the payload are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 1:
        raise GraphFormatError(f"expected exactly one graph line, found {len(lines)}")
    fields = lines[0].split()
    if len(fields) != 3:
        raise GraphFormatError(f"expected 3 fields 'n= labels= e=', got {len(fields)}")

    def _value(field: str, prefix: str) -> str:
        if not field.startswith(prefix):
            raise GraphFormatError(f"expected field starting with '{prefix}', got {field!r}")
        return field[len(prefix):]

    try:
        n = int(_value(fields[0], "n="))
    except ValueError as exc:
        raise GraphFormatError(f"bad vertex count: {fields[0]!r}") from exc

    raw_labels = _value(fields[1], "labels=")
    try:
        labels = tuple(int(tok) for tok in raw_labels.split(",")) if raw_labels else ()
    except ValueError as exc:
        raise GraphFormatError(f"bad label list: {raw_labels!r}") from exc

    raw_edges = _value(fields[2], "e=")
    edges: List[Tuple[int, int]] = []
    if raw_edges:
        for tok in raw_edges.split(","):
            parts = tok.split("-")
            if len(parts) != 2:
                raise GraphFormatError(f"bad edge token: {tok!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise GraphFormatError(f"bad edge token: {tok!r}") from exc
            edges.append((a, b))
    try:
        return LabeledGraph(n, tuple(edges), labels)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def serialize_edge_list(graph: LabeledGraph) -> str:
    """Inverse of :func:`parse_edge_list`; edges emitted in canonical order."""
    labels = ",".join(str(l) for l in graph.labels)
    edges = ",".join(f"{a}-{b}" for a, b in graph.edges)
    return f"n={graph.num_vertices} labels={labels} e={edges}"


def _read_int_lines(path: Path, tokens_per_line: int) -> List[Tuple[int, ...]]:
    rows: List[Tuple[int, ...]] = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            toks = [t.strip() for t in line.split(",")]
            if len(toks) != tokens_per_line:
                raise GraphFormatError(
                    f"{path.name}:{lineno}: expected {tokens_per_line} values, got {len(toks)}"
                )
            try:
                rows.append(tuple(int(t) for t in toks))
            except ValueError as exc:
                raise GraphFormatError(f"{path.name}:{lineno}: non-integer token") from exc
    return rows


def load_tudataset(directory, dataset_name: str) -> List[Tuple[LabeledGraph, int]]:
    """Load a dataset in the TU Dortmund text format.

    Expects ``<name>_A.txt`` (comma-separated 1-indexed arcs, one line per
    directed arc; symmetric duplicates collapsed to one undirected edge),
    ``<name>_graph_indicator.txt`` and ``<name>_graph_labels.txt``;
    ``<name>_node_labels.txt`` is optional (uniform label 1 when absent).
    Node labels are shifted by +1 when the raw minimum is 0.
    """
    directory = Path(directory)
    paths = {
        "A": directory / f"{dataset_name}_A.txt",
        "indicator": directory / f"{dataset_name}_graph_indicator.txt",
        "graph_labels": directory / f"{dataset_name}_graph_labels.txt",
    }
    for kind, p in paths.items():
        if not p.is_file():
            raise GraphFormatError(f"missing mandatory file: {p}")

    indicator = [row[0] for row in _read_int_lines(paths["indicator"], 1)]
    if not indicator:
        raise GraphFormatError(f"{paths['indicator'].name}: empty graph indicator")
    graph_classes = [row[0] for row in _read_int_lines(paths["graph_labels"], 1)]

    graph_ids = sorted(set(indicator))
    if len(graph_classes) != len(graph_ids):
        raise GraphFormatError(
            f"{paths['graph_labels'].name}: {len(graph_classes)} classes for {len(graph_ids)} graphs"
        )
    gindex = {gid: i for i, gid in enumerate(graph_ids)}

    # Per-graph local vertex numbering, in global-index order.
    local: Dict[int, int] = {}
    counts = [0] * len(graph_ids)
    vertex_graph = []
    for v, gid in enumerate(indicator):
        gi = gindex[gid]
        local[v] = counts[gi]
        counts[gi] += 1
        vertex_graph.append(gi)

    node_labels_path = directory / f"{dataset_name}_node_labels.txt"
    if node_labels_path.is_file():
        raw = [row[0] for row in _read_int_lines(node_labels_path, 1)]
        if len(raw) != len(indicator):
            raise GraphFormatError(
                f"{node_labels_path.name}: {len(raw)} labels for {len(indicator)} vertices"
            )
        if min(raw) == 0:
            raw = [l + 1 for l in raw]
        node_labels = raw
    else:
        node_labels = [1] * len(indicator)

    arc_counts: List[Counter] = [Counter() for _ in graph_ids]
    with paths["A"].open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            toks = [t.strip() for t in line.split(",")]
            if len(toks) != 2:
                raise GraphFormatError(f"{paths['A'].name}:{lineno}: expected 2 values")
            try:
                u, v = int(toks[0]) - 1, int(toks[1]) - 1
            except ValueError as exc:
                raise GraphFormatError(f"{paths['A'].name}:{lineno}: non-integer token") from exc
            if not (0 <= u < len(indicator) and 0 <= v < len(indicator)):
                raise GraphFormatError(f"{paths['A'].name}:{lineno}: vertex index out of range")
            if vertex_graph[u] != vertex_graph[v]:
                raise GraphFormatError(
                    f"{paths['A'].name}:{lineno}: edge crosses graph boundary"
                )
            arc_counts[vertex_graph[u]][_norm(local[u], local[v])] += 1

    out: List[Tuple[LabeledGraph, int]] = []
    for gi in range(len(graph_ids)):
        n = counts[gi]
        edges: List[Tuple[int, int]] = []
        for (a, b), c in sorted(arc_counts[gi].items()):
            # Non-loop arcs appear once per direction; loops once per loop.
            mult = (c + 1) // 2 if a != b else c
            edges.extend([(a, b)] * mult)
        labels = tuple(
            node_labels[v] for v in range(len(indicator)) if vertex_graph[v] == gi
        )
        try:
            out.append((LabeledGraph(n, tuple(edges), labels), graph_classes[gi]))
        except ValueError as exc:
            raise GraphFormatError(f"graph {graph_ids[gi]}: {exc}") from exc
    return out
