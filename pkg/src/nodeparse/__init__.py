"""Exact isomorphism-injective multigraph encodings via edge parsing."""

from .analysis import (
    IsoVerdict,
    RedundancyReport,
    dataset_stats,
    detect_subgraph_class,
    iso_test,
    redundancy_report,
    shared_subgraph_bound,
)
from .engine import (
    EncodingRun,
    ParseState,
    SortConfig,
    c_multiset_key,
    enumerate_encoding_class,
    run,
    run_npba,
    run_ordered,
    sample_orderings,
    serialize_run,
    sort_edges,
)
from .graphs import (
    GraphFormatError,
    LabeledGraph,
    load_tudataset,
    parse_edge_list,
    serialize_edge_list,
)
from .oracle import (
    GuardExceeded,
    are_isomorphic_bruteforce,
    canonical_form,
    contains_subgraph,
    count_shared_subgraphs,
)
from .synthetic import (
    gen_erdos,
    gen_gnn_hard,
    gen_npba_hard,
    gen_random_regular,
    load_collection,
    write_collection,
)
from .terms import (
    CEncoding,
    Child,
    EncodingTerm,
    LeafTerm,
    MergeTerm,
    TermInterner,
    cantor_pair,
    eval_term_numeric,
    r_combine,
    serialize_encoding,
    serialize_term,
    sym_pair,
    term_compare,
    tuple4_pair,
)
from .wl import WlHistogram, wl_refine

__all__ = [
    "CEncoding",
    "Child",
    "EncodingRun",
    "EncodingTerm",
    "GraphFormatError",
    "GuardExceeded",
    "IsoVerdict",
    "LabeledGraph",
    "LeafTerm",
    "MergeTerm",
    "ParseState",
    "RedundancyReport",
    "SortConfig",
    "TermInterner",
    "WlHistogram",
    "are_isomorphic_bruteforce",
    "c_multiset_key",
    "canonical_form",
    "cantor_pair",
    "contains_subgraph",
    "count_shared_subgraphs",
    "dataset_stats",
    "detect_subgraph_class",
    "enumerate_encoding_class",
    "eval_term_numeric",
    "gen_erdos",
    "gen_gnn_hard",
    "gen_npba_hard",
    "gen_random_regular",
    "iso_test",
    "load_collection",
    "load_tudataset",
    "parse_edge_list",
    "r_combine",
    "redundancy_report",
    "run",
    "run_npba",
    "run_ordered",
    "sample_orderings",
    "serialize_edge_list",
    "serialize_encoding",
    "serialize_run",
    "serialize_term",
    "shared_subgraph_bound",
    "sort_edges",
    "sym_pair",
    "term_compare",
    "tuple4_pair",
    "wl_refine",
    "write_collection",
]
