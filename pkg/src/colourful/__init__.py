"""Exact solvers, kernelizations and instance generators for colourful
partitions and colourful components of vertex-coloured graphs.

A block is *colourful* when its vertices have pairwise-distinct colours and
induce a connected subgraph.  The partition problem asks for the fewest
blocks covering the graph; the components problem asks for the fewest edge
deletions after which every connected component is colourful.
"""

from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    exact_tree_decomposition,
    normalize_for_2cp,
    parse_td,
    serialize_td,
    to_nice,
)
from .fpt import (
    dp_components,
    dp_partition,
    solve_partition_nonunique,
    solve_partition_vc,
)
from .gadgets import (
    gen_example1,
    is_bipartite,
    is_split,
    is_tree,
    k4_with_edge_colouring,
    max_degree,
    reduce_3sat_split,
    reduce_multicut_tree,
    reduce_nae3sat_pathwidth,
    reduce_vc,
    vc_witness_deletions,
    vc_witness_partition,
)
from .graph import (
    ColouredGraph,
    Edge,
    EdgeSet,
    ParseError,
    Partition,
    SolveResult,
    UnsupportedInstanceError,
    canonical_partition,
    colour_multiplicity,
    connected_components,
    crossing_edges,
    is_colourful_graph,
    is_colourful_partition,
    is_colourful_set,
    is_valid_deletion_set,
    norm_edge,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .oracle import (
    brute_max_matching,
    brute_min_deletions,
    brute_min_deletions_partitions,
    brute_min_partition,
    brute_multicut,
    brute_nae_sat,
    brute_sat,
    brute_vertex_cover,
    find_two_partition,
    tree_min_deletions,
    tree_multicut,
)
from .polysolvers import (
    TwoSatFormula,
    build_phi,
    hopcroft_karp,
    solve_2cp_treewidth2,
    solve_two_coloured,
    two_sat_solve,
)

__all__ = [
    "ColouredGraph",
    "Edge",
    "EdgeSet",
    "NiceTreeDecomposition",
    "ParseError",
    "Partition",
    "SolveResult",
    "TreeDecomposition",
    "TwoSatFormula",
    "UnsupportedInstanceError",
    "brute_max_matching",
    "brute_min_deletions",
    "brute_min_deletions_partitions",
    "brute_min_partition",
    "brute_multicut",
    "brute_nae_sat",
    "brute_sat",
    "brute_vertex_cover",
    "build_phi",
    "canonical_partition",
    "colour_multiplicity",
    "connected_components",
    "crossing_edges",
    "dp_components",
    "dp_partition",
    "exact_tree_decomposition",
    "find_two_partition",
    "gen_example1",
    "hopcroft_karp",
    "is_bipartite",
    "is_colourful_graph",
    "is_colourful_partition",
    "is_colourful_set",
    "is_split",
    "is_tree",
    "is_valid_deletion_set",
    "k4_with_edge_colouring",
    "max_degree",
    "norm_edge",
    "normalize_for_2cp",
    "parse_instance",
    "parse_solution",
    "parse_td",
    "reduce_3sat_split",
    "reduce_multicut_tree",
    "reduce_nae3sat_pathwidth",
    "reduce_vc",
    "serialize_instance",
    "serialize_solution",
    "serialize_td",
    "solve_2cp_treewidth2",
    "solve_partition_nonunique",
    "solve_partition_vc",
    "solve_two_coloured",
    "to_nice",
    "tree_min_deletions",
    "tree_multicut",
    "two_sat_solve",
    "vc_witness_deletions",
    "vc_witness_partition",
]

__version__ = "0.1.0"
