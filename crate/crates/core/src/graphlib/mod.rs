//! Graphs, random generators, and exhaustive classical oracles.

mod bound;
mod catalog;
mod graph;
mod oracles;

pub use bound::perm_upper_bound;
pub use catalog::{k5_with_pendant, k9_with_degree_two_vertex};
pub use graph::{
    erdos_renyi, erdos_renyi_with, invert_permutation, random_permutation, random_tree, random_tree_with,
    tree_from_prufer, Graph,
};
pub use oracles::{
    adjacency_spectrum, anchored_subsets, classical_isomorphic, count_perfect_matchings_bruteforce,
    densest_k_subgraph_bruteforce, densest_k_subgraph_containing, is_isospectral, DENSEST_MAX_N,
    ISOMORPHISM_MAX_N, MATCHING_MAX_N, SPECTRUM_TOL,
};
