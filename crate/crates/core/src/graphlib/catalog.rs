//! Small named graphs used in tests and examples.

use super::Graph;

/// `K_5` on vertices `0..5` plus vertex 5 joined only to vertex 1.
/// `Per(A) = 9`.
pub fn k5_with_pendant() -> Graph {
    let mut g = Graph::complete(5).disjoint_union(&Graph::empty(1));
    g.add_edge(1, 5).expect("valid edge");
    g
}

/// `K_9` on vertices `0..9` plus vertex 9 joined to vertices 1 and 2.
/// Scaling row 9 of the adjacency matrix raises the post-selection
/// probability several-fold.
pub fn k9_with_degree_two_vertex() -> Graph {
    let mut g = Graph::complete(9).disjoint_union(&Graph::empty(1));
    g.add_edge(1, 9).expect("valid edge");
    g.add_edge(2, 9).expect("valid edge");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::permanent_integer;

    #[test]
    fn pendant_graph_permanent() {
        let g = k5_with_pendant();
        assert_eq!(g.degrees(), vec![4, 5, 4, 4, 4, 1]);
        assert_eq!(permanent_integer(&g.adjacency_rows()).unwrap(), 9);
    }

    #[test]
    fn degree_two_graph_shape() {
        let g = k9_with_degree_two_vertex();
        assert_eq!(g.edge_count(), 36 + 2);
        assert_eq!(g.degrees()[9], 2);
    }
}
