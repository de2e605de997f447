//! Exhaustive classical answers used as ground truth.

use std::collections::HashMap;

use itertools::Itertools;

use super::Graph;
use crate::error::{Error, Result};
use crate::numkernel::hermitian_eigen;

/// Largest graph handled by [`classical_isomorphic`].
pub const ISOMORPHISM_MAX_N: usize = 10;
/// Largest graph handled by [`densest_k_subgraph_bruteforce`].
pub const DENSEST_MAX_N: usize = 20;
/// Largest graph handled by [`count_perfect_matchings_bruteforce`].
pub const MATCHING_MAX_N: usize = 16;
/// Eigenvalue tolerance for [`is_isospectral`].
pub const SPECTRUM_TOL: f64 = 1e-8;

/// Stable vertex colors from iterated degree refinement, computed jointly so
/// colors are comparable across the two graphs.
fn refine_colors(g1: &Graph, g2: &Graph) -> (Vec<usize>, Vec<usize>) {
    let adj = [g1.neighbors(), g2.neighbors()];
    let mut colors = [vec![0usize; g1.n()], vec![0usize; g2.n()]];
    let mut classes = 1;
    loop {
        let mut palette: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut keyed: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
        for side in 0..2 {
            keyed.push(
                (0..colors[side].len())
                    .map(|v| {
                        let mut around: Vec<usize> = adj[side][v].iter().map(|&u| colors[side][u]).collect();
                        around.sort_unstable();
                        (colors[side][v], around)
                    })
                    .collect(),
            );
        }
        // sorted keys give colors that do not depend on vertex order
        let mut all: Vec<&(usize, Vec<usize>)> = keyed.iter().flatten().collect();
        all.sort();
        all.dedup();
        for (i, key) in all.into_iter().enumerate() {
            palette.insert(key.clone(), i);
        }
        let next = [
            keyed[0].iter().map(|k| palette[k]).collect::<Vec<_>>(),
            keyed[1].iter().map(|k| palette[k]).collect::<Vec<_>>(),
        ];
        let count = palette.len();
        colors = next;
        if count == classes {
            return (colors[0].clone(), colors[1].clone());
        }
        classes = count;
    }
}

/// Exact isomorphism test. On success returns `pi` with
/// `g2.adjacency() == g1.adjacency().permute_symmetric(&pi)`, i.e. vertex `i`
/// of `g2` corresponds to vertex `pi[i]` of `g1`.
pub fn classical_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g1.n();
    if n != g2.n() {
        return Ok(None);
    }
    if n > ISOMORPHISM_MAX_N {
        return Err(Error::SizeLimit {
            what: "isomorphism search",
            n,
            limit: ISOMORPHISM_MAX_N,
        });
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let (c1, c2) = refine_colors(g1, g2);
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return Ok(None);
    }
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g1, g2, &c1, &c2, 0, &mut pi, &mut used).then_some(pi))
}

fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    i: usize,
    pi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == pi.len() {
        return true;
    }
    for candidate in 0..pi.len() {
        if used[candidate] || c1[candidate] != c2[i] {
            continue;
        }
        if (0..i).any(|j| g2.has_edge(i, j) != g1.has_edge(candidate, pi[j])) {
            continue;
        }
        pi[i] = candidate;
        used[candidate] = true;
        if extend(g1, g2, c1, c2, i + 1, pi, used) {
            return true;
        }
        used[candidate] = false;
    }
    pi[i] = usize::MAX;
    false
}

/// Sorted adjacency spectrum.
pub fn adjacency_spectrum(g: &Graph) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(&g.adjacency())?.values)
}

/// Equal adjacency spectra within [`SPECTRUM_TOL`].
pub fn is_isospectral(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    let s1 = adjacency_spectrum(g1)?;
    let s2 = adjacency_spectrum(g2)?;
    Ok(s1.iter().zip(&s2).all(|(a, b)| (a - b).abs() <= SPECTRUM_TOL))
}

/// Densest induced `k`-vertex subgraph by exhaustive search; the first
/// maximum in lexicographic order wins.
pub fn densest_k_subgraph_bruteforce(g: &Graph, k: usize) -> Result<(Vec<usize>, usize)> {
    densest_k_subgraph_containing(g, k, &[])
}

/// As [`densest_k_subgraph_bruteforce`] but only over subsets that contain
/// every vertex in `anchors`.
pub fn densest_k_subgraph_containing(g: &Graph, k: usize, anchors: &[usize]) -> Result<(Vec<usize>, usize)> {
    let n = g.n();
    if n > DENSEST_MAX_N {
        return Err(Error::SizeLimit {
            what: "densest subgraph search",
            n,
            limit: DENSEST_MAX_N,
        });
    }
    if k == 0 || k > n {
        return Err(Error::Domain(format!("subset size {k} outside 1..={n}")));
    }
    let candidates = anchored_subsets(n, k, anchors)?;
    let mut best: Option<(Vec<usize>, usize)> = None;
    for subset in candidates {
        let e = g.induced_edge_count(&subset);
        if best.as_ref().is_none_or(|(_, b)| e > *b) {
            best = Some((subset, e));
        }
    }
    best.ok_or_else(|| Error::Domain("no subset satisfies the anchors".into()))
}

/// All sorted `k`-subsets of `0..n` containing `anchors`, in lexicographic
/// order.
pub fn anchored_subsets(n: usize, k: usize, anchors: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut fixed = anchors.to_vec();
    fixed.sort_unstable();
    fixed.dedup();
    if fixed.len() != anchors.len() {
        return Err(Error::Domain("anchor vertices repeat".into()));
    }
    if let Some(&v) = fixed.iter().find(|&&v| v >= n) {
        return Err(Error::Domain(format!("anchor {v} out of range for {n} vertices")));
    }
    if fixed.len() > k {
        return Err(Error::Domain(format!("{} anchors exceed subset size {k}", fixed.len())));
    }
    let free: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
    let mut subsets: Vec<Vec<usize>> = free
        .into_iter()
        .combinations(k - fixed.len())
        .map(|rest| {
            let mut s: Vec<usize> = fixed.iter().copied().chain(rest).collect();
            s.sort_unstable();
            s
        })
        .collect();
    subsets.sort();
    Ok(subsets)
}

/// Number of perfect matchings; 0 for odd `n`.
pub fn count_perfect_matchings_bruteforce(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MATCHING_MAX_N {
        return Err(Error::SizeLimit {
            what: "perfect matching count",
            n,
            limit: MATCHING_MAX_N,
        });
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let adj = g.neighbors();
    let mut matched = vec![false; n];
    Ok(count_matchings(&adj, &mut matched))
}

fn count_matchings(adj: &[Vec<usize>], matched: &mut [bool]) -> u64 {
    let Some(u) = matched.iter().position(|&m| !m) else {
        return 1;
    };
    matched[u] = true;
    let mut total = 0;
    for &v in &adj[u] {
        if !matched[v] {
            matched[v] = true;
            total += count_matchings(adj, matched);
            matched[v] = false;
        }
    }
    matched[u] = false;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphlib::erdos_renyi;

    fn c4_plus_k1() -> Graph {
        Graph::cycle(4).disjoint_union(&Graph::empty(1))
    }

    #[test]
    fn relabeled_graph_is_isomorphic() {
        let g = erdos_renyi(8, 0.5, 11).unwrap();
        let pi = vec![5, 2, 7, 0, 1, 6, 3, 4];
        let h = g.relabel(&pi).unwrap();
        let found = classical_isomorphic(&g, &h).unwrap().expect("isomorphic");
        assert_eq!(h.adjacency(), g.adjacency().permute_symmetric(&found));
    }

    #[test]
    fn k3_vs_p3() {
        assert!(classical_isomorphic(&Graph::complete(3), &Graph::path(3)).unwrap().is_none());
        assert!(!is_isospectral(&Graph::complete(3), &Graph::path(3)).unwrap());
    }

    #[test]
    fn cospectral_non_isomorphic_pair() {
        let a = c4_plus_k1();
        let b = Graph::star(5);
        assert!(is_isospectral(&a, &b).unwrap());
        assert!(classical_isomorphic(&a, &b).unwrap().is_none());
    }

    #[test]
    fn regular_graphs_need_search() {
        // C6 and two triangles: both 2-regular, refinement cannot separate them
        let c6 = Graph::cycle(6);
        let tt = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(classical_isomorphic(&c6, &tt).unwrap().is_none());
        assert!(classical_isomorphic(&c6, &c6.relabel(&[2, 4, 0, 1, 5, 3]).unwrap()).unwrap().is_some());
    }

    #[test]
    fn size_limit_enforced() {
        assert!(classical_isomorphic(&Graph::empty(11), &Graph::empty(11)).is_err());
        assert!(classical_isomorphic(&Graph::empty(3), &Graph::empty(4)).unwrap().is_none());
    }

    #[test]
    fn densest_examples() {
        assert_eq!(densest_k_subgraph_bruteforce(&Graph::complete(5), 3).unwrap(), (vec![0, 1, 2], 3));
        assert_eq!(densest_k_subgraph_bruteforce(&Graph::star(5), 3).unwrap().1, 2);
        let (s, e) = densest_k_subgraph_containing(&Graph::star(5), 2, &[3]).unwrap();
        assert_eq!((s, e), (vec![0, 3], 1));
        assert!(densest_k_subgraph_bruteforce(&Graph::empty(21), 2).is_err());
    }

    #[test]
    fn anchored_subset_listing() {
        let s = anchored_subsets(5, 3, &[2]).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|c| c.contains(&2)));
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(anchored_subsets(5, 1, &[0, 1]).is_err());
    }

    #[test]
    fn matching_counts() {
        assert_eq!(count_perfect_matchings_bruteforce(&Graph::complete_bipartite(3, 3)).unwrap(), 6);
        assert_eq!(count_perfect_matchings_bruteforce(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(count_perfect_matchings_bruteforce(&Graph::path(3)).unwrap(), 0);
        assert_eq!(count_perfect_matchings_bruteforce(&Graph::complete(6)).unwrap(), 15);
    }
}
