use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`. An optional two-coloring can be
/// attached; it is validated against the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    bipartition: Option<Vec<bool>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
            bipartition: None,
        }
    }

    /// Builds a graph from 0-indexed edges, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self loop at vertex {u}")));
            }
            if !g.edges.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for u in 0..n {
                let v = (u + 1) % n;
                g.edges.insert((u.min(v), u.max(v)));
            }
        } else if n == 2 {
            g.edges.insert((0, 1));
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.edges.insert((u - 1, u));
        }
        g
    }

    /// Star on `n` vertices with center 0.
    pub fn star(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.edges.insert((0, v));
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.edges.insert((u, v));
            }
        }
        g.bipartition = Some((0..a + b).map(|v| v >= a).collect());
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let mut g = self.clone();
        g.n += other.n;
        g.bipartition = None;
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidGraph(format!("cannot add edge ({u}, {v})")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn bipartition(&self) -> Option<&[bool]> {
        self.bipartition.as_deref()
    }

    /// Attaches a two-coloring; every edge must join different colors.
    pub fn with_bipartition(mut self, sides: Vec<bool>) -> Result<Self> {
        if sides.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "bipartition has {} labels for {} vertices",
                sides.len(),
                self.n
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| sides[u] == sides[v]) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) inside one side of the bipartition")));
        }
        self.bipartition = Some(sides);
        Ok(self)
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0.into();
            a[(v, u)] = 1.0.into();
        }
        a
    }

    /// `D - A`.
    pub fn laplacian(&self) -> ComplexMatrix {
        let mut l = self.adjacency().scale_real(-1.0);
        for (v, d) in self.degrees().into_iter().enumerate() {
            l[(v, v)] = (d as f64).into();
        }
        l
    }

    /// Adjacency as integer rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// Graph whose vertex `i` is this graph's vertex `pi[i]`, so that
    /// `relabel(pi).adjacency() == adjacency().permute_symmetric(pi)`.
    pub fn relabel(&self, pi: &[usize]) -> Result<Self> {
        let inverse = invert_permutation(pi, self.n)?;
        let mut g = Self::empty(self.n);
        for &(u, v) in &self.edges {
            let (a, b) = (inverse[u], inverse[v]);
            g.edges.insert((a.min(b), a.max(b)));
        }
        if let Some(sides) = &self.bipartition {
            g.bipartition = Some(pi.iter().map(|&p| sides[p]).collect());
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.edges.insert((i, j));
                }
            }
        }
        g
    }

    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut count = 0;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                count += usize::from(self.has_edge(u, v));
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Proper two-coloring if one exists (vertex 0 of each component gets
    /// `false`).
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.neighbors();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u]?;
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        color.into_iter().collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

/// Inverse of a permutation of `0..n`, validating it on the way.
pub fn invert_permutation(pi: &[usize], n: usize) -> Result<Vec<usize>> {
    if pi.len() != n {
        return Err(Error::Domain(format!("permutation has length {}, expected {n}", pi.len())));
    }
    let mut inverse = vec![usize::MAX; n];
    for (i, &p) in pi.iter().enumerate() {
        if p >= n || inverse[p] != usize::MAX {
            return Err(Error::Domain(format!("{pi:?} is not a permutation of 0..{n}")));
        }
        inverse[p] = i;
    }
    Ok(inverse)
}

/// Uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    pi
}

/// `G(n, p)`: each of the `n(n-1)/2` pairs, in lexicographic order, is an
/// edge with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    erdos_renyi_with(n, p, &mut rng)
}

pub fn erdos_renyi_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain("graph needs at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.edges.insert((u, v));
            }
        }
    }
    Ok(g)
}

/// Uniform labeled tree on `n >= 2` vertices decoded from a random Prüfer
/// sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Domain("a tree needs at least two vertices".into()));
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Ok(tree_from_prufer(n, &code))
}

/// Decodes a Prüfer sequence (entries in `0..n`, length `n - 2`).
pub fn tree_from_prufer(n: usize, code: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut g = Graph::empty(n);
    for &c in code {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        g.edges.insert((leaf.min(c), leaf.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    g.edges.insert((u, v));
    g
}

/// On-disk graph: 1-indexed edge list.
#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bipartition: Option<Vec<u8>>,
}

impl Graph {
    /// Parses `{"n": .., "edges": [[u, v], ..]}` with 1-indexed vertices and
    /// an optional `"bipartition"` array of 0/1 side labels.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(s)?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for [u, v] in file.edges {
            if u == 0 || v == 0 {
                return Err(Error::InvalidGraph("vertices are 1-indexed; found 0".into()));
            }
            edges.push((u - 1, v - 1));
        }
        let g = Self::from_edges(file.n, &edges)?;
        match file.bipartition {
            None => Ok(g),
            Some(labels) => {
                if labels.iter().any(|&l| l > 1) {
                    return Err(Error::InvalidGraph("bipartition labels must be 0 or 1".into()));
                }
                g.with_bipartition(labels.into_iter().map(|l| l == 1).collect())
            }
        }
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
            bipartition: self
                .bipartition
                .as_ref()
                .map(|s| s.iter().map(|&b| u8::from(b)).collect()),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Parses a square 0/1 adjacency matrix, one comma-separated row per line.
    #[allow(clippy::needless_range_loop)]
    pub fn from_adjacency_csv(s: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(s.as_bytes());
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let row = record
                .iter()
                .map(|field| match field {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(Error::InvalidGraph(format!("adjacency entry {other:?} is not 0 or 1"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGraph("empty adjacency matrix".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidGraph(format!("row {} has {} entries, expected {n}", r + 1, rows[r].len())));
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(Error::InvalidGraph(format!("self loop at vertex {}", i + 1)));
            }
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidGraph(format!("adjacency not symmetric at ({}, {})", i + 1, j + 1)));
                }
                if rows[i][j] == 1 {
                    g.edges.insert((i, j));
                }
            }
        }
        Ok(g)
    }

    pub fn to_adjacency_csv(&self) -> String {
        let a = self.adjacency_rows();
        let mut out = String::new();
        for row in a {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_matrices() {
        let g = Graph::complete(3);
        let a = g.adjacency();
        let l = g.laplacian();
        for i in 0..3 {
            for j in 0..3 {
                let expected_a = if i == j { 0.0 } else { 1.0 };
                assert_eq!(a[(i, j)].re, expected_a);
                assert_eq!(l[(i, j)].re, if i == j { 2.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn edgeless_and_path() {
        let g = Graph::empty(4);
        assert_eq!(g.adjacency().max_abs(), 0.0);
        assert_eq!(g.laplacian().max_abs(), 0.0);
        let l = Graph::path(3).laplacian();
        assert_eq!([l[(0, 0)].re, l[(1, 1)].re, l[(2, 2)].re], [1.0, 2.0, 1.0]);
        for i in 0..3 {
            let s: f64 = (0..3).map(|j| l[(i, j)].re).sum();
            assert_eq!(s, 0.0);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::path(3).with_bipartition(vec![false, false, true]).is_err());
    }

    #[test]
    fn er_extremes_and_determinism() {
        assert_eq!(erdos_renyi(6, 1.0, 1).unwrap(), Graph::complete(6));
        assert_eq!(erdos_renyi(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(8, 0.5, 77).unwrap(), erdos_renyi(8, 0.5, 77).unwrap());
        assert!(erdos_renyi(3, 1.5, 0).is_err());
        assert!(erdos_renyi(0, 0.5, 0).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..50 {
            let t = random_tree(5 + (seed as usize % 4), seed).unwrap();
            assert_eq!(t.edge_count(), t.n() - 1);
            assert!(t.is_connected());
        }
        assert_eq!(random_tree(2, 0).unwrap().edge_count(), 1);
        assert!(random_tree(1, 0).is_err());
    }

    #[test]
    fn prufer_known_code() {
        // code (3, 3, 3, 4) on 6 vertices: a star around 3 plus edge 4-5
        let t = tree_from_prufer(6, &[3, 3, 3, 4]);
        let edges: Vec<_> = t.edges().collect();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn relabel_matches_permute_symmetric() {
        let g = erdos_renyi(7, 0.5, 3).unwrap();
        let pi = vec![3, 0, 6, 1, 5, 2, 4];
        let h = g.relabel(&pi).unwrap();
        assert_eq!(h.adjacency(), g.adjacency().permute_symmetric(&pi));
        assert_eq!(h.laplacian(), g.laplacian().permute_symmetric(&pi));
        assert!(g.relabel(&[0, 0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn bipartite_detection() {
        assert!(Graph::cycle(4).is_bipartite());
        assert!(!Graph::complete(3).is_bipartite());
        let c = Graph::complete_bipartite(2, 3).two_coloring().unwrap();
        assert_eq!(c.iter().filter(|&&b| b).count(), 3);
    }

    #[test]
    fn json_round_trip_is_one_indexed() {
        let g = Graph::from_json(r#"{"n": 3, "edges": [[1, 2], [2, 3]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n": 3, "edges": [[0, 1]]}"#).is_err());
        assert!(Graph::from_json(r#"{"n": 3, "edges": [[1, 1]]}"#).is_err());
        let b = Graph::complete_bipartite(1, 2);
        assert_eq!(Graph::from_json(&b.to_json()).unwrap().bipartition(), b.bipartition());
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let g = Graph::cycle(5);
        assert_eq!(Graph::from_adjacency_csv(&g.to_adjacency_csv()).unwrap(), g);
        assert!(Graph::from_adjacency_csv("0,1\n0,0\n").is_err());
        assert!(Graph::from_adjacency_csv("1,0\n0,0\n").is_err());
        assert!(Graph::from_adjacency_csv("0,2\n2,0\n").is_err());
        assert!(Graph::from_adjacency_csv("0,1,0\n1,0\n").is_err());
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::complete(5);
        assert_eq!(g.induced_edge_count(&[0, 2, 4]), 3);
        assert_eq!(Graph::star(5).induced(&[0, 1, 2]).edge_count(), 2);
    }
}
