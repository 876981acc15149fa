//! Uniform hypergraphs: the host object of every computation.
//!
//! Vertices are `0..n`. Edges are stored as ascending vertex lists and the
//! edge list itself is sorted lexicographically, so two hypergraphs with the
//! same labeled edge set compare equal. The adjacency tensor is never
//! materialized; each edge stands for the `m!` tensor entries equal to
//! `1/(m-1)!`.

mod build;
mod canon;
mod trees;

pub use build::{attach, coalesce, hyperpath, hyperstar, power, single_edge, AttachSpec};
pub use canon::{canonical_form, canonical_hypergraph, canonical_id};
pub use trees::enumerate_hypertrees;

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct UniformHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<VertexId>>,
}

/// Wire form: `{"m": int, "n": int, "edges": [[int, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<VertexId>>,
}

impl TryFrom<RawHypergraph> for UniformHypergraph {
    type Error = Error;
    fn try_from(raw: RawHypergraph) -> Result<Self> {
        UniformHypergraph::new(raw.m, raw.n, raw.edges)
    }
}

impl From<UniformHypergraph> for RawHypergraph {
    fn from(h: UniformHypergraph) -> Self {
        RawHypergraph {
            m: h.m,
            n: h.n,
            edges: h.edges,
        }
    }
}

impl UniformHypergraph {
    /// Validates and canonicalizes an edge list.
    pub fn new(m: usize, n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("uniformity m = {m} must be at least 2")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("a hypergraph needs at least one vertex".into()));
        }
        let mut seen = BTreeSet::new();
        for edge in edges {
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let set: BTreeSet<VertexId> = edge.iter().copied().collect();
            if set.len() != m || edge.len() != m {
                return Err(Error::NonUniformEdge {
                    edge,
                    expected: m,
                    found: set.len(),
                });
            }
            let sorted: Vec<VertexId> = set.into_iter().collect();
            if !seen.insert(sorted.clone()) {
                return Err(Error::DuplicateEdge(sorted));
            }
        }
        Ok(Self {
            m,
            n,
            edges: seen.into_iter().collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None) == 1
    }

    /// Number of connected components after deleting `removed` from the
    /// vertex set and from every edge through it.
    fn components_without(&self, removed: Option<VertexId>) -> usize {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            let kept: Vec<VertexId> = e.iter().copied().filter(|&v| Some(v) != removed).collect();
            for w in kept.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        (0..self.n)
            .filter(|&v| Some(v) != removed)
            .map(|v| uf.find(v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// A vertex whose deletion leaves more components.
    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        v < self.n && self.n > 1 && self.components_without(Some(v)) > self.components_without(None)
    }

    /// Connected and acyclic: `n - 1 = |E| (m - 1)`.
    pub fn is_hypertree(&self) -> bool {
        self.is_connected() && self.n - 1 == self.edges.len() * (self.m - 1)
    }

    /// Applies `perm[old] = new` to every vertex.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length differs from n".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Self::new(self.m, self.n, edges)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_graph() {
        let h = UniformHypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(h.is_connected());
        assert!(!h.is_hypertree());
    }

    #[test]
    fn single_three_edge() {
        let h = UniformHypergraph::new(3, 3, vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);
        assert!(h.is_hypertree());
    }

    #[test]
    fn repeated_vertex_is_non_uniform() {
        let err = UniformHypergraph::new(3, 3, vec![vec![0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NonUniformEdge { found: 2, .. }));
        let err = UniformHypergraph::new(3, 4, vec![vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NonUniformEdge { found: 2, .. }));
    }

    #[test]
    fn duplicates_and_range() {
        let err = UniformHypergraph::new(2, 3, vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(_)));
        let err = UniformHypergraph::new(2, 3, vec![vec![0, 3]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert!(UniformHypergraph::new(1, 3, vec![]).is_err());
        assert!(UniformHypergraph::new(2, 0, vec![]).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let h = hyperpath(3, 2).unwrap();
        let s = h.to_json();
        assert_eq!(s, r#"{"m":3,"n":5,"edges":[[0,1,2],[2,3,4]]}"#);
        assert_eq!(UniformHypergraph::from_json(&s).unwrap(), h);
        assert!(UniformHypergraph::from_json(r#"{"m":3,"n":3,"edges":[[0,1,1]]}"#).is_err());
    }

    #[test]
    fn cut_vertices() {
        let p = hyperpath(3, 2).unwrap();
        assert!(p.is_cut_vertex(2));
        assert!(!p.is_cut_vertex(0));
        assert!(!p.is_cut_vertex(3));
    }
}
