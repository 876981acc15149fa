//! Directed multigraphs, arborescence counts and Euler-circuit counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::det::bareiss_determinant;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{UnionFind, VertexId};
use crate::rational::factorial;

/// Loopless directed multigraph over a subset of host vertices.
///
/// `arcs[i][j]` is the multiplicity of `vertices[i] -> vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedMultigraph {
    vertices: Vec<VertexId>,
    arcs: Vec<Vec<u64>>,
}

/// Euler circuits are counted with parallel arcs distinguished; a tour is a
/// circuit with a chosen first arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCountReport {
    #[serde(with = "crate::rational::serde_bigint")]
    pub circuits: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub tours: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub arborescences: BigInt,
}

impl DirectedMultigraph {
    /// Vertex set taken from the arc endpoints, sorted.
    pub fn from_arcs(arcs: &[(VertexId, VertexId, u64)]) -> Result<Self> {
        let mut vertices: Vec<VertexId> = arcs
            .iter()
            .filter(|a| a.2 > 0)
            .flat_map(|&(u, w, _)| [u, w])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut g = Self::with_vertices(vertices);
        for &(u, w, c) in arcs {
            if c == 0 {
                continue;
            }
            if u == w {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            g.add_arcs(u, w, c);
        }
        Ok(g)
    }

    pub(crate) fn with_vertices(vertices: Vec<VertexId>) -> Self {
        let k = vertices.len();
        Self {
            vertices,
            arcs: vec![vec![0; k]; k],
        }
    }

    pub(crate) fn local(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn add_arcs(&mut self, u: VertexId, w: VertexId, c: u64) {
        let (i, j) = (self.local(u).unwrap(), self.local(w).unwrap());
        self.arcs[i][j] += c;
    }

    /// `t` copies of the complete bidirected digraph on `m` vertices.
    pub fn complete_bidirected(m: usize, t: u64) -> Self {
        let mut g = Self::with_vertices((0..m).collect());
        for u in 0..m {
            for w in 0..m {
                if u != w {
                    g.arcs[u][w] = t;
                }
            }
        }
        g
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn multiplicity(&self, u: VertexId, w: VertexId) -> u64 {
        match (self.local(u), self.local(w)) {
            (Some(i), Some(j)) => self.arcs[i][j],
            _ => 0,
        }
    }

    fn out_local(&self, i: usize) -> u64 {
        self.arcs[i].iter().sum()
    }

    fn in_local(&self, j: usize) -> u64 {
        self.arcs.iter().map(|row| row[j]).sum()
    }

    pub fn out_degree(&self, v: VertexId) -> u64 {
        self.local(v).map_or(0, |i| self.out_local(i))
    }

    pub fn in_degree(&self, v: VertexId) -> u64 {
        self.local(v).map_or(0, |j| self.in_local(j))
    }

    pub fn arc_count(&self) -> u64 {
        self.arcs.iter().flatten().sum()
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.vertices.len()).all(|i| self.out_local(i) == self.in_local(i))
    }

    /// Weak connectivity; together with balance this is strong connectivity.
    pub fn is_connected(&self) -> bool {
        let k = self.vertices.len();
        let mut uf = UnionFind::new(k);
        for i in 0..k {
            for j in 0..k {
                if self.arcs[i][j] > 0 {
                    uf.union(i, j);
                }
            }
        }
        (0..k).all(|i| uf.find(i) == uf.find(0))
    }

    fn check_eulerian(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if self.arc_count() == 0 {
            return Err(Error::NotEulerian("no arcs".into()));
        }
        if !self.is_balanced() {
            return Err(Error::NotEulerian("in-degree differs from out-degree".into()));
        }
        if !self.is_connected() {
            return Err(Error::NotEulerian("not connected".into()));
        }
        Ok(())
    }

    /// Number of spanning arborescences oriented towards `root`: the minor of
    /// `diag(out-degree) - A` with the root row and column removed.
    pub fn arborescence_count(&self, root: VertexId) -> Result<BigInt> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let r = self
            .local(root)
            .ok_or_else(|| Error::InvalidParameter(format!("root {root} is not a vertex of the digraph")))?;
        let idx: Vec<usize> = (0..self.vertices.len()).filter(|&i| i != r).collect();
        let minor = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| {
                        let a = BigInt::from(self.arcs[i][j]);
                        if i == j {
                            BigInt::from(self.out_local(i)) - a
                        } else {
                            -a
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(bareiss_determinant(minor))
    }

    /// Euler circuits by the BEST theorem: `tau * prod (d+(v) - 1)!`.
    pub fn euler_circuits_best(&self) -> Result<EulerCountReport> {
        self.check_eulerian()?;
        let tau = self.arborescence_count(self.vertices[0])?;
        let mut circuits = tau.clone();
        for i in 0..self.vertices.len() {
            circuits *= factorial(self.out_local(i) - 1);
        }
        Ok(EulerCountReport {
            tours: &circuits * BigInt::from(self.arc_count()),
            circuits,
            arborescences: tau,
        })
    }

    /// Euler circuits by backtracking: fix one labeled first arc and count
    /// the labeled completions. Parallel arcs are interchangeable, so each
    /// step branches on the target vertex weighted by the remaining
    /// multiplicity.
    pub fn euler_circuits_exhaustive(&self, budget: &Budget) -> Result<BigInt> {
        let arcs = self.arc_count();
        if arcs > budget.max_exhaustive_arcs {
            return Err(Error::LimitExceeded(format!(
                "exhaustive circuit count over {arcs} arcs (limit {})",
                budget.max_exhaustive_arcs
            )));
        }
        self.check_eulerian()?;
        let start = 0;
        let first = (0..self.vertices.len())
            .find(|&j| self.arcs[start][j] > 0)
            .expect("Eulerian vertices have out-arcs");
        let mut left = self.arcs.clone();
        left[start][first] -= 1;
        Ok(walk(&mut left, first, start, arcs - 1))
    }
}

fn walk(left: &mut [Vec<u64>], at: usize, home: usize, remaining: u64) -> BigInt {
    if remaining == 0 {
        return if at == home { BigInt::one() } else { BigInt::zero() };
    }
    let mut total = BigInt::zero();
    for next in 0..left.len() {
        let c = left[at][next];
        if c == 0 {
            continue;
        }
        left[at][next] -= 1;
        let sub = walk(left, next, home, remaining - 1);
        left[at][next] += 1;
        if !sub.is_zero() {
            total += sub * c;
        }
    }
    total
}
