//! Euler rootings of Veblen sub-multi-hypergraphs.
//!
//! A rooting is stored as an unordered root-count matrix `c[e][v]`: the
//! number of instances of edge `e` rooted at `v`. Its digraph `R(F)` overlays
//! one directed star per instance. Balance of `R(F)` at `v` reads
//! `(m-1) r(v) = deg(v) - r(v)`, i.e. `r(v) = deg(v) / m` where `deg(v)` sums
//! the multiplicities of the selected edges through `v`. The enumerator
//! therefore chooses multiplicities first, which fixes every root count, and
//! only then distributes roots inside each edge.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::digraph::DirectedMultigraph;
use crate::error::{Error, Result};
use crate::hypergraph::{UnionFind, UniformHypergraph, VertexId};
use crate::rational::{factorial, pow, ExactRational};
use crate::trace::LocalTraceQuery;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCountMatrix<'h> {
    host: &'h UniformHypergraph,
    /// `counts[e][i]` is the root count of `host.edges()[e][i]` in edge `e`.
    counts: Vec<Vec<u32>>,
    multiplicity: Vec<u32>,
    roots: Vec<u32>,
}

impl<'h> RootCountMatrix<'h> {
    /// Validates Euler balance and connectivity of the support.
    pub fn new(host: &'h UniformHypergraph, counts: Vec<Vec<u32>>) -> Result<Self> {
        if counts.len() != host.edge_count() || counts.iter().any(|row| row.len() != host.m()) {
            return Err(Error::InvalidRooting("shape differs from the host edge list".into()));
        }
        let c = Self::assemble(host, counts);
        if c.total() == 0 {
            return Err(Error::InvalidRooting("no edge instances".into()));
        }
        let deg = c.degrees();
        let m = host.m() as u32;
        if let Some(v) = (0..host.n()).find(|&v| deg[v] != m * c.roots[v]) {
            return Err(Error::InvalidRooting(format!(
                "vertex {v} is unbalanced: m * r(v) = {} but its degree is {}",
                m * c.roots[v],
                deg[v]
            )));
        }
        if !support_connected(host, &c.multiplicity) {
            return Err(Error::InvalidRooting("support is disconnected".into()));
        }
        Ok(c)
    }

    fn assemble(host: &'h UniformHypergraph, counts: Vec<Vec<u32>>) -> Self {
        let multiplicity = counts.iter().map(|row| row.iter().sum()).collect();
        let mut roots = vec![0; host.n()];
        for (e, row) in counts.iter().enumerate() {
            for (i, &c) in row.iter().enumerate() {
                roots[host.edges()[e][i]] += c;
            }
        }
        Self {
            host,
            counts,
            multiplicity,
            roots,
        }
    }

    pub fn host(&self) -> &'h UniformHypergraph {
        self.host
    }

    pub fn counts(&self) -> &[Vec<u32>] {
        &self.counts
    }

    /// `c[e][v]`; zero when `v` is not in edge `e`.
    pub fn get(&self, e: usize, v: VertexId) -> u32 {
        self.host.edges()[e]
            .iter()
            .position(|&w| w == v)
            .map_or(0, |i| self.counts[e][i])
    }

    /// `k_e`.
    pub fn multiplicity(&self, e: usize) -> u32 {
        self.multiplicity[e]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicity
    }

    /// `r(v)`.
    pub fn root_count(&self, v: VertexId) -> u32 {
        self.roots[v]
    }

    pub fn root_counts(&self) -> &[u32] {
        &self.roots
    }

    /// `d`, the number of edge instances.
    pub fn total(&self) -> usize {
        self.multiplicity.iter().map(|&k| k as usize).sum()
    }

    /// `deg(v) = sum of k_e over e containing v`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0; self.host.n()];
        for (e, &k) in self.multiplicity.iter().enumerate() {
            for &v in &self.host.edges()[e] {
                deg[v] += k;
            }
        }
        deg
    }

    pub fn support_edges(&self) -> Vec<usize> {
        (0..self.multiplicity.len()).filter(|&e| self.multiplicity[e] > 0).collect()
    }

    /// `R(F)`: arc `u -> w` has multiplicity `sum of c[e][u] over e containing u and w`.
    pub fn build_digraph(&self) -> DirectedMultigraph {
        let vertices = (0..self.host.n()).filter(|&v| self.roots[v] > 0).collect();
        let mut g = DirectedMultigraph::with_vertices(vertices);
        for (e, row) in self.counts.iter().enumerate() {
            let edge = &self.host.edges()[e];
            for (i, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, &w) in edge.iter().enumerate() {
                    if i != j {
                        g.add_arcs(edge[i], w, c as u64);
                    }
                }
            }
        }
        g
    }

    /// Number of ordered rooted-edge tuples with sorted roots that realize
    /// this multiset: `prod_v r(v)! / prod_e c[e][v]!`.
    pub fn tuple_multiplicity(&self) -> BigInt {
        let mut num = BigInt::from(1);
        for &r in &self.roots {
            num *= factorial(r as u64);
        }
        let mut den = BigInt::from(1);
        for &c in self.counts.iter().flatten() {
            den *= factorial(c as u64);
        }
        num / den
    }

    /// `N(c) * d (m-1)^n tau(F) / prod_v d+(v)` with `n = ambient_n` and
    /// `d+(v) = (m-1) r(v)`.
    pub fn contribution(&self, ambient_n: usize) -> Result<ExactRational> {
        let rooted: Vec<VertexId> = (0..self.host.n()).filter(|&v| self.roots[v] > 0).collect();
        if ambient_n < rooted.len() {
            return Err(Error::InvalidParameter(format!(
                "ambient order {ambient_n} is smaller than the rooting's {} vertices",
                rooted.len()
            )));
        }
        let g = self.build_digraph();
        let tau = g.arborescence_count(rooted[0])?;
        let m1 = (self.host.m() - 1) as u64;
        let numer = self.tuple_multiplicity() * BigInt::from(self.total()) * pow(m1, ambient_n as u64) * tau;
        let mut denom = BigInt::from(1);
        for v in rooted {
            denom *= BigInt::from(m1 * self.roots[v] as u64);
        }
        Ok(BigRational::new(numer, denom))
    }
}

fn support_connected(host: &UniformHypergraph, k: &[u32]) -> bool {
    let mut uf = UnionFind::new(host.n());
    let mut any = None;
    for (e, edge) in host.edges().iter().enumerate() {
        if k[e] == 0 {
            continue;
        }
        any.get_or_insert(edge[0]);
        for w in edge.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let Some(root) = any else { return false };
    let root = uf.find(root);
    host.edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| k[*e] > 0)
        .all(|(_, edge)| uf.find(edge[0]) == root)
}

/// Edge-multiplicity vectors with total `d` whose vertex degrees are all
/// divisible by `m`, whose support is connected, and whose implied root
/// counts `deg(v) / m` satisfy `query`.
pub fn multiplicity_vectors(h: &UniformHypergraph, d: usize, query: &LocalTraceQuery) -> Vec<Vec<u32>> {
    let m = h.m() as u32;
    let e_count = h.edge_count();
    let allowed: Vec<bool> = h
        .edges()
        .iter()
        .map(|e| !e.iter().any(|v| query.forbidden.contains(v)))
        .collect();
    let mut last = vec![None; h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        if allowed[i] {
            for &v in e {
                last[v] = Some(i);
            }
        }
    }
    if d == 0 || query.rooted().any(|v| last[v].is_none()) {
        return Vec::new();
    }
    let last_allowed = (0..e_count).rev().find(|&i| allowed[i]);
    let mut pinned = vec![None; h.n()];
    if let Some((u, t)) = query.pinned {
        pinned[u] = Some(m * t as u32);
    }
    let mut required = vec![false; h.n()];
    for v in query.rooted() {
        required[v] = true;
    }

    struct Ctx<'a> {
        h: &'a UniformHypergraph,
        m: u32,
        allowed: Vec<bool>,
        last: Vec<Option<usize>>,
        last_allowed: Option<usize>,
        pinned: Vec<Option<u32>>,
        required: Vec<bool>,
        out: Vec<Vec<u32>>,
    }

    fn rec(cx: &mut Ctx, i: usize, remaining: u32, k: &mut Vec<u32>, deg: &mut Vec<u32>) {
        if i == k.len() {
            if remaining == 0 && support_connected(cx.h, k) {
                cx.out.push(k.clone());
            }
            return;
        }
        if !cx.allowed[i] {
            rec(cx, i + 1, remaining, k, deg);
            return;
        }
        let edge = &cx.h.edges()[i];
        let forced = cx.last_allowed == Some(i);
        let lo = if forced { remaining } else { 0 };
        'choice: for val in lo..=remaining {
            for &v in edge {
                deg[v] += val;
            }
            k[i] = val;
            for &v in edge {
                let dv = deg[v];
                if cx.pinned[v].is_some_and(|p| dv > p) {
                    // larger values only overshoot further
                    for &w in edge {
                        deg[w] -= val;
                    }
                    k[i] = 0;
                    break 'choice;
                }
                if cx.last[v] == Some(i) {
                    let ok = dv.is_multiple_of(cx.m)
                        && cx.pinned[v].is_none_or(|p| dv == p)
                        && (!cx.required[v] || dv > 0);
                    if !ok {
                        for &w in edge {
                            deg[w] -= val;
                        }
                        k[i] = 0;
                        continue 'choice;
                    }
                }
            }
            rec(cx, i + 1, remaining - val, k, deg);
            for &v in edge {
                deg[v] -= val;
            }
            k[i] = 0;
        }
    }

    let mut cx = Ctx {
        h,
        m,
        allowed,
        last,
        last_allowed,
        pinned,
        required,
        out: Vec::new(),
    };
    rec(&mut cx, 0, d as u32, &mut vec![0; e_count], &mut vec![0; h.n()]);
    cx.out
}

/// Calls `visit` once for every root distribution compatible with the
/// multiplicity vector `k`: rows sum to `k_e`, columns to `deg(v) / m`.
pub fn for_each_distribution<'h>(h: &'h UniformHypergraph, k: &[u32], mut visit: impl FnMut(RootCountMatrix<'h>)) {
    let m = h.m();
    let support: Vec<usize> = (0..k.len()).filter(|&e| k[e] > 0).collect();
    let mut caps = vec![0u32; h.n()];
    for &e in &support {
        for &v in &h.edges()[e] {
            caps[v] += k[e];
        }
    }
    for c in caps.iter_mut() {
        *c /= m as u32;
    }
    let mut last = vec![usize::MAX; h.n()];
    for (si, &e) in support.iter().enumerate() {
        for &v in &h.edges()[e] {
            last[v] = si;
        }
    }
    let mut counts = vec![vec![0u32; m]; k.len()];

    struct Ctx<'a, 'h, F> {
        h: &'h UniformHypergraph,
        k: &'a [u32],
        support: &'a [usize],
        last: &'a [usize],
        visit: &'a mut F,
    }

    fn rec<'h, F: FnMut(RootCountMatrix<'h>)>(
        cx: &mut Ctx<'_, 'h, F>,
        si: usize,
        pos: usize,
        row_left: u32,
        caps: &mut [u32],
        counts: &mut Vec<Vec<u32>>,
    ) {
        if si == cx.support.len() {
            (cx.visit)(RootCountMatrix::assemble(cx.h, counts.clone()));
            return;
        }
        let e = cx.support[si];
        let edge = &cx.h.edges()[e];
        let m = edge.len();
        let v = edge[pos];
        let (lo, hi) = if cx.last[v] == si {
            (caps[v], caps[v])
        } else if pos == m - 1 {
            (row_left, row_left)
        } else {
            (0, caps[v].min(row_left))
        };
        if lo > hi || hi > row_left || hi > caps[v] {
            return;
        }
        if pos == m - 1 && lo != row_left {
            return;
        }
        let later: u32 = edge[pos + 1..].iter().map(|&w| caps[w]).sum();
        for val in lo..=hi {
            if row_left - val > later {
                continue;
            }
            caps[v] -= val;
            counts[e][pos] = val;
            if pos + 1 == m {
                let next_row = cx.support.get(si + 1).map_or(0, |&f| cx.k[f]);
                rec(cx, si + 1, 0, next_row, caps, counts);
            } else {
                rec(cx, si, pos + 1, row_left - val, caps, counts);
            }
            counts[e][pos] = 0;
            caps[v] += val;
        }
    }

    if support.is_empty() {
        return;
    }
    let first_row = k[support[0]];
    let mut cx = Ctx {
        h,
        k,
        support: &support,
        last: &last,
        visit: &mut visit,
    };
    rec(&mut cx, 0, 0, first_row, &mut caps, &mut counts);
}

/// Every Euler rooting with `d` instances satisfying `query`, each unordered
/// multiset exactly once.
pub fn enumerate_rootings<'h>(
    h: &'h UniformHypergraph,
    d: usize,
    query: Option<&LocalTraceQuery>,
) -> Result<Vec<RootCountMatrix<'h>>> {
    let empty = LocalTraceQuery::default();
    let q = query.unwrap_or(&empty);
    q.validate(h)?;
    q.feasible_at(d.max(1))?;
    let mut out = Vec::new();
    for k in multiplicity_vectors(h, d, q) {
        for_each_distribution(h, &k, |c| out.push(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{hyperpath, single_edge};

    #[test]
    fn single_edge_rootings() {
        let e = single_edge(3).unwrap();
        let r = enumerate_rootings(&e, 3, None).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].counts(), &[vec![1, 1, 1]]);
        assert!(enumerate_rootings(&e, 4, None).unwrap().is_empty());
        let r = enumerate_rootings(&e, 6, None).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].counts(), &[vec![2, 2, 2]]);
    }

    #[test]
    fn hyperpath_two_edges_d6() {
        let p = hyperpath(3, 2).unwrap();
        let r = enumerate_rootings(&p, 6, None).unwrap();
        let mut ks: Vec<Vec<u32>> = r.iter().map(|c| c.multiplicities().to_vec()).collect();
        ks.sort();
        assert_eq!(ks, vec![vec![0, 6], vec![3, 3], vec![6, 0]]);
        let mixed = r.iter().find(|c| c.multiplicities() == [3, 3]).unwrap();
        assert_eq!(mixed.counts(), &[vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(mixed.root_count(2), 2);
    }

    #[test]
    fn digraphs() {
        let e = single_edge(3).unwrap();
        let c = RootCountMatrix::new(&e, vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(c.build_digraph(), DirectedMultigraph::complete_bidirected(3, 1));
        let c = RootCountMatrix::new(&e, vec![vec![2, 2, 2]]).unwrap();
        assert_eq!(c.build_digraph(), DirectedMultigraph::complete_bidirected(3, 2));

        let p = hyperpath(3, 2).unwrap();
        let c = RootCountMatrix::new(&p, vec![vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let g = c.build_digraph();
        assert_eq!(g.vertices(), &[0, 1, 2, 3, 4]);
        for (a, b) in [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)] {
            assert_eq!(g.multiplicity(a, b), 1);
            assert_eq!(g.multiplicity(b, a), 1);
        }
        assert_eq!(g.multiplicity(0, 3), 0);
        assert_eq!(g.out_degree(2), 4);
        assert_eq!(g.arborescence_count(2).unwrap(), BigInt::from(9));
    }

    #[test]
    fn tuple_multiplicities() {
        let e = single_edge(3).unwrap();
        let c = RootCountMatrix::new(&e, vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(c.tuple_multiplicity(), BigInt::from(1));
        let c = RootCountMatrix::new(&e, vec![vec![2, 2, 2]]).unwrap();
        assert_eq!(c.tuple_multiplicity(), BigInt::from(1));
        let p = hyperpath(3, 2).unwrap();
        let c = RootCountMatrix::new(&p, vec![vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(c.tuple_multiplicity(), BigInt::from(2));
    }

    #[test]
    fn contributions() {
        let e = single_edge(3).unwrap();
        let c = RootCountMatrix::new(&e, vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(c.contribution(3).unwrap(), BigRational::from_integer(9.into()));
        let p = hyperpath(3, 2).unwrap();
        let c = RootCountMatrix::new(&p, vec![vec![1, 1, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(c.contribution(5).unwrap(), BigRational::from_integer(36.into()));
        let c = RootCountMatrix::new(&p, vec![vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(c.contribution(5).unwrap(), BigRational::from_integer(54.into()));
    }

    #[test]
    fn invalid_matrices() {
        let e = single_edge(3).unwrap();
        assert!(RootCountMatrix::new(&e, vec![vec![2, 1, 1]]).is_err());
        assert!(RootCountMatrix::new(&e, vec![vec![0, 0, 0]]).is_err());
        assert!(RootCountMatrix::new(&e, vec![vec![1, 1]]).is_err());
        let two = UniformHypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(RootCountMatrix::new(&two, vec![vec![1, 1, 1], vec![1, 1, 1]]).is_err());
    }

    #[test]
    fn query_pruning() {
        let p = hyperpath(3, 2).unwrap();
        let q = LocalTraceQuery::new().forbid(0);
        let r = enumerate_rootings(&p, 6, Some(&q)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicities(), &[0, 6]);
        let q = LocalTraceQuery::new().pin(2, 2);
        let r = enumerate_rootings(&p, 6, Some(&q)).unwrap();
        assert_eq!(r.len(), 3);
        let q = LocalTraceQuery::new().pin(0, 7);
        assert!(matches!(enumerate_rootings(&p, 6, Some(&q)), Err(Error::InfeasibleQuery(_))));
        let q = LocalTraceQuery::new().require(1).forbid(1);
        assert!(matches!(enumerate_rootings(&p, 6, Some(&q)), Err(Error::InvalidQuery(_))));
    }
}
