//! Exact traces `Tr_d(H)` and localized traces.
//!
//! `Tr_d(H) = sum over Euler rootings F of N(F) * d (m-1)^n tau(F) / prod d+(v)`,
//! where the sum runs over unordered root-count matrices and `N(F)` counts
//! the ordered tuples each matrix stands for. Localized traces restrict the
//! sum by a [`LocalTraceQuery`].

mod query;

pub use query::LocalTraceQuery;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::euler::{for_each_distribution, multiplicity_vectors};
use crate::hypergraph::{UniformHypergraph, VertexId};
use crate::rational::{from_int, pow, ExactRational};

/// `Tr_0 = n (m-1)^(n-1)`, the number of eigenvalues.
pub fn trace_zero(h: &UniformHypergraph) -> ExactRational {
    from_int(BigInt::from(h.n()) * pow((h.m() - 1) as u64, (h.n() - 1) as u64))
}

/// `Tr_{0;0}(H) = (m-1)^(n-1)`, the weight given to the empty rooting.
pub fn empty_rooting_weight(h: &UniformHypergraph) -> ExactRational {
    from_int(pow((h.m() - 1) as u64, (h.n() - 1) as u64))
}

/// Sums contributions of every rooting accepted by `query`, split into one
/// bucket per entry of `buckets` (each bucket a further filter).
fn accumulate(
    h: &UniformHypergraph,
    d: usize,
    query: &LocalTraceQuery,
    buckets: &[&LocalTraceQuery],
) -> Result<Vec<ExactRational>> {
    let vectors = multiplicity_vectors(h, d, query);
    let zero = || vec![ExactRational::zero(); buckets.len()];
    vectors
        .par_iter()
        .map(|k| {
            let mut acc = zero();
            let mut err = None;
            for_each_distribution(h, k, |c| {
                if err.is_some() {
                    return;
                }
                match c.contribution(h.n()) {
                    Ok(w) => {
                        for (slot, b) in acc.iter_mut().zip(buckets) {
                            if b.accepts(c.root_counts()) {
                                *slot += &w;
                            }
                        }
                    }
                    Err(e) => err = Some(e),
                }
            });
            err.map_or(Ok(acc), Err)
        })
        .try_reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            Ok(a)
        })
}

fn allowed_edges(h: &UniformHypergraph, q: &LocalTraceQuery) -> usize {
    h.edges()
        .iter()
        .filter(|e| !e.iter().any(|v| q.forbidden.contains(v)))
        .count()
}

pub fn trace(h: &UniformHypergraph, d: usize, budget: &Budget) -> Result<ExactRational> {
    trace_local(h, d, &LocalTraceQuery::default(), budget)
}

/// Localized trace. At `d = 0` the empty query gives `Tr_0` and a
/// forbidden-only query gives `Tr_{0;0}`.
pub fn trace_local(
    h: &UniformHypergraph,
    d: usize,
    q: &LocalTraceQuery,
    budget: &Budget,
) -> Result<ExactRational> {
    q.validate(h)?;
    q.feasible_at(d)?;
    if d == 0 {
        return Ok(if q.is_empty() {
            trace_zero(h)
        } else {
            empty_rooting_weight(h)
        });
    }
    budget.check_trace(allowed_edges(h, q), d)?;
    let all = LocalTraceQuery::default();
    Ok(accumulate(h, d, q, &[&all])?.remove(0))
}

/// `Tr_{d;t}(H; [u])` for `t = 0..=d`, where the `t = 0` slot holds the
/// forbidden-root part `Tr_d(H; [u hat])`. One enumeration pass.
pub fn trace_by_root_count(
    h: &UniformHypergraph,
    d: usize,
    u: VertexId,
    budget: &Budget,
) -> Result<Vec<ExactRational>> {
    h.check_vertex(u)?;
    if d == 0 {
        return Ok(vec![empty_rooting_weight(h)]);
    }
    budget.check_trace(h.edge_count(), d)?;
    let queries: Vec<LocalTraceQuery> = std::iter::once(LocalTraceQuery::new().forbid(u))
        .chain((1..=d).map(|t| LocalTraceQuery::new().pin(u, t)))
        .collect();
    let buckets: Vec<&LocalTraceQuery> = queries.iter().collect();
    accumulate(h, d, &LocalTraceQuery::default(), &buckets)
}

/// Memoized traces keyed by `(d, query)`; the empty query holds `Tr_d`.
#[derive(Clone, Debug)]
pub struct TraceTable {
    host: UniformHypergraph,
    d_max: usize,
    entries: BTreeMap<(usize, LocalTraceQuery), ExactRational>,
}

impl TraceTable {
    pub fn host(&self) -> &UniformHypergraph {
        &self.host
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn get(&self, d: usize, q: &LocalTraceQuery) -> Option<&ExactRational> {
        self.entries.get(&(d, q.clone()))
    }

    pub fn trace(&self, d: usize) -> Option<&ExactRational> {
        self.get(d, &LocalTraceQuery::default())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, LocalTraceQuery), &ExactRational)> {
        self.entries.iter()
    }
}

/// Evaluates `Tr_d` and every query for `d = 0..=d_max`, one enumeration
/// pass per `d`. Queries that cannot be met at a given `d` are stored as 0.
pub fn trace_table(
    h: &UniformHypergraph,
    d_max: usize,
    queries: &[LocalTraceQuery],
    budget: &Budget,
) -> Result<TraceTable> {
    for q in queries {
        q.validate(h)?;
    }
    let all = LocalTraceQuery::default();
    let mut buckets: Vec<&LocalTraceQuery> = vec![&all];
    buckets.extend(queries.iter().filter(|q| !q.is_empty()));
    let mut entries = BTreeMap::new();
    for d in 0..=d_max {
        if d == 0 {
            entries.insert((0, all.clone()), trace_zero(h));
            for q in &buckets[1..] {
                let v = if q.is_forbidden_only() {
                    empty_rooting_weight(h)
                } else {
                    ExactRational::zero()
                };
                entries.insert((0, (*q).clone()), v);
            }
            continue;
        }
        budget.check_trace(h.edge_count(), d)?;
        let sums = accumulate(h, d, &all, &buckets)?;
        for (q, v) in buckets.iter().zip(sums) {
            entries.insert((d, (*q).clone()), v);
        }
    }
    Ok(TraceTable {
        host: h.clone(),
        d_max,
        entries,
    })
}

/// `trace(A^d)` of the adjacency matrix, by exact integer matrix products.
pub fn trace_m2_oracle(h: &UniformHypergraph, d: usize) -> Result<BigInt> {
    if h.m() != 2 {
        return Err(Error::NotAGraph(h.m()));
    }
    let n = h.n();
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for e in h.edges() {
        a[e[0]][e[1]] = BigInt::from(1);
        a[e[1]][e[0]] = BigInt::from(1);
    }
    let mut p: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    for _ in 0..d {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&k| !a[k][j].is_zero()).map(|k| &p[i][k]).sum())
                    .collect()
            })
            .collect();
    }
    Ok((0..n).map(|i| &p[i][i]).sum())
}
