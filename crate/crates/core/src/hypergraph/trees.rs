use std::collections::HashSet;

use super::{canon::canonical_form_with, single_edge, UniformHypergraph};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// One representative per isomorphism class of `m`-uniform hypertrees with
/// `z` edges.
///
/// Level `k + 1` is obtained from level `k` by hanging a pendent edge on
/// every vertex of every representative and keeping the first graph seen
/// for each canonical form. Output order is deterministic.
pub fn enumerate_hypertrees(m: usize, z: usize, budget: &Budget) -> Result<Vec<UniformHypergraph>> {
    if z < 1 {
        return Err(Error::InvalidParameter("edge count z must be at least 1".into()));
    }
    if z > budget.max_hypertree_edges {
        return Err(Error::LimitExceeded(format!(
            "hypertree enumeration with {z} edges (limit {})",
            budget.max_hypertree_edges
        )));
    }
    let mut level = vec![single_edge(m)?];
    for _ in 1..z {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for tree in &level {
            for v in 0..tree.n() {
                let mut edges = tree.edges().to_vec();
                edges.push(std::iter::once(v).chain(tree.n()..tree.n() + m - 1).collect());
                let grown = UniformHypergraph::new(m, tree.n() + m - 1, edges)?;
                if seen.insert(canonical_form_with(&grown, budget)?) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
