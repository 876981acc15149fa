//! Shared fixtures for the criterion benches.

use hypertrace_core::euler::enumerate_rootings;
use hypertrace_core::hypergraph::{hyperpath, hyperstar};
use hypertrace_core::{DirectedMultigraph, UniformHypergraph};

pub fn path(m: usize, z: usize) -> UniformHypergraph {
    hyperpath(m, z).expect("valid hyperpath")
}

pub fn star(m: usize, z: usize) -> UniformHypergraph {
    hyperstar(m, z).expect("valid hyperstar")
}

/// Rooting digraphs of `hyperpath(3, 2)` at order `d`, largest first.
pub fn rooting_digraphs(d: usize) -> Vec<DirectedMultigraph> {
    let h = path(3, 2);
    let mut gs: Vec<DirectedMultigraph> = enumerate_rootings(&h, d, None)
        .expect("feasible order")
        .iter()
        .map(|c| c.build_digraph())
        .collect();
    gs.sort_by_key(|g| std::cmp::Reverse(g.arc_count()));
    gs
}
