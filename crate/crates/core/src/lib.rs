//! Exact traces and Estrada indices of uniform hypergraphs.
//!
//! The `d`-th trace of the adjacency tensor is evaluated combinatorially as a
//! sum over Euler rootings of Veblen sub-multi-hypergraphs, each weighted by
//! an arborescence count. No eigenvalue is ever computed. On top of this the
//! crate provides localized traces, the cut-vertex composition calculus,
//! audits of the trace monotonicity laws, and a rigorous bracket for the
//! Estrada index with an extremal scan over hypertrees.

pub mod budget;
pub mod composition;
pub mod error;
pub mod estrada;
pub mod euler;
pub mod hypergraph;
pub mod rational;
pub mod trace;

pub use budget::Budget;
pub use composition::{
    audit_cored_shift, audit_edge_shift, audit_path_shift, coalescence_local_trace, embed_scale,
    relocation_difference, InequalityAuditReport, LocalTraceProfile, Verdict,
};
pub use error::{Error, Result};
pub use estrada::{estrada_index, extremal_scan, spectral_radius_bound, EstradaEstimate, ExtremalReport};
pub use euler::{DirectedMultigraph, EulerCountReport, RootCountMatrix};
pub use hypergraph::{UniformHypergraph, VertexId};
pub use rational::ExactRational;
pub use trace::{trace, trace_local, trace_table, LocalTraceQuery, TraceTable};
