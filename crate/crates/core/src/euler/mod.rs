//! Euler rootings, their digraphs, and exact circuit counting.

mod det;
mod digraph;
mod rooting;

pub use det::bareiss_determinant;
pub use digraph::{DirectedMultigraph, EulerCountReport};
pub use rooting::{enumerate_rootings, for_each_distribution, multiplicity_vectors, RootCountMatrix};
