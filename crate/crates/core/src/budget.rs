use crate::error::{Error, Result};
use crate::rational::binomial_u128;

/// Resource guards shared by the enumerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on the number of edge-multiplicity vectors a single
    /// trace evaluation may have to consider, `C(d + |E| - 1, |E| - 1)`.
    pub max_compositions: u128,
    /// Largest edge count accepted by hypertree enumeration.
    pub max_hypertree_edges: usize,
    /// Largest vertex count accepted by canonical labeling.
    pub max_canonical_vertices: usize,
    /// Largest arc count accepted by the exhaustive Euler-circuit counter.
    pub max_exhaustive_arcs: u64,
    /// Largest truncation depth the Estrada series may reach.
    pub max_series_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_compositions: 20_000_000,
            max_hypertree_edges: 6,
            max_canonical_vertices: 40,
            max_exhaustive_arcs: 16,
            max_series_depth: 600,
        }
    }
}

impl Budget {
    pub fn with_compositions(mut self, max: u128) -> Self {
        self.max_compositions = max;
        self
    }

    /// Refuses a trace of order `d` over `edges` edges when the worst-case
    /// number of multiplicity vectors is above the limit.
    pub fn check_trace(&self, edges: usize, d: usize) -> Result<()> {
        if edges == 0 || d == 0 {
            return Ok(());
        }
        let est = binomial_u128((d + edges - 1) as u64, (edges - 1) as u64);
        match est {
            Some(c) if c <= self.max_compositions => Ok(()),
            _ => Err(Error::LimitExceeded(format!(
                "trace of order {d} over {edges} edges needs up to {} multiplicity vectors (budget {})",
                est.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                self.max_compositions
            ))),
        }
    }
}
