use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, VertexId};

/// Root-count constraints of a localized trace.
///
/// * `required`: each listed vertex roots at least one edge instance.
/// * `forbidden`: each listed vertex roots nothing. With Euler balance this
///   means the vertex lies in no selected edge at all.
/// * `pinned`: `(u, t)` asks for exactly `t > 0` instances rooted at `u`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalTraceQuery {
    pub required: BTreeSet<VertexId>,
    pub forbidden: BTreeSet<VertexId>,
    pub pinned: Option<(VertexId, usize)>,
}

impl LocalTraceQuery {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn require(mut self, v: VertexId) -> Self {
        self.required.insert(v);
        self
    }

    pub fn forbid(mut self, v: VertexId) -> Self {
        self.forbidden.insert(v);
        self
    }

    pub fn pin(mut self, v: VertexId, t: usize) -> Self {
        self.pinned = Some((v, t));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty() && self.forbidden.is_empty() && self.pinned.is_none()
    }

    /// No required and no pinned vertex.
    pub fn is_forbidden_only(&self) -> bool {
        self.required.is_empty() && self.pinned.is_none()
    }

    /// Vertices that must carry a root.
    pub fn rooted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.required.iter().copied().chain(self.pinned.map(|p| p.0))
    }

    /// Structural consistency against a host.
    pub fn validate(&self, h: &UniformHypergraph) -> Result<()> {
        for v in self.required.iter().chain(&self.forbidden).chain(self.pinned.as_ref().map(|p| &p.0)) {
            h.check_vertex(*v)?;
        }
        if let Some(v) = self.required.intersection(&self.forbidden).next() {
            return Err(Error::InvalidQuery(format!("vertex {v} is both required and forbidden")));
        }
        if let Some((u, t)) = self.pinned {
            if t == 0 {
                return Err(Error::InvalidQuery(format!("pinned count for vertex {u} must be positive")));
            }
            if self.forbidden.contains(&u) {
                return Err(Error::InvalidQuery(format!("pinned vertex {u} is forbidden")));
            }
        }
        Ok(())
    }

    /// Whether the query can be met by rootings of total size `d`.
    pub fn feasible_at(&self, d: usize) -> Result<()> {
        if let Some((u, t)) = self.pinned {
            if t > d {
                return Err(Error::InfeasibleQuery(format!(
                    "pinned count {t} at vertex {u} exceeds d = {d}"
                )));
            }
        }
        if d == 0 && !self.is_forbidden_only() {
            return Err(Error::InfeasibleQuery("the empty rooting roots no vertex".into()));
        }
        Ok(())
    }

    /// Whether a vector of root counts satisfies the query.
    pub fn accepts(&self, roots: &[u32]) -> bool {
        self.required.iter().all(|&v| roots[v] > 0)
            && self.forbidden.iter().all(|&v| roots[v] == 0)
            && self.pinned.is_none_or(|(u, t)| roots[u] as usize == t)
    }
}
