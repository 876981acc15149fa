//! Constructors with deterministic vertex numbering.
//!
//! * `hyperpath(m, z)`: edge `i` is `{i(m-1), ..., i(m-1) + m - 1}`. The spine
//!   vertices `0, m-1, 2(m-1), ..., z(m-1)` are the path vertices of `P_z`;
//!   spine `i` and `i + 1` are joined by edge `i`. Vertex `0` is a pendent
//!   end.
//! * `hyperstar(m, z)`: vertex `0` is the center and edge `i` is
//!   `{0, 1 + i(m-1), ..., (i+1)(m-1)}`.
//! * `power(g, m)`: the graph's vertices keep their ids and the `j`-th edge
//!   in sorted order receives the fresh vertices `n + j(m-2) .. n + (j+1)(m-2)`.
//! * `coalesce(h1, u, h2, v)`: `h1` keeps its ids, `v` becomes `u`, and every
//!   other vertex `x` of `h2` becomes `n1 + x` when `x < v` and `n1 + x - 1`
//!   when `x > v`.

use super::{UniformHypergraph, VertexId};
use crate::error::{Error, Result};

/// One branch of an attachment: glue `graph` at its vertex `at` onto the
/// host vertex `host_vertex`.
#[derive(Clone, Debug)]
pub struct AttachSpec {
    pub host_vertex: VertexId,
    pub graph: UniformHypergraph,
    pub at: VertexId,
}

impl AttachSpec {
    pub fn new(host_vertex: VertexId, graph: UniformHypergraph, at: VertexId) -> Self {
        Self {
            host_vertex,
            graph,
            at,
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("uniformity m = {m} must be at least 2")));
    }
    Ok(())
}

fn check_z(z: usize) -> Result<()> {
    if z < 1 {
        return Err(Error::InvalidParameter("edge count z must be at least 1".into()));
    }
    Ok(())
}

pub fn single_edge(m: usize) -> Result<UniformHypergraph> {
    check_m(m)?;
    UniformHypergraph::new(m, m, vec![(0..m).collect()])
}

pub fn hyperpath(m: usize, z: usize) -> Result<UniformHypergraph> {
    check_m(m)?;
    check_z(z)?;
    let step = m - 1;
    let edges = (0..z).map(|i| (i * step..=i * step + step).collect()).collect();
    UniformHypergraph::new(m, z * step + 1, edges)
}

pub fn hyperstar(m: usize, z: usize) -> Result<UniformHypergraph> {
    check_m(m)?;
    check_z(z)?;
    let step = m - 1;
    let edges = (0..z)
        .map(|i| std::iter::once(0).chain(1 + i * step..=(i + 1) * step).collect())
        .collect();
    UniformHypergraph::new(m, z * step + 1, edges)
}

/// The `m_target`-th power of a graph: every edge receives `m_target - 2`
/// fresh degree-one vertices.
pub fn power(graph: &UniformHypergraph, m_target: usize) -> Result<UniformHypergraph> {
    if graph.m() != 2 {
        return Err(Error::NotAGraph(graph.m()));
    }
    if m_target < 3 {
        return Err(Error::InvalidParameter(format!(
            "power target m = {m_target} must be at least 3"
        )));
    }
    let extra = m_target - 2;
    let n = graph.n();
    let edges = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(j, e)| e.iter().copied().chain(n + j * extra..n + (j + 1) * extra).collect())
        .collect();
    UniformHypergraph::new(m_target, n + extra * graph.edge_count(), edges)
}

fn require_operand(h: &UniformHypergraph) -> Result<()> {
    if h.n() < 2 || h.edge_count() == 0 {
        return Err(Error::TrivialOperand);
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Identifies `u` of `h1` with `v` of `h2`; the merged vertex keeps id `u`.
pub fn coalesce(
    h1: &UniformHypergraph,
    u: VertexId,
    h2: &UniformHypergraph,
    v: VertexId,
) -> Result<UniformHypergraph> {
    if h1.m() != h2.m() {
        return Err(Error::MixedUniformity(h1.m(), h2.m()));
    }
    require_operand(h1)?;
    require_operand(h2)?;
    h1.check_vertex(u)?;
    h2.check_vertex(v)?;
    let n1 = h1.n();
    let map = |x: VertexId| match x.cmp(&v) {
        std::cmp::Ordering::Equal => u,
        std::cmp::Ordering::Less => n1 + x,
        std::cmp::Ordering::Greater => n1 + x - 1,
    };
    let edges = h1
        .edges()
        .iter()
        .cloned()
        .chain(h2.edges().iter().map(|e| e.iter().map(|&x| map(x)).collect()))
        .collect();
    UniformHypergraph::new(h1.m(), n1 + h2.n() - 1, edges)
}

/// Iterated coalescence `H_0(w_1, ..., w_p) ⊙ (H_1(u_1), ..., H_p(u_p))`.
///
/// Host ids are stable across the iteration, so every `host_vertex` refers
/// to the original `h0` numbering even when several specs share a vertex.
pub fn attach(h0: &UniformHypergraph, specs: &[AttachSpec]) -> Result<UniformHypergraph> {
    for spec in specs {
        h0.check_vertex(spec.host_vertex)?;
        spec.graph.check_vertex(spec.at)?;
    }
    let mut acc = h0.clone();
    for spec in specs {
        acc = coalesce(&acc, spec.host_vertex, &spec.graph, spec.at)?;
    }
    Ok(acc)
}
