//! Canonical labeling by individualization and refinement.
//!
//! The partition is refined until equitable: a vertex's signature is the
//! sorted multiset, over its incident edges, of the sorted cell indices of
//! the edge's other vertices. Cells split by signature and the pieces are
//! ordered by signature, so refinement commutes with relabeling. Leaves of
//! the search tree yield relabeled edge lists; the smallest one is the
//! certificate. Branches whose vertex differs from an explored sibling by an
//! automorphic transposition are skipped.

use std::collections::HashSet;

use super::{UniformHypergraph, VertexId};
use crate::budget::Budget;
use crate::error::{Error, Result};

type Partition = Vec<Vec<VertexId>>;

struct Search<'a> {
    h: &'a UniformHypergraph,
    incidence: Vec<Vec<usize>>,
    edge_set: HashSet<Vec<VertexId>>,
    best: Option<(Vec<u32>, Vec<VertexId>)>,
}

impl<'a> Search<'a> {
    fn new(h: &'a UniformHypergraph) -> Self {
        Self {
            h,
            incidence: h.incidence(),
            edge_set: h.edges().iter().cloned().collect(),
            best: None,
        }
    }

    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let mut cell_of = vec![0usize; self.h.n()];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let signature = |v: VertexId| {
                let mut sig: Vec<Vec<usize>> = self.incidence[v]
                    .iter()
                    .map(|&ei| {
                        let mut s: Vec<usize> = self.h.edges()[ei]
                            .iter()
                            .filter(|&&w| w != v)
                            .map(|&w| cell_of[w])
                            .collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                sig.sort();
                sig
            };
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut tagged: Vec<(Vec<Vec<usize>>, VertexId)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                tagged.sort();
                let mut start = 0;
                for i in 1..=tagged.len() {
                    if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                        next.push(tagged[start..i].iter().map(|t| t.1).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn swap_is_automorphism(&self, x: VertexId, y: VertexId) -> bool {
        let swap = |v: VertexId| {
            if v == x {
                y
            } else if v == y {
                x
            } else {
                v
            }
        };
        self.h.edges().iter().all(|e| {
            if !e.contains(&x) && !e.contains(&y) {
                return true;
            }
            let mut img: Vec<VertexId> = e.iter().map(|&v| swap(v)).collect();
            img.sort_unstable();
            self.edge_set.contains(&img)
        })
    }

    fn certificate(&self, cells: &Partition) -> (Vec<u32>, Vec<VertexId>) {
        let mut label = vec![0; self.h.n()];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let mut edges: Vec<Vec<u32>> = self
            .h
            .edges()
            .iter()
            .map(|e| {
                let mut r: Vec<u32> = e.iter().map(|&v| label[v] as u32).collect();
                r.sort_unstable();
                r
            })
            .collect();
        edges.sort();
        (edges.concat(), label)
    }

    fn search(&mut self, cells: Partition) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let cert = self.certificate(&cells);
            if self.best.as_ref().is_none_or(|b| cert.0 < b.0) {
                self.best = Some(cert);
            }
            return;
        };
        let cell = cells[target].clone();
        let mut explored: Vec<VertexId> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&x| self.swap_is_automorphism(x, v)) {
                continue;
            }
            explored.push(v);
            let mut child = cells[..target].to_vec();
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.search(child);
        }
    }
}

fn canonical_labeling(h: &UniformHypergraph, budget: &Budget) -> Result<(Vec<u32>, Vec<VertexId>)> {
    if h.n() > budget.max_canonical_vertices {
        return Err(Error::LimitExceeded(format!(
            "canonical labeling of {} vertices (limit {})",
            h.n(),
            budget.max_canonical_vertices
        )));
    }
    let mut s = Search::new(h);
    s.search(vec![(0..h.n()).collect()]);
    Ok(s.best.expect("search visits at least one leaf"))
}

/// Byte string that is equal for two hypergraphs iff they are isomorphic.
pub fn canonical_form(h: &UniformHypergraph) -> Result<Vec<u8>> {
    canonical_form_with(h, &Budget::default())
}

pub fn canonical_form_with(h: &UniformHypergraph, budget: &Budget) -> Result<Vec<u8>> {
    let (cert, _) = canonical_labeling(h, budget)?;
    let header = [h.m() as u32, h.n() as u32, h.edge_count() as u32];
    Ok(header
        .iter()
        .chain(cert.iter())
        .flat_map(|x| x.to_le_bytes())
        .collect())
}

/// The canonical representative of the isomorphism class of `h`.
pub fn canonical_hypergraph(h: &UniformHypergraph) -> Result<UniformHypergraph> {
    let (_, label) = canonical_labeling(h, &Budget::default())?;
    h.relabel(&label)
}

/// Short human-readable id of the isomorphism class, e.g. `m3n5:0.1.2|0.3.4`.
pub fn canonical_id(h: &UniformHypergraph) -> Result<String> {
    let c = canonical_hypergraph(h)?;
    let edges: Vec<String> = c
        .edges()
        .iter()
        .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."))
        .collect();
    Ok(format!("m{}n{}:{}", c.m(), c.n(), edges.join("|")))
}
