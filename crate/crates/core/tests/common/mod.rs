#![allow(dead_code)]

use std::collections::BTreeSet;

use hypertrace_core::hypergraph::{canonical_form, coalesce, single_edge};
use hypertrace_core::{ExactRational, UniformHypergraph};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// Eulerian circuits with labeled arcs, counted from a fixed first arc.
fn circuits(arcs: &mut Vec<Vec<u64>>) -> BigInt {
    let total: u64 = arcs.iter().flatten().sum();
    let Some(start) = (0..arcs.len()).find(|&i| arcs[i].iter().any(|&c| c > 0)) else {
        return BigInt::zero();
    };
    let first = arcs[start].iter().position(|&c| c > 0).unwrap();
    arcs[start][first] -= 1;
    let r = go(arcs, first, start, total - 1);
    arcs[start][first] += 1;
    r
}

fn go(arcs: &mut Vec<Vec<u64>>, at: usize, home: usize, left: u64) -> BigInt {
    if left == 0 {
        return if at == home { BigInt::one() } else { BigInt::zero() };
    }
    let mut t = BigInt::zero();
    for nx in 0..arcs.len() {
        let c = arcs[at][nx];
        if c > 0 {
            arcs[at][nx] -= 1;
            t += go(arcs, nx, home, left - 1) * c;
            arcs[at][nx] += 1;
        }
    }
    t
}

/// `Tr_d` by summing over every ordered sequence of `d` (edge, root) pairs.
pub fn brute_trace(h: &UniformHypergraph, d: usize) -> ExactRational {
    let (m, n) = (h.m(), h.n());
    if d == 0 {
        return ExactRational::from_integer(BigInt::from(n) * BigInt::from(m - 1).pow((n - 1) as u32));
    }
    let pairs: Vec<(usize, usize)> =
        h.edges().iter().enumerate().flat_map(|(i, e)| e.iter().map(move |&v| (i, v))).collect();
    let mut total = ExactRational::zero();
    let mut idx = vec![0usize; d];
    loop {
        let mut roots = vec![0u64; n];
        let mut arcs = vec![vec![0u64; n]; n];
        for &i in &idx {
            let (e, u) = pairs[i];
            roots[u] += 1;
            for &w in &h.edges()[e] {
                if w != u {
                    arcs[u][w] += 1;
                }
            }
        }
        if let Some(tau) = arborescences(&mut arcs, &roots, m) {
            let mut w = ExactRational::from_integer(
                roots.iter().map(|&r| fact(r)).product::<BigInt>() * BigInt::from(d) * BigInt::from(m - 1).pow(n as u32) * tau,
            );
            w /= ExactRational::from_integer(fact(d as u64));
            for &r in roots.iter().filter(|&&r| r > 0) {
                w /= ExactRational::from_integer(BigInt::from((m as u64 - 1) * r));
            }
            total += w;
        }
        let mut k = 0;
        loop {
            if k == d {
                return total;
            }
            idx[k] += 1;
            if idx[k] < pairs.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Arborescence count of a balanced, connected digraph via circuit counting.
fn arborescences(arcs: &mut Vec<Vec<u64>>, roots: &[u64], m: usize) -> Option<BigInt> {
    let n = roots.len();
    let out: Vec<u64> = (0..n).map(|v| arcs[v].iter().sum()).collect();
    let inn: Vec<u64> = (0..n).map(|v| (0..n).map(|u| arcs[u][v]).sum()).collect();
    if out != inn {
        return None;
    }
    let active: Vec<usize> = (0..n).filter(|&v| out[v] > 0).collect();
    let mut seen = BTreeSet::from([active[0]]);
    let mut stack = vec![active[0]];
    while let Some(v) = stack.pop() {
        #[allow(clippy::needless_range_loop)]
        for w in 0..n {
            if (arcs[v][w] > 0 || arcs[w][v] > 0) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != active.len() {
        return None;
    }
    debug_assert!(active.iter().all(|&v| out[v] == (m as u64 - 1) * roots[v]));
    let ec = circuits(arcs);
    let denom: BigInt = active.iter().map(|&v| fact(out[v] - 1)).product();
    Some(ec / denom)
}

/// Connected simple graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<UniformHypergraph> {
    let all: Vec<Vec<usize>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << all.len()) {
        let edges: Vec<Vec<usize>> =
            all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
        let h = UniformHypergraph::new(2, n, edges).unwrap();
        if h.is_connected() && seen.insert(canonical_form(&h).unwrap()) {
            out.push(h);
        }
    }
    out
}

/// Hypertree grown by hanging each new edge at the vertex picked by `picks`.
pub fn grow_tree(m: usize, picks: &[usize]) -> UniformHypergraph {
    let mut h = single_edge(m).unwrap();
    for &p in picks {
        let at = p % h.n();
        h = coalesce(&h, at, &single_edge(m).unwrap(), 0).unwrap();
    }
    h
}

pub fn graph(n: usize, edges: &[[usize; 2]]) -> UniformHypergraph {
    UniformHypergraph::new(2, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
}

pub fn approx(x: f64) -> ExactRational {
    ExactRational::from_float(x).unwrap()
}
