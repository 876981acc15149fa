//! Shift audits: exact side-by-side traces of two constructions per `d`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{relocation_difference, LocalTraceProfile};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{attach, coalesce, hyperpath, single_edge, AttachSpec, UniformHypergraph, VertexId};
use crate::rational::{serde_fraction, ExactRational};
use crate::trace::trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditLaw {
    PathShift,
    EdgeShift,
    CoredShift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Strict,
    Violates,
}

impl Verdict {
    pub fn of(left: &ExactRational, right: &ExactRational) -> Self {
        match left.cmp(right) {
            Ordering::Equal => Verdict::Equal,
            Ordering::Greater => Verdict::Strict,
            Ordering::Less => Verdict::Violates,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub d: usize,
    #[serde(with = "serde_fraction")]
    pub left: ExactRational,
    #[serde(with = "serde_fraction")]
    pub right: ExactRational,
    pub verdict: Verdict,
    /// Whether the claimed threshold predicts strictness at this `d`.
    pub claimed_strict: bool,
    /// Relocation formula agreed with `left - right` (when cross-checked).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relocation_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityAuditReport {
    pub law: AuditLaw,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    pub d_max: usize,
    pub left_construction: UniformHypergraph,
    pub right_construction: UniformHypergraph,
    pub claimed_rule: String,
    pub claimed_onset: Option<usize>,
    pub observed_onset: Option<usize>,
    pub rows: Vec<AuditRow>,
    pub violations: Vec<usize>,
    /// Degrees where the claim predicts strictness but the traces are equal.
    pub claim_exceptions: Vec<usize>,
}

impl InequalityAuditReport {
    pub fn holds_weakly(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_strict(&self) -> bool {
        self.observed_onset.is_some()
    }

    /// Every stored verdict matches its stored values.
    pub fn verdicts_consistent(&self) -> bool {
        self.rows.iter().all(|r| Verdict::of(&r.left, &r.right) == r.verdict)
    }

    /// `None` when no row was cross-checked.
    pub fn relocation_agrees(&self) -> Option<bool> {
        let checked: Vec<bool> = self.rows.iter().filter_map(|r| r.relocation_agrees).collect();
        if checked.is_empty() {
            None
        } else {
            Some(checked.into_iter().all(|x| x))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit report serializes")
    }
}

/// A branch hung at a vertex of the core edge: `graph` glued by its vertex `at`.
#[derive(Clone, Debug)]
pub struct Branch {
    pub graph: UniformHypergraph,
    pub at: VertexId,
}

impl Branch {
    pub fn new(graph: UniformHypergraph, at: VertexId) -> Self {
        Branch { graph, at }
    }
}

/// Core edge `{0, .., m-1}` with `u = 0`, `v = 1` and branches on `2, 3, ..`.
#[derive(Clone, Debug)]
pub struct EdgeShiftSpec {
    pub m: usize,
    pub branches: Vec<Branch>,
}

/// Core edge `{0, .., m-1}` with cored vertex `u = 0` and branches on `1, 2, ..`.
#[derive(Clone, Debug)]
pub struct CoredShiftSpec {
    pub m: usize,
    pub branches: Vec<Branch>,
}

/// A hyperpath `P_{r+s}` and the two spine vertices whose coalescence with a
/// host gives `H_{r,s}` (at `u`) and `H_{r+1,s-1}` (at `v`).
#[derive(Clone, Debug)]
pub struct PathShiftLabels {
    pub path: UniformHypergraph,
    pub u: VertexId,
    pub v: VertexId,
}

/// Spine vertex `i` of `hyperpath(m, z)` is `i (m-1)`.
pub fn path_shift_labels(m: usize, r: usize, s: usize) -> Result<PathShiftLabels> {
    check_rs(r, s)?;
    let path = hyperpath(m, r + s)?;
    Ok(PathShiftLabels { path, u: s * (m - 1), v: (s - 1) * (m - 1) })
}

fn check_rs(r: usize, s: usize) -> Result<()> {
    if s == 0 || r < s {
        return Err(Error::InvalidParameter(format!("need r >= s >= 1, got r = {r}, s = {s}")));
    }
    Ok(())
}

fn with_paths(
    h: &UniformHypergraph,
    a: VertexId,
    la: usize,
    b: VertexId,
    lb: usize,
) -> Result<UniformHypergraph> {
    let m = h.m();
    let mut specs = Vec::new();
    for (at, len) in [(a, la), (b, lb)] {
        if len > 0 {
            specs.push(AttachSpec::new(at, hyperpath(m, len)?, 0));
        }
    }
    attach(h, &specs)
}

fn cored_core(m: usize, branches: &[Branch], first: VertexId) -> Result<UniformHypergraph> {
    let specs: Vec<AttachSpec> = branches
        .iter()
        .enumerate()
        .map(|(i, b)| AttachSpec::new(first + i, b.graph.clone(), b.at))
        .collect();
    attach(&single_edge(m)?, &specs)
}

struct Draft {
    law: AuditLaw,
    m: usize,
    r: Option<usize>,
    s: Option<usize>,
    p: Option<usize>,
    d_max: usize,
    claimed_rule: String,
    claimed: Box<dyn Fn(usize) -> bool + Sync>,
}

type Relocation = (LocalTraceProfile, LocalTraceProfile, LocalTraceProfile);

fn run(
    draft: Draft,
    left: UniformHypergraph,
    right: UniformHypergraph,
    relocation: Option<Relocation>,
    budget: &Budget,
) -> Result<InequalityAuditReport> {
    let rows: Vec<AuditRow> = (1..=draft.d_max)
        .into_par_iter()
        .map(|d| {
            let l = trace(&left, d, budget)?;
            let r = trace(&right, d, budget)?;
            let relocation_agrees = match &relocation {
                Some((pu, pv, pw)) => Some(relocation_difference(pu, pv, pw, d)? == &l - &r),
                None => None,
            };
            Ok(AuditRow {
                d,
                verdict: Verdict::of(&l, &r),
                left: l,
                right: r,
                claimed_strict: (draft.claimed)(d),
                relocation_agrees,
            })
        })
        .collect::<Result<_>>()?;
    let observed_onset = rows.iter().find(|r| r.verdict == Verdict::Strict).map(|r| r.d);
    let claimed_onset = (1..=draft.d_max).find(|&d| (draft.claimed)(d));
    let violations = rows.iter().filter(|r| r.verdict == Verdict::Violates).map(|r| r.d).collect();
    let claim_exceptions = rows
        .iter()
        .filter(|r| r.claimed_strict && r.verdict != Verdict::Strict)
        .map(|r| r.d)
        .collect();
    Ok(InequalityAuditReport {
        law: draft.law,
        m: draft.m,
        r: draft.r,
        s: draft.s,
        p: draft.p,
        d_max: draft.d_max,
        left_construction: left,
        right_construction: right,
        claimed_rule: draft.claimed_rule,
        claimed_onset,
        observed_onset,
        rows,
        violations,
        claim_exceptions,
    })
}

/// `H_{r,s} = H(w) . (P_r, P_s)` against `H_{r+1,s-1}`, with the relocation
/// formula cross-checked at every `d`.
pub fn audit_path_shift(
    h: &UniformHypergraph,
    w: VertexId,
    r: usize,
    s: usize,
    d_max: usize,
    budget: &Budget,
) -> Result<InequalityAuditReport> {
    check_rs(r, s)?;
    h.check_vertex(w)?;
    let m = h.m();
    let left = with_paths(h, w, r, w, s)?;
    let right = with_paths(h, w, r + 1, w, s - 1)?;
    let labels = path_shift_labels(m, r, s)?;
    let relocation = (
        LocalTraceProfile::compute(&labels.path, labels.u, d_max, budget)?,
        LocalTraceProfile::compute(&labels.path, labels.v, d_max, budget)?,
        LocalTraceProfile::compute(h, w, d_max, budget)?,
    );
    let threshold = s * m;
    let draft = Draft {
        law: AuditLaw::PathShift,
        m,
        r: Some(r),
        s: Some(s),
        p: None,
        d_max,
        claimed_rule: format!("strict for d >= s*m = {threshold}"),
        claimed: Box::new(move |d| d >= threshold && d % m == 0),
    };
    run(draft, left, right, Some(relocation), budget)
}

/// Paths `P_r` at `u` and `P_s` at `v` of a core edge carrying `p` branches.
pub fn audit_edge_shift(
    spec: &EdgeShiftSpec,
    r: usize,
    s: usize,
    d_max: usize,
    budget: &Budget,
) -> Result<InequalityAuditReport> {
    check_rs(r, s)?;
    let (m, p) = (spec.m, spec.branches.len());
    if m < 3 || p == 0 || p > m - 2 {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= m-2, got p = {p}, m = {m}")));
    }
    let core = cored_core(m, &spec.branches, 2)?;
    let left = with_paths(&core, 0, r, 1, s)?;
    let right = with_paths(&core, 0, r + 1, 1, s - 1)?;
    let threshold = (s + 1) * m;
    let draft = Draft {
        law: AuditLaw::EdgeShift,
        m,
        r: Some(r),
        s: Some(s),
        p: Some(p),
        d_max,
        claimed_rule: format!("strict for d >= (s+1)*m = {threshold}"),
        claimed: Box::new(move |d| d >= threshold && d % m == 0),
    };
    run(draft, left, right, None, budget)
}

/// `H_1(v_1) . H_2(w)` against `H_1(u) . H_2(w)` with `u` cored in the core
/// edge of `H_1 = e(v_1, .., v_p) . (branches)`.
pub fn audit_cored_shift(
    spec: &CoredShiftSpec,
    h2: &UniformHypergraph,
    w: VertexId,
    d_max: usize,
    budget: &Budget,
) -> Result<InequalityAuditReport> {
    let (m, p) = (spec.m, spec.branches.len());
    if p == 0 || p > m - 1 {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= m-1, got p = {p}, m = {m}")));
    }
    h2.check_vertex(w)?;
    let h1 = cored_core(m, &spec.branches, 1)?;
    let (v1, u) = (1, 0);
    let left = coalesce(&h1, v1, h2, w)?;
    let right = coalesce(&h1, u, h2, w)?;
    let relocation = (
        LocalTraceProfile::compute(&h1, v1, d_max, budget)?,
        LocalTraceProfile::compute(&h1, u, d_max, budget)?,
        LocalTraceProfile::compute(h2, w, d_max, budget)?,
    );
    let draft = Draft {
        law: AuditLaw::CoredShift,
        m,
        r: None,
        s: None,
        p: Some(p),
        d_max,
        claimed_rule: format!("strict when m = {m} divides d"),
        claimed: Box::new(move |d| d % m == 0),
    };
    run(draft, left, right, Some(relocation), budget)
}
