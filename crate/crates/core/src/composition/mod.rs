//! Cut-vertex calculus: localized trace profiles, the coalescence formula,
//! relocation differences and the shift audits built on them.

mod audit;

pub use audit::{
    audit_cored_shift, audit_edge_shift, audit_path_shift, path_shift_labels, AuditLaw, AuditRow,
    Branch, CoredShiftSpec, EdgeShiftSpec, InequalityAuditReport, PathShiftLabels, Verdict,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, VertexId};
use crate::rational::{binomial, from_int, pow, ExactRational};
use crate::trace::{empty_rooting_weight, trace_by_root_count};

/// `Tr_{d;t}(H; [u])` for one anchor and all `1 <= t <= d <= d_max`, in the
/// sub-hypergraph's own ambient dimension.
#[derive(Clone, Debug)]
pub struct LocalTraceProfile {
    host: UniformHypergraph,
    anchor: VertexId,
    d_max: usize,
    pinned: BTreeMap<(usize, usize), ExactRational>,
    forbidden: Vec<ExactRational>,
}

impl LocalTraceProfile {
    pub fn compute(
        host: &UniformHypergraph,
        anchor: VertexId,
        d_max: usize,
        budget: &Budget,
    ) -> Result<Self> {
        host.check_vertex(anchor)?;
        let rows: Vec<Vec<ExactRational>> = (0..=d_max)
            .into_par_iter()
            .map(|d| trace_by_root_count(host, d, anchor, budget))
            .collect::<Result<_>>()?;
        let mut pinned = BTreeMap::new();
        let mut forbidden = Vec::with_capacity(d_max + 1);
        for (d, row) in rows.into_iter().enumerate() {
            let mut it = row.into_iter();
            forbidden.push(it.next().unwrap_or_else(ExactRational::zero));
            for (t, v) in it.enumerate() {
                if !v.is_zero() {
                    pinned.insert((d, t + 1), v);
                }
            }
        }
        Ok(LocalTraceProfile { host: host.clone(), anchor, d_max, pinned, forbidden })
    }

    pub fn host(&self) -> &UniformHypergraph {
        &self.host
    }

    pub fn anchor(&self) -> VertexId {
        self.anchor
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// `Tr_{d;t}(H; [u])`; `(0, 0)` is the empty-rooting convention.
    pub fn get(&self, d: usize, t: usize) -> Result<ExactRational> {
        if d > self.d_max {
            return Err(Error::MissingProfileEntry { d, t });
        }
        if d == 0 && t == 0 {
            return Ok(empty_rooting_weight(&self.host));
        }
        Ok(self.pinned.get(&(d, t)).cloned().unwrap_or_else(ExactRational::zero))
    }

    /// `Tr_d(H; [u hat])`, rootings that avoid the anchor.
    pub fn forbidden_part(&self, d: usize) -> Result<ExactRational> {
        self.forbidden.get(d).cloned().ok_or(Error::MissingProfileEntry { d, t: 0 })
    }

    /// `Tr_d(H; [u])`, the sum over all positive root counts.
    pub fn required_part(&self, d: usize) -> Result<ExactRational> {
        if d > self.d_max {
            return Err(Error::MissingProfileEntry { d, t: 1 });
        }
        Ok(self.pinned.range((d, 1)..=(d, d)).map(|(_, v)| v).sum())
    }

    /// Nonzero entries in `(d, t)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &ExactRational)> {
        self.pinned.iter()
    }

    /// `(t/d) Tr_{d;t}` with `0/0 := 1`.
    fn weighted(&self, d: usize, t: usize) -> Result<ExactRational> {
        if d == 0 {
            return if t == 0 { self.get(0, 0) } else { Ok(ExactRational::zero()) };
        }
        if t == 0 {
            return Ok(ExactRational::zero());
        }
        let v = self.get(d, t)?;
        Ok(v * ExactRational::new(BigInt::from(t), BigInt::from(d)))
    }
}

/// Rescales a sub-hypergraph quantity into an ambient with `n_ambient` vertices.
pub fn embed_scale(
    value: &ExactRational,
    n_ambient: usize,
    n_sub: usize,
    m: usize,
) -> Result<ExactRational> {
    if n_ambient < n_sub || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "cannot embed {n_sub} vertices into {n_ambient} (m = {m})"
        )));
    }
    Ok(value * from_int(pow((m - 1) as u64, (n_ambient - n_sub) as u64)))
}

fn check_pair(p1: &LocalTraceProfile, p2: &LocalTraceProfile) -> Result<()> {
    if p1.host.m() != p2.host.m() {
        return Err(Error::MixedUniformity(p1.host.m(), p2.host.m()));
    }
    Ok(())
}

/// `Tr_d(H; [u])` of the coalescence `H_1(u) . H_2(u)` from the two profiles.
pub fn coalescence_local_trace(
    p1: &LocalTraceProfile,
    p2: &LocalTraceProfile,
    d: usize,
) -> Result<ExactRational> {
    check_pair(p1, p2)?;
    if d == 0 {
        return Err(Error::InvalidParameter("coalescence formula needs d >= 1".into()));
    }
    let mut total = ExactRational::zero();
    for d1 in 0..=d {
        let d2 = d - d1;
        for t1 in 0..=d1 {
            if (t1 == 0) != (d1 == 0) {
                continue;
            }
            let f1 = p1.weighted(d1, t1)?;
            if f1.is_zero() {
                continue;
            }
            for t2 in 0..=d2 {
                if (t2 == 0) != (d2 == 0) || t1 + t2 == 0 {
                    continue;
                }
                let f2 = p2.weighted(d2, t2)?;
                if f2.is_zero() {
                    continue;
                }
                let t = t1 + t2;
                let coeff = ExactRational::new(
                    BigInt::from(d) * binomial(t as u64, t1 as u64),
                    BigInt::from(t),
                );
                total += coeff * &f1 * f2;
            }
        }
    }
    Ok(total)
}

fn cross_terms(p1: &LocalTraceProfile, p2: &LocalTraceProfile, d: usize) -> Result<ExactRational> {
    let mut total = ExactRational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let inner: Vec<ExactRational> = (1..=d1).map(|t1| p1.get(d1, t1)).collect::<Result<_>>()?;
        if inner.iter().all(Zero::is_zero) {
            continue;
        }
        for t2 in 1..=d2 {
            let outer = p2.get(d2, t2)?;
            if outer.is_zero() {
                continue;
            }
            let mut s = ExactRational::zero();
            for (i, v) in inner.iter().enumerate() {
                let t1 = i + 1;
                if !v.is_zero() {
                    s += from_int(binomial((t1 + t2 - 1) as u64, t2 as u64)) * v;
                }
            }
            let coeff = ExactRational::new(
                BigInt::from(d) * BigInt::from(t2),
                BigInt::from(d1) * BigInt::from(d2),
            );
            total += coeff * outer * s;
        }
    }
    Ok(total)
}

/// `Tr_d(H_1(u) . H_2(w)) - Tr_d(H_1(v) . H_2(w))` from profiles of `H_1`
/// at `u` and `v` and of `H_2` at `w`.
pub fn relocation_difference(
    profile_u: &LocalTraceProfile,
    profile_v: &LocalTraceProfile,
    profile_w: &LocalTraceProfile,
    d: usize,
) -> Result<ExactRational> {
    if profile_u.host != profile_v.host {
        return Err(Error::InvalidParameter(
            "relocation needs both anchors in the same hypergraph".into(),
        ));
    }
    check_pair(profile_u, profile_w)?;
    if d == 0 {
        return Ok(ExactRational::zero());
    }
    Ok(cross_terms(profile_u, profile_w, d)? - cross_terms(profile_v, profile_w, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{coalesce, hyperpath, hyperstar, single_edge};
    use crate::rational::ratio;
    use crate::trace::{trace, trace_local, LocalTraceQuery};

    fn b() -> Budget {
        Budget::default()
    }

    fn edge3() -> UniformHypergraph {
        single_edge(3).unwrap()
    }

    #[test]
    fn profile_of_single_edge() {
        let p = LocalTraceProfile::compute(&edge3(), 0, 6, &b()).unwrap();
        assert_eq!(p.get(0, 0).unwrap(), ratio(4, 1));
        assert_eq!(p.get(3, 1).unwrap(), ratio(9, 1));
        assert_eq!(p.forbidden_part(3).unwrap(), ExactRational::zero());
        assert_eq!(p.required_part(3).unwrap() + p.forbidden_part(3).unwrap(), ratio(9, 1));
        assert_eq!(p.get(2, 5).unwrap(), ExactRational::zero());
        assert!(matches!(p.get(7, 1), Err(Error::MissingProfileEntry { d: 7, t: 1 })));
    }

    #[test]
    fn two_edges_glued_at_three() {
        let e = edge3();
        let p = LocalTraceProfile::compute(&e, 0, 9, &b()).unwrap();
        assert_eq!(coalescence_local_trace(&p, &p, 3).unwrap(), ratio(72, 1));
        assert_eq!(coalescence_local_trace(&p, &p, 1).unwrap(), ExactRational::zero());
        let glued = coalesce(&e, 0, &e, 0).unwrap();
        let q = LocalTraceQuery::new().require(0);
        for d in [3, 6, 9] {
            let direct = trace_local(&glued, d, &q, &b()).unwrap();
            assert_eq!(coalescence_local_trace(&p, &p, d).unwrap(), direct, "d = {d}");
        }
    }

    #[test]
    fn coalescence_and_decomposition_on_mixed_pairs() {
        let pairs = [
            (hyperpath(3, 2).unwrap(), 2, edge3(), 1),
            (hyperpath(3, 2).unwrap(), 0, hyperpath(3, 2).unwrap(), 3),
            (hyperstar(2, 2).unwrap(), 1, hyperpath(2, 2).unwrap(), 1),
        ];
        for (h1, u, h2, v) in pairs {
            let glued = coalesce(&h1, u, &h2, v).unwrap();
            let p1 = LocalTraceProfile::compute(&h1, u, 8, &b()).unwrap();
            let p2 = LocalTraceProfile::compute(&h2, v, 8, &b()).unwrap();
            let m = h1.m();
            let n = glued.n();
            for d in 1..=8 {
                let local = coalescence_local_trace(&p1, &p2, d).unwrap();
                assert_eq!(local, trace_local(&glued, d, &LocalTraceQuery::new().require(u), &b()).unwrap());
                let whole = local
                    + embed_scale(&p1.forbidden_part(d).unwrap(), n, h1.n(), m).unwrap()
                    + embed_scale(&p2.forbidden_part(d).unwrap(), n, h2.n(), m).unwrap();
                assert_eq!(whole, trace(&glued, d, &b()).unwrap(), "d = {d}");
            }
        }
    }

    #[test]
    fn relocation_vanishes_for_identical_anchor_and_at_codegree() {
        let e = edge3();
        let p = LocalTraceProfile::compute(&e, 0, 9, &b()).unwrap();
        for d in 0..=9 {
            assert_eq!(relocation_difference(&p, &p, &p, d).unwrap(), ExactRational::zero());
        }
        let h1 = hyperpath(3, 2).unwrap();
        let pu = LocalTraceProfile::compute(&h1, 2, 3, &b()).unwrap();
        let pv = LocalTraceProfile::compute(&h1, 1, 3, &b()).unwrap();
        let pw = LocalTraceProfile::compute(&e, 0, 3, &b()).unwrap();
        assert_eq!(relocation_difference(&pu, &pv, &pw, 3).unwrap(), ExactRational::zero());
    }

    #[test]
    fn relocation_star_side_minus_path_side() {
        let h1 = hyperpath(3, 2).unwrap();
        let e = edge3();
        let (u, v) = (2, 1);
        let pu = LocalTraceProfile::compute(&h1, u, 9, &b()).unwrap();
        let pv = LocalTraceProfile::compute(&h1, v, 9, &b()).unwrap();
        let pw = LocalTraceProfile::compute(&e, 0, 9, &b()).unwrap();
        let star = coalesce(&h1, u, &e, 0).unwrap();
        let path = coalesce(&h1, v, &e, 0).unwrap();
        for d in 1..=9 {
            let direct = trace(&star, d, &b()).unwrap() - trace(&path, d, &b()).unwrap();
            assert_eq!(relocation_difference(&pu, &pv, &pw, d).unwrap(), direct, "d = {d}");
        }
        let d6 = relocation_difference(&pu, &pv, &pw, 6).unwrap();
        assert!(d6 > ExactRational::zero());
    }

    #[test]
    fn relocation_is_antisymmetric() {
        let h1 = hyperpath(3, 2).unwrap();
        let e = edge3();
        let pu = LocalTraceProfile::compute(&h1, 2, 6, &b()).unwrap();
        let pv = LocalTraceProfile::compute(&h1, 0, 6, &b()).unwrap();
        let pw = LocalTraceProfile::compute(&e, 0, 6, &b()).unwrap();
        for d in 1..=6 {
            let a = relocation_difference(&pu, &pv, &pw, d).unwrap();
            let r = relocation_difference(&pv, &pu, &pw, d).unwrap();
            assert_eq!(a, -r);
        }
    }

    #[test]
    fn embed_scale_rejects_shrinking() {
        assert!(embed_scale(&ratio(1, 1), 2, 3, 3).is_err());
        assert_eq!(embed_scale(&ratio(3, 1), 5, 3, 3).unwrap(), ratio(12, 1));
    }

    #[test]
    fn mixed_uniformity_rejected() {
        let p3 = LocalTraceProfile::compute(&edge3(), 0, 3, &b()).unwrap();
        let p2 = LocalTraceProfile::compute(&single_edge(2).unwrap(), 0, 3, &b()).unwrap();
        assert!(matches!(coalescence_local_trace(&p3, &p2, 3), Err(Error::MixedUniformity(..))));
    }

    #[test]
    fn shallow_profile_reports_missing_entry() {
        let p = LocalTraceProfile::compute(&edge3(), 0, 3, &b()).unwrap();
        assert!(matches!(coalescence_local_trace(&p, &p, 6), Err(Error::MissingProfileEntry { .. })));
    }
}
