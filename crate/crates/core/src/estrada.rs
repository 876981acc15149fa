//! Estrada index `EE(H) = sum_d Tr_d(H) / d!` as a rigorous rational bracket,
//! and the extremal scan over hypertree classes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{canonical_form, canonical_id, enumerate_hypertrees, hyperpath, hyperstar, UniformHypergraph};
use crate::rational::{factorial, from_int, pow, serde_fraction, to_decimal, ExactRational, Rounding};
use crate::trace::{trace, trace_m2_oracle, trace_zero};

/// Rational upper bound on `e`.
fn e_upper() -> ExactRational {
    ExactRational::new(BigInt::from(87), BigInt::from(32))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub d: usize,
    #[serde(with = "serde_fraction")]
    pub value: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstradaEstimate {
    #[serde(with = "serde_fraction")]
    pub lower: ExactRational,
    #[serde(with = "serde_fraction")]
    pub upper: ExactRational,
    /// Last series index included in the partial sum.
    pub depth: usize,
    #[serde(with = "serde_fraction")]
    pub tail_bound: ExactRational,
    pub traces: Vec<TraceEntry>,
}

impl EstradaEstimate {
    pub fn width(&self) -> ExactRational {
        &self.upper - &self.lower
    }

    pub fn center(&self) -> ExactRational {
        (&self.lower + &self.upper) / ExactRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn disjoint_below(&self, other: &EstradaEstimate) -> bool {
        self.upper < other.lower
    }

    /// `[lower, upper]` rounded outward to `digits` places.
    pub fn render(&self, digits: usize) -> (String, String) {
        (to_decimal(&self.lower, digits, Rounding::Down), to_decimal(&self.upper, digits, Rounding::Up))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }
}

/// Decimal places that resolve `tol`, plus two guard digits.
pub fn precision_digits(tol: &ExactRational) -> usize {
    let mut k = 0;
    let mut scale = ExactRational::one();
    while tol.is_positive() && &scale > tol && k < 60 {
        scale /= ExactRational::from_integer(BigInt::from(10));
        k += 1;
    }
    k + 2
}

/// Maximum vertex degree, a bound on every eigenvalue modulus.
pub fn spectral_radius_bound(h: &UniformHypergraph) -> usize {
    h.max_degree()
}

fn check_tol(tol: &ExactRational) -> Result<()> {
    if tol.is_negative() {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if tol.is_zero() {
        return Err(Error::LimitExceeded("tolerance 0 cannot be reached by a finite series".into()));
    }
    Ok(())
}

/// `N rho^(D+1) / (D+1)! * e^rho`, with `e` replaced by a rational upper bound.
pub fn tail_bound(h: &UniformHypergraph, depth: usize) -> ExactRational {
    let rho = spectral_radius_bound(h) as u64;
    let n_eig = trace_zero(h);
    let e_rho = num_traits::pow(e_upper(), rho as usize);
    n_eig * from_int(pow(rho, depth as u64 + 1)) / from_int(factorial(depth as u64 + 1)) * e_rho
}

/// Series driver over an arbitrary trace source `source(d) = Tr_d`.
pub fn estrada_with<F>(
    h: &UniformHypergraph,
    tol: &ExactRational,
    budget: &Budget,
    source: F,
) -> Result<EstradaEstimate>
where
    F: Fn(usize) -> Result<ExactRational> + Sync,
{
    check_tol(tol)?;
    let m = h.m();
    let sparse = h.is_hypertree();
    let mut traces = vec![TraceEntry { d: 0, value: trace_zero(h) }];
    let mut sum = trace_zero(h);
    let mut depth = 0;
    let mut tail = tail_bound(h, depth);
    let mut lower = &sum - &tail;
    let mut upper = &sum + &tail;
    while &upper - &lower > *tol {
        if depth + m > budget.max_series_depth {
            return Err(Error::LimitExceeded(format!(
                "series depth {} needed for tolerance {tol} exceeds budget {}",
                depth + m,
                budget.max_series_depth
            )));
        }
        let ds: Vec<usize> = ((depth + 1)..=(depth + m)).filter(|d| !sparse || d % m == 0).collect();
        let fresh: Vec<TraceEntry> = ds
            .into_par_iter()
            .map(|d| Ok(TraceEntry { d, value: source(d)? }))
            .collect::<Result<_>>()?;
        for t in fresh {
            sum += &t.value / from_int(factorial(t.d as u64));
            traces.push(t);
        }
        depth += m;
        tail = tail_bound(h, depth);
        let lo = &sum - &tail;
        let hi = &sum + &tail;
        if lo > lower {
            lower = lo;
        }
        if hi < upper {
            upper = hi;
        }
    }
    Ok(EstradaEstimate { lower, upper, depth, tail_bound: tail, traces })
}

/// Bracket of width at most `tol` around `EE(H)`.
pub fn estrada_index(h: &UniformHypergraph, tol: &ExactRational, budget: &Budget) -> Result<EstradaEstimate> {
    estrada_with(h, tol, budget, |d| trace(h, d, budget))
}

/// Same series with traces from integer adjacency-matrix powers (`m = 2`).
pub fn estrada_m2_oracle(h: &UniformHypergraph, tol: &ExactRational, budget: &Budget) -> Result<EstradaEstimate> {
    if h.m() != 2 {
        return Err(Error::NotAGraph(h.m()));
    }
    estrada_with(h, tol, budget, |d| trace_m2_oracle(h, d).map(from_int))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalEntry {
    pub canonical_id: String,
    pub n: usize,
    pub degree_sequence: Vec<usize>,
    pub rank: usize,
    pub is_path: bool,
    pub is_star: bool,
    pub estimate: EstradaEstimate,
    #[serde(skip)]
    pub hypergraph: UniformHypergraph,
}

/// Two classes whose brackets overlap; `suggested_tol` would separate them
/// if their centers are accurate.
#[derive(Clone, Debug, Serialize)]
pub struct IndeterminatePair {
    pub a: String,
    pub b: String,
    #[serde(with = "serde_fraction")]
    pub suggested_tol: ExactRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub m: usize,
    pub z: usize,
    #[serde(with = "serde_fraction")]
    pub tol: ExactRational,
    pub classes: usize,
    pub entries: Vec<ExtremalEntry>,
    pub minimizer: Option<String>,
    pub maximizer: Option<String>,
    pub indeterminate: Vec<IndeterminatePair>,
}

impl ExtremalReport {
    fn find(&self, id: &Option<String>) -> Option<&ExtremalEntry> {
        id.as_ref().and_then(|id| self.entries.iter().find(|e| &e.canonical_id == id))
    }

    pub fn minimizer_entry(&self) -> Option<&ExtremalEntry> {
        self.find(&self.minimizer)
    }

    pub fn maximizer_entry(&self) -> Option<&ExtremalEntry> {
        self.find(&self.maximizer)
    }

    /// The hyperpath is the unique minimizer and the hyperstar the unique maximizer.
    pub fn confirms_path_star_extremes(&self) -> bool {
        self.minimizer_entry().is_some_and(|e| e.is_path) && self.maximizer_entry().is_some_and(|e| e.is_star)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let digits = precision_digits(&self.tol);
        let mut out = String::from("canonical_id,n,degree_sequence,ee_lower,ee_upper,rank\n");
        for e in &self.entries {
            let (lo, hi) = e.estimate.render(digits);
            let degs: Vec<String> = e.degree_sequence.iter().map(usize::to_string).collect();
            out.push_str(&format!("{},{},{},{lo},{hi},{}\n", e.canonical_id, e.n, degs.join(" "), e.rank));
        }
        out
    }
}

/// Estrada brackets for every hypertree class with `z` edges, ranked by bracket.
pub fn extremal_scan(m: usize, z: usize, tol: &ExactRational, budget: &Budget) -> Result<ExtremalReport> {
    check_tol(tol)?;
    let trees = enumerate_hypertrees(m, z, budget)?;
    let path = canonical_form(&hyperpath(m, z)?)?;
    let star = canonical_form(&hyperstar(m, z)?)?;
    let mut entries: Vec<ExtremalEntry> = trees
        .into_par_iter()
        .map(|h| {
            let estimate = estrada_index(&h, tol, budget)?;
            let form = canonical_form(&h)?;
            let mut degree_sequence = h.degrees();
            degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
            Ok(ExtremalEntry {
                canonical_id: canonical_id(&h)?,
                n: h.n(),
                degree_sequence,
                rank: 0,
                is_path: form == path,
                is_star: form == star,
                estimate,
                hypergraph: h,
            })
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| {
        a.estimate
            .lower
            .cmp(&b.estimate.lower)
            .then_with(|| a.estimate.upper.cmp(&b.estimate.upper))
            .then_with(|| a.canonical_id.cmp(&b.canonical_id))
    });
    for (i, e) in entries.iter_mut().enumerate() {
        e.rank = i + 1;
    }
    let mut indeterminate = Vec::new();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if !a.estimate.disjoint_below(&b.estimate) && !b.estimate.disjoint_below(&a.estimate) {
                let gap = (a.estimate.center() - b.estimate.center()).abs();
                indeterminate.push(IndeterminatePair {
                    a: a.canonical_id.clone(),
                    b: b.canonical_id.clone(),
                    suggested_tol: gap / ExactRational::from_integer(BigInt::from(4)),
                });
            }
        }
    }
    let separated = |idx: usize| {
        entries.iter().enumerate().all(|(j, other)| {
            j == idx
                || entries[idx].estimate.disjoint_below(&other.estimate)
                || other.estimate.disjoint_below(&entries[idx].estimate)
        })
    };
    let minimizer = match entries.len() {
        0 => None,
        1 => Some(entries[0].canonical_id.clone()),
        _ => separated(0).then(|| entries[0].canonical_id.clone()),
    };
    let last = entries.len().saturating_sub(1);
    let maximizer = match entries.len() {
        0 => None,
        1 => Some(entries[0].canonical_id.clone()),
        _ => separated(last).then(|| entries[last].canonical_id.clone()),
    };
    Ok(ExtremalReport { m, z, tol: tol.clone(), classes: entries.len(), entries, minimizer, maximizer, indeterminate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::single_edge;
    use crate::rational::{parse_decimal, ratio};

    fn b() -> Budget {
        Budget::default()
    }

    fn p2() -> UniformHypergraph {
        hyperpath(2, 2).unwrap()
    }

    fn approx(x: f64) -> ExactRational {
        ExactRational::from_float(x).unwrap()
    }

    #[test]
    fn radius_bounds() {
        assert_eq!(spectral_radius_bound(&hyperstar(3, 3).unwrap()), 3);
        assert_eq!(spectral_radius_bound(&hyperpath(3, 3).unwrap()), 2);
        assert_eq!(spectral_radius_bound(&single_edge(3).unwrap()), 1);
    }

    #[test]
    fn path_graph_bracket() {
        let tol = parse_decimal("1e-6").unwrap();
        let est = estrada_index(&p2(), &tol, &b()).unwrap();
        let s = 2f64.sqrt();
        let truth = s.exp() + (-s).exp() + 1.0;
        assert!(est.contains(&approx(truth)), "{:?}", est.render(8));
        assert!(est.width() <= tol);
        assert!(est.lower <= est.upper);
    }

    #[test]
    fn single_edge_bracket() {
        let tol = parse_decimal("1e-4").unwrap();
        let est = estrada_index(&single_edge(3).unwrap(), &tol, &b()).unwrap();
        let partial = ratio(12, 1) + ratio(9, 6) + ratio(9, 720);
        assert!(est.lower > partial - ratio(1, 10_000));
        assert!(est.upper < ratio(13513, 1000));
        assert!(est.traces.iter().all(|t| t.d % 3 == 0));
    }

    #[test]
    fn tolerance_guards() {
        assert!(matches!(estrada_index(&p2(), &ratio(0, 1), &b()), Err(Error::LimitExceeded(_))));
        assert!(matches!(estrada_index(&p2(), &ratio(-1, 10), &b()), Err(Error::InvalidParameter(_))));
        let tight = Budget { max_series_depth: 4, ..b() };
        assert!(matches!(estrada_index(&p2(), &ratio(1, 1_000_000), &tight), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn oracle_series_agrees() {
        let tol = ratio(1, 1_000_000);
        let a = estrada_index(&hyperstar(2, 3).unwrap(), &tol, &b()).unwrap();
        let o = estrada_m2_oracle(&hyperstar(2, 3).unwrap(), &tol, &b()).unwrap();
        assert_eq!(a, o);
    }

    #[test]
    fn brackets_nest_under_refinement() {
        let coarse = estrada_index(&p2(), &ratio(1, 100), &b()).unwrap();
        let fine = estrada_index(&p2(), &ratio(1, 100_000_000), &b()).unwrap();
        assert!(coarse.lower <= fine.lower && fine.upper <= coarse.upper);
    }

    #[test]
    fn scan_two_four() {
        let rep = extremal_scan(2, 4, &ratio(1, 1000), &b()).unwrap();
        assert_eq!(rep.classes, 3);
        assert!(rep.confirms_path_star_extremes());
        assert!(rep.indeterminate.is_empty());
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("canonical_id,n,degree_sequence,ee_lower,ee_upper,rank"));
    }

    #[test]
    fn scan_single_class() {
        let rep = extremal_scan(3, 2, &ratio(1, 1000), &b()).unwrap();
        assert_eq!(rep.classes, 1);
        assert_eq!(rep.minimizer, rep.maximizer);
        assert!(rep.confirms_path_star_extremes());
    }

    #[test]
    fn digits_follow_tolerance() {
        assert_eq!(precision_digits(&ratio(1, 1000)), 5);
        assert_eq!(precision_digits(&ratio(1, 1)), 2);
    }
}
