use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypertrace_core::composition::{
    audit_cored_shift, audit_edge_shift, audit_path_shift, Branch, CoredShiftSpec, EdgeShiftSpec,
    InequalityAuditReport,
};
use hypertrace_core::estrada::{estrada_index, extremal_scan, precision_digits};
use hypertrace_core::hypergraph::{enumerate_hypertrees, hyperpath, hyperstar, power, single_edge};
use hypertrace_core::rational::{parse_decimal, to_decimal, to_fraction_string, Rounding};
use hypertrace_core::{trace, trace_local, Budget, Error, LocalTraceQuery, Result, UniformHypergraph, VertexId};
use serde::Serialize;

use crate::budget;

#[derive(Debug, Parser)]
#[command(name = "hypertrace", version, about = "Exact traces and Estrada indices of uniform hypergraphs")]
pub struct Cli {
    /// Budget override: an integer composition limit or key=value pairs
    /// (compositions, hypertree_edges, canonical_vertices, exhaustive_arcs, series_depth).
    #[arg(long, global = true)]
    pub budget: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
pub enum Law {
    PathShift,
    EdgeShift,
    CoredShift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Edge,
    Path,
    Star,
    Power,
    Trees,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact d-th trace, optionally localized.
    Trace(TraceArgs),
    /// Rigorous Estrada index bracket.
    Estrada(EstradaArgs),
    /// Estrada brackets over all hypertrees with a given edge count.
    Scan(ScanArgs),
    /// Compare traces of two shifted constructions degree by degree.
    Audit(AuditArgs),
    /// Write a generated hypergraph as JSON.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Vertex that must carry a root.
    #[arg(long)]
    pub required: Vec<VertexId>,
    /// Vertex that must carry no root.
    #[arg(long)]
    pub forbidden: Vec<VertexId>,
    /// Exact root count, as vertex:count.
    #[arg(long)]
    pub pinned: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EstradaArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Bracket width, as a decimal or a/b string.
    #[arg(long, default_value = "1e-6", allow_hyphen_values = true)]
    pub tol: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, visible_alias = "z")]
    pub edges: usize,
    #[arg(long, default_value = "1e-3", allow_hyphen_values = true)]
    pub tol: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub law: Law,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Number of single-edge branches on the core edge.
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long = "dmax", default_value_t = 9)]
    pub d_max: usize,
    /// Host hypergraph (path-shift host, cored-shift H_2); a single edge by default.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Attachment vertex in the host.
    #[arg(long, default_value_t = 0)]
    pub w: VertexId,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub m: usize,
    #[arg(long, visible_alias = "edges", default_value_t = 1)]
    pub z: usize,
    /// Graph to lift, for `--kind power`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<String> {
    let budget = budget::resolve(cli.budget.as_deref())?;
    match cli.command {
        Command::Trace(a) => cmd_trace(a, &budget),
        Command::Estrada(a) => cmd_estrada(a, &budget),
        Command::Scan(a) => cmd_scan(a, &budget),
        Command::Audit(a) => cmd_audit(a, &budget),
        Command::Gen(a) => cmd_gen(a, &budget),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn no_csv(cmd: &str) -> Error {
    Error::InvalidParameter(format!("{cmd} has no csv output"))
}

fn parse_pin(s: &str) -> Result<(VertexId, usize)> {
    let bad = || Error::InvalidParameter(format!("--pinned expects vertex:count, got '{s}'"));
    let (v, t) = s.split_once(':').ok_or_else(bad)?;
    Ok((v.trim().parse().map_err(|_| bad())?, t.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct TraceOutput {
    d: usize,
    value: String,
    decimal: String,
    #[serde(skip_serializing_if = "LocalTraceQuery::is_empty")]
    query: LocalTraceQuery,
}

fn cmd_trace(a: TraceArgs, budget: &Budget) -> Result<String> {
    let h = UniformHypergraph::load(&a.input)?;
    let mut q = LocalTraceQuery::new();
    for v in a.required {
        q = q.require(v);
    }
    for v in a.forbidden {
        q = q.forbid(v);
    }
    if let Some(p) = &a.pinned {
        let (v, t) = parse_pin(p)?;
        q = q.pin(v, t);
    }
    let value = if q.is_empty() { trace(&h, a.d, budget)? } else { trace_local(&h, a.d, &q, budget)? };
    let out = TraceOutput {
        d: a.d,
        value: to_fraction_string(&value),
        decimal: to_decimal(&value, a.digits, Rounding::Nearest),
        query: q,
    };
    match a.format {
        Format::Text => Ok(format!("{}\n{}\n", out.value, out.decimal)),
        Format::Json => Ok(json(&out)),
        Format::Csv => Err(no_csv("trace")),
    }
}

#[derive(Serialize)]
struct EstradaOutput<'a> {
    tol: String,
    lower_decimal: String,
    upper_decimal: String,
    #[serde(flatten)]
    estimate: &'a hypertrace_core::EstradaEstimate,
}

fn cmd_estrada(a: EstradaArgs, budget: &Budget) -> Result<String> {
    let h = UniformHypergraph::load(&a.input)?;
    let tol = parse_decimal(&a.tol)?;
    let est = estrada_index(&h, &tol, budget)?;
    let (lo, hi) = est.render(precision_digits(&tol));
    match a.format {
        Format::Text => Ok(format!(
            "[{lo}, {hi}]\nlower {}\nupper {}\ndepth {}\n",
            to_fraction_string(&est.lower),
            to_fraction_string(&est.upper),
            est.depth
        )),
        Format::Json => Ok(json(&EstradaOutput {
            tol: to_fraction_string(&tol),
            lower_decimal: lo,
            upper_decimal: hi,
            estimate: &est,
        })),
        Format::Csv => Err(no_csv("estrada")),
    }
}

fn cmd_scan(a: ScanArgs, budget: &Budget) -> Result<String> {
    let tol = parse_decimal(&a.tol)?;
    let rep = extremal_scan(a.m, a.edges, &tol, budget)?;
    match a.format {
        Format::Json => Ok(format!("{}\n", rep.to_json())),
        Format::Csv => Ok(rep.to_csv()),
        Format::Text => {
            let mut s = format!("m = {}, edges = {}, {} classes\n", rep.m, rep.z, rep.classes);
            s.push_str(&rep.to_csv());
            let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "undetermined".into());
            let _ = writeln!(s, "minimizer {}", show(&rep.minimizer));
            let _ = writeln!(s, "maximizer {}", show(&rep.maximizer));
            for p in &rep.indeterminate {
                let _ = writeln!(s, "indeterminate {} vs {} (try tol {})", p.a, p.b, to_fraction_string(&p.suggested_tol));
            }
            Ok(s)
        }
    }
}

fn branches(m: usize, p: usize) -> Result<Vec<Branch>> {
    Ok(vec![Branch::new(single_edge(m)?, 0); p])
}

fn host(input: &Option<PathBuf>, m: usize) -> Result<UniformHypergraph> {
    let h = match input {
        Some(p) => UniformHypergraph::load(p)?,
        None => single_edge(m)?,
    };
    if h.m() != m {
        return Err(Error::MixedUniformity(h.m(), m));
    }
    Ok(h)
}

fn audit_text(rep: &InequalityAuditReport) -> String {
    let mut s = String::new();
    for r in &rep.rows {
        let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
        let _ = writeln!(
            s,
            "d={} {} {} {}",
            r.d,
            verdict.as_str().unwrap_or_default(),
            to_fraction_string(&r.left),
            to_fraction_string(&r.right)
        );
    }
    let _ = writeln!(s, "claimed: {}", rep.claimed_rule);
    let _ = writeln!(s, "observed onset: {}", rep.observed_onset.map_or("none".into(), |d| d.to_string()));
    let _ = writeln!(s, "violations: {}", rep.violations.len());
    s
}

fn cmd_audit(a: AuditArgs, budget: &Budget) -> Result<String> {
    let rep = match a.law {
        Law::PathShift => audit_path_shift(&host(&a.input, a.m)?, a.w, a.r, a.s, a.d_max, budget)?,
        Law::EdgeShift => {
            let spec = EdgeShiftSpec { m: a.m, branches: branches(a.m, a.p)? };
            audit_edge_shift(&spec, a.r, a.s, a.d_max, budget)?
        }
        Law::CoredShift => {
            let spec = CoredShiftSpec { m: a.m, branches: branches(a.m, a.p)? };
            audit_cored_shift(&spec, &host(&a.input, a.m)?, a.w, a.d_max, budget)?
        }
    };
    match a.format {
        Format::Text => Ok(audit_text(&rep)),
        Format::Json => Ok(format!("{}\n", rep.to_json())),
        Format::Csv => {
            let mut s = String::from("d,left,right,verdict\n");
            for r in &rep.rows {
                let v = serde_json::to_value(r.verdict).expect("verdict serializes");
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.d,
                    to_fraction_string(&r.left),
                    to_fraction_string(&r.right),
                    v.as_str().unwrap_or_default()
                );
            }
            Ok(s)
        }
    }
}

fn cmd_gen(a: GenArgs, budget: &Budget) -> Result<String> {
    let text = match a.kind {
        Kind::Trees => {
            let trees = enumerate_hypertrees(a.m, a.z, budget)?;
            json(&trees)
        }
        kind => {
            let h = match kind {
                Kind::Edge => single_edge(a.m)?,
                Kind::Path => hyperpath(a.m, a.z)?,
                Kind::Star => hyperstar(a.m, a.z)?,
                Kind::Power => {
                    let path = a
                        .input
                        .as_ref()
                        .ok_or_else(|| Error::InvalidParameter("--kind power needs --input".into()))?;
                    power(&UniformHypergraph::load(path)?, a.m)?
                }
                Kind::Trees => unreachable!(),
            };
            format!("{}\n", h.to_json())
        }
    };
    match a.output {
        Some(path) => {
            std::fs::write(&path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
