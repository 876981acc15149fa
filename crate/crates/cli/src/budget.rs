//! `HYPERTRACE_BUDGET` / `--budget` syntax: a bare integer sets the
//! composition limit, otherwise comma-separated `key=value` pairs.

use hypertrace_core::{Budget, Error, Result};

pub const ENV_VAR: &str = "HYPERTRACE_BUDGET";

pub fn apply(mut budget: Budget, spec: &str) -> Result<Budget> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(budget);
    }
    if let Ok(n) = spec.parse::<u128>() {
        budget.max_compositions = n;
        return Ok(budget);
    }
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("budget entry '{part}' is not key=value")))?;
        let bad = || Error::InvalidParameter(format!("budget value '{value}' for '{key}' is not a non-negative integer"));
        let value = value.trim();
        match key.trim() {
            "compositions" => budget.max_compositions = value.parse().map_err(|_| bad())?,
            "hypertree_edges" => budget.max_hypertree_edges = value.parse().map_err(|_| bad())?,
            "canonical_vertices" => budget.max_canonical_vertices = value.parse().map_err(|_| bad())?,
            "exhaustive_arcs" => budget.max_exhaustive_arcs = value.parse().map_err(|_| bad())?,
            "series_depth" => budget.max_series_depth = value.parse().map_err(|_| bad())?,
            other => return Err(Error::InvalidParameter(format!("unknown budget key '{other}'"))),
        }
    }
    Ok(budget)
}

/// Defaults, then the environment, then the command-line flag.
pub fn resolve(flag: Option<&str>) -> Result<Budget> {
    let mut budget = Budget::default();
    if let Ok(env) = std::env::var(ENV_VAR) {
        budget = apply(budget, &env)?;
    }
    if let Some(f) = flag {
        budget = apply(budget, f)?;
    }
    Ok(budget)
}
