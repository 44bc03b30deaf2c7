//! Registry of closed-form identities and the machinery that checks them.
//!
//! Every record pairs a left side and a right side, each a function of the
//! parameter assignment evaluated through the oracle. Relations between
//! several infinite sums are checked as stated: each sum is evaluated
//! numerically, nothing is solved for.

mod domain;
mod golden;
mod helpers;
mod kernels;
mod params;
mod quadratic;
mod structural;

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::RealWithError;
use crate::oracle::EvalConfig;

pub use domain::{Constraint, Domain};
pub use helpers::Ctx;
pub use params::{int_grid, rational_grid, Params};

pub type Side = Arc<dyn Fn(&Ctx, &Params) -> Result<RealWithError> + Send + Sync>;

/// Tolerance classes, matched to how fast the underlying series converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Geometric series and finite-argument integrals.
    Geometric,
    /// Quadrature against exact rationals.
    Quadrature,
    /// `Σ f_n/((n+r)(n+k))` with harmonic-type `f_n`.
    Kernel,
    /// Sums carrying `(−1)^{n−1}`.
    Alternating,
    /// Relations among products of two harmonic factors.
    Quadratic,
    /// Relations among products of three or more harmonic factors.
    Cubic,
}

impl Family {
    pub fn default_tol(self) -> f64 {
        match self {
            Family::Geometric | Family::Alternating => 1e-8,
            Family::Quadrature => 1e-9,
            Family::Kernel | Family::Quadratic => 1e-6,
            Family::Cubic => 1e-5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Geometric => "geometric",
            Family::Quadrature => "quadrature",
            Family::Kernel => "kernel",
            Family::Alternating => "alternating",
            Family::Quadratic => "quadratic",
            Family::Cubic => "cubic",
        }
    }
}

/// One identity: `lhs(params) = rhs(params)` on a parameter domain.
#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    /// Human-readable statement of the identity.
    pub statement: &'static str,
    pub family: Family,
    pub default_tol: f64,
    pub domain: Domain,
    /// Parameter points checked by `verify_all`.
    pub grid: Vec<Params>,
    /// A persistent failure is reported as `unconfirmed` rather than `fail`.
    pub quoted: bool,
    /// Free-form remark shown by `list` (readings chosen, substitutions).
    pub note: Option<&'static str>,
    lhs: Side,
    rhs: Side,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("default_tol", &self.default_tol)
            .field("domain", &self.domain.to_string())
            .field("grid", &self.grid.len())
            .finish()
    }
}

impl IdentityRecord {
    pub(crate) fn new<L, Rh>(
        id: &'static str,
        statement: &'static str,
        family: Family,
        domain: Domain,
        grid: Vec<Params>,
        lhs: L,
        rhs: Rh,
    ) -> Self
    where
        L: Fn(&Ctx, &Params) -> Result<RealWithError> + Send + Sync + 'static,
        Rh: Fn(&Ctx, &Params) -> Result<RealWithError> + Send + Sync + 'static,
    {
        Self {
            id,
            statement,
            family,
            default_tol: family.default_tol(),
            domain,
            grid,
            quoted: false,
            note: None,
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
        }
    }

    pub(crate) fn quoted(mut self) -> Self {
        self.quoted = true;
        self
    }

    pub(crate) fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    pub(crate) fn tol(mut self, tol: f64) -> Self {
        self.default_tol = tol;
        self
    }

    /// Check `params` against the domain.
    pub fn check(&self, params: &Params) -> Result<()> {
        self.domain.check(params).map_err(|constraint| Error::Domain {
            id: self.id.to_string(),
            constraint,
        })
    }

    /// Left side without a domain check; callers comparing specialisations
    /// outside the stated domain use this directly.
    pub fn lhs(&self, params: &Params, config: &EvalConfig) -> Result<RealWithError> {
        (self.lhs)(&Ctx::new(*config), params)
    }

    pub fn rhs(&self, params: &Params, config: &EvalConfig) -> Result<RealWithError> {
        (self.rhs)(&Ctx::new(*config), params)
    }
}

static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();

/// All identities in presentation order.
pub fn registry() -> &'static [IdentityRecord] {
    REGISTRY.get_or_init(|| {
        let mut all = Vec::new();
        all.extend(golden::intro());
        all.extend(kernels::records());
        all.extend(structural::records());
        all.extend(quadratic::records());
        all.extend(golden::section3());
        all.extend(golden::examples());
        all
    })
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Shell-style pattern match on identity ids (`*`, `?`, `[...]`).
pub fn matches_filter(id: &str, pattern: &str) -> bool {
    match glob::Pattern::new(pattern) {
        Ok(p) => p.matches(id),
        Err(_) => id == pattern,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed at every truncation tried, for a result quoted from elsewhere.
    Unconfirmed,
    /// Evaluation raised an error.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unconfirmed => "unconfirmed",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub id: String,
    pub params: Params,
    pub lhs: Option<RealWithError>,
    pub rhs: Option<RealWithError>,
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub status: Status,
    /// Base truncation used.
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Settings shared by `verify` and `verify_all`.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub config: EvalConfig,
    /// Overrides every record's default tolerance.
    pub tol: Option<f64>,
}

/// `residual ≤ max(tol, 5·(lhs.err + rhs.err))`
pub fn passes(lhs: RealWithError, rhs: RealWithError, tol: f64) -> (f64, bool) {
    let residual = lhs.abs_diff(rhs);
    let bound = tol.max(5.0 * (lhs.err + rhs.err));
    (residual, residual.is_finite() && residual <= bound)
}

fn compare(
    record: &IdentityRecord,
    params: &Params,
    config: &EvalConfig,
    tol: f64,
) -> Result<(RealWithError, RealWithError, f64, bool)> {
    let lhs = record.lhs(params, config)?;
    let rhs = record.rhs(params, config)?;
    let (residual, pass) = passes(lhs, rhs, tol);
    Ok((lhs, rhs, residual, pass))
}

fn verify_record(
    record: &IdentityRecord,
    params: &Params,
    opts: &VerifyOptions,
) -> Result<VerificationResult> {
    record.check(params)?;
    let tol = opts.tol.unwrap_or(record.default_tol);
    let (lhs, rhs, residual, pass) = compare(record, params, &opts.config, tol)?;
    let mut status = if pass { Status::Pass } else { Status::Fail };
    let mut message = None;
    if !pass && record.quoted {
        // Quoted results are only called unconfirmed when no truncation agrees.
        let mut residuals = vec![residual];
        let mut confirmed = false;
        for div in [10, 100] {
            let cfg = EvalConfig::new(opts.config.n / div);
            if let Ok((_, _, r, ok)) = compare(record, params, &cfg, tol) {
                residuals.push(r);
                confirmed |= ok;
            }
        }
        if !confirmed {
            status = Status::Unconfirmed;
            message = Some(format!(
                "fails at every truncation tried; residuals {}",
                residuals
                    .iter()
                    .map(|r| format!("{r:.3e}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    Ok(VerificationResult {
        id: record.id.to_string(),
        params: params.clone(),
        lhs: Some(lhs),
        rhs: Some(rhs),
        residual: Some(residual),
        tol,
        pass,
        status,
        n: opts.config.n,
        message,
    })
}

/// Verify one identity at one parameter point.
pub fn verify(id: &str, params: &Params, opts: &VerifyOptions) -> Result<VerificationResult> {
    verify_record(lookup(id)?, params, opts)
}

/// Grid points for `record` with `overrides` applied; points are deduplicated
/// keeping first occurrence. Overrides naming parameters the record does not
/// have are ignored.
pub fn grid_with_overrides(record: &IdentityRecord, overrides: &Params) -> Vec<Params> {
    let mut out: Vec<Params> = Vec::new();
    for point in &record.grid {
        let mut p = point.clone();
        for name in overrides.names() {
            if record.domain.has(name) {
                p.set(name, overrides.rat(name));
            }
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Work list for one identity: its grid with `overrides` applied. Unknown
/// override names are errors, as is an override that leaves no valid point.
pub fn plan_one(id: &str, overrides: &Params) -> Result<Vec<(&'static IdentityRecord, Params)>> {
    let record = lookup(id)?;
    if let Some(bad) = overrides.names().find(|n| !record.domain.has(n)) {
        return Err(Error::Domain {
            id: record.id.to_string(),
            constraint: format!(
                "unknown parameter '{bad}' (expected {})",
                record.domain.names().join(", ")
            ),
        });
    }
    // Overrides can push some grid points out of the domain (a corner with
    // x = 1 once m = 1, say); those are dropped unless none survive.
    let mut first_err = None;
    let mut plan = Vec::new();
    for p in grid_with_overrides(record, overrides) {
        match record.check(&p) {
            Ok(()) => plan.push((record, p)),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) if plan.is_empty() => Err(e),
        _ => Ok(plan),
    }
}

/// Work list for every identity matching `filter`. Points that leave the
/// domain after applying `overrides` are dropped.
pub fn plan_all(filter: Option<&str>, overrides: &Params) -> Vec<(&'static IdentityRecord, Params)> {
    registry()
        .iter()
        .filter(|r| filter.map_or(true, |f| matches_filter(r.id, f)))
        .flat_map(|r| {
            grid_with_overrides(r, overrides)
                .into_iter()
                .filter(|p| r.check(p).is_ok())
                .map(move |p| (r, p))
        })
        .collect()
}

/// Run a work list on `jobs` threads; results keep the order of `plan`.
/// Evaluation errors become `Status::Error` results.
pub fn run_plan(
    plan: &[(&'static IdentityRecord, Params)],
    opts: &VerifyOptions,
    jobs: usize,
) -> Vec<VerificationResult> {
    let run = |(record, params): &(&'static IdentityRecord, Params)| {
        verify_record(record, params, opts).unwrap_or_else(|e| VerificationResult {
            id: record.id.to_string(),
            params: params.clone(),
            lhs: None,
            rhs: None,
            residual: None,
            tol: opts.tol.unwrap_or(record.default_tol),
            pass: false,
            status: Status::Error,
            n: opts.config.n,
            message: Some(e.to_string()),
        })
    };
    if jobs <= 1 {
        return plan.iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| plan.par_iter().map(run).collect()),
        Err(_) => plan.iter().map(run).collect(),
    }
}

/// Verify every identity matching `filter` over its default grid.
pub fn verify_all(opts: &VerifyOptions, filter: Option<&str>, jobs: usize) -> Vec<VerificationResult> {
    run_plan(&plan_all(filter, &Params::new()), opts, jobs)
}

/// Residuals of one identity at increasing truncations.
pub fn residual_scaling(id: &str, params: &Params, ns: &[u64]) -> Result<Vec<f64>> {
    if ns.len() < 2 {
        return Err(Error::InvalidArgument("residual_scaling needs at least two truncations".into()));
    }
    let record = lookup(id)?;
    record.check(params)?;
    ns.iter()
        .map(|&n| {
            let cfg = EvalConfig::new(n);
            Ok(record.lhs(params, &cfg)?.abs_diff(record.rhs(params, &cfg)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_enough() {
        let reg = registry();
        assert!(reg.len() >= 45, "{}", reg.len());
        for (i, r) in reg.iter().enumerate() {
            assert!(reg[..i].iter().all(|o| o.id != r.id), "duplicate {}", r.id);
            assert!(!r.grid.is_empty(), "{} has no grid", r.id);
            for p in &r.grid {
                r.check(p).unwrap_or_else(|e| panic!("{}: {e}", r.id));
            }
        }
        assert!(lookup("eq-9.99").is_err());
        assert_eq!(lookup("eq-2.12").unwrap().default_tol, 1e-8);
    }

    #[test]
    fn filter_globs() {
        assert!(matches_filter("eq-2.12", "eq-2.*"));
        assert!(!matches_filter("eq-3.1", "eq-2.*"));
        assert!(matches_filter("golden-3.s122", "golden-*"));
        assert!(plan_all(Some("eq-2.*"), &Params::new()).iter().all(|(r, _)| r.id.starts_with("eq-2.")));
    }

    #[test]
    fn domain_errors_name_constraint() {
        let p: Params = "r=3,k=2,m=1".parse().unwrap();
        let e = verify("eq-2.10", &p, &VerifyOptions::default()).unwrap_err();
        assert!(e.to_string().contains("requires r < k"), "{e}");
        let e = plan_one("eq-2.12", &"q=1".parse().unwrap()).unwrap_err();
        assert!(e.to_string().contains("unknown parameter"), "{e}");
    }
}
